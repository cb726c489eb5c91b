#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "nukc/errors.hpp"
#include "nukc/metric.hpp"

namespace nukc {

// Robust 2-NUkC: cover at least m points with k1 balls of radius r1 and k2
// balls of radius r2 (r1 > r2 >= 0).
struct NUkCInstance {
  MetricSpace metric;
  double r1 = 1.0;
  double r2 = 0.0;
  int k1 = 0;
  int k2 = 0;
  int m = 0;

  int size() const { return metric.size(); }

  void validate() const {
    if (!(r2 >= 0.0) || !(r1 > r2) || !std::isfinite(r1)) {
      throw InvalidInstance("radii must satisfy r1 > r2 >= 0");
    }
    if (k1 < 0 || k2 < 0) throw InvalidInstance("budgets must be nonnegative");
    if (m < 0 || m > size()) throw InvalidInstance("coverage target m must lie in [0, n]");
  }

  static NUkCInstance make(MetricSpace metric, double r1, double r2, int k1, int k2, int m) {
    NUkCInstance inst{std::move(metric), r1, r2, k1, k2, m};
    inst.validate();
    return inst;
  }

  // Same instance with both radii multiplied by rho.
  NUkCInstance scaled(double rho) const {
    NUkCInstance out = *this;
    out.r1 = r1 * rho;
    out.r2 = r2 * rho;
    return out;
  }
};

// Robust 2-NUkC where radius-r1 centers may only be opened on Y, and the
// points of Y are pairwise more than 4*r1 apart. `parent_ids[i]` maps point i
// of `base` to a point of an enclosing instance (empty means identity).
struct WellSepNUkCInstance {
  NUkCInstance base;
  PointSet Y;
  std::vector<PointId> parent_ids;

  void validate() const {
    base.validate();
    for (std::size_t i = 0; i < Y.size(); ++i) {
      base.metric.check_index(Y[i]);
      if (i > 0 && Y[i] <= Y[i - 1]) throw InvalidInstance("Y must be sorted and duplicate free");
      for (std::size_t j = 0; j < i; ++j) {
        if (!(base.metric(Y[i], Y[j]) > 4.0 * base.r1)) {
          throw InvalidInstance("Y points " + std::to_string(Y[j]) + " and " +
                                std::to_string(Y[i]) + " are not more than 4*r1 apart");
        }
      }
    }
    if (!parent_ids.empty() && static_cast<int>(parent_ids.size()) != base.size()) {
      throw InvalidInstance("parent_ids must have one entry per point");
    }
  }

  PointId to_parent(PointId u) const { return parent_ids.empty() ? u : parent_ids[u]; }
};

struct NUkCSolution {
  PointSet centers1;
  PointSet centers2;
  double dilation = 1.0;
};

// The 2n-dimensional point searched by the ellipsoid: per-point radius-1 and
// radius-2 coverage.
struct CoverageVector {
  std::vector<double> cov1;
  std::vector<double> cov2;

  static CoverageVector zeros(int n) {
    return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  }

  int size() const { return static_cast<int>(cov1.size()); }
  double cov(PointId v) const { return cov1[v] + cov2[v]; }

  double total() const {
    double s = 0.0;
    for (int v = 0; v < size(); ++v) s += cov(v);
    return s;
  }
};

// Linear inequality a1 . cov1 + a2 . cov2 <= b.
struct Cut {
  std::vector<double> a1;
  std::vector<double> a2;
  double b = 0.0;

  static Cut zero(int n) { return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0}; }

  int size() const { return static_cast<int>(a1.size()); }

  bool operator==(const Cut&) const = default;
};

// b - a . cov. Negative means the cut is violated.
inline double eval_cut(const Cut& cut, const CoverageVector& cov) {
  if (cut.a1.size() != cov.cov1.size() || cut.a2.size() != cov.cov2.size() ||
      cut.a1.size() != cut.a2.size()) {
    throw InvalidInstance("cut and coverage vector dimensions differ");
  }
  double lhs = 0.0;
  for (std::size_t v = 0; v < cut.a1.size(); ++v) {
    lhs += cut.a1[v] * cov.cov1[v] + cut.a2[v] * cov.cov2[v];
  }
  return cut.b - lhs;
}

inline void check_solution_indices(const NUkCInstance& inst, const NUkCSolution& sol) {
  for (PointId c : sol.centers1) inst.metric.check_index(c);
  for (PointId c : sol.centers2) inst.metric.check_index(c);
}

// Union of B(c, rho*r1) over centers1 and B(c, rho*r2) over centers2.
inline PointSet covered_points(const NUkCInstance& inst, const NUkCSolution& sol, double rho) {
  check_solution_indices(inst, sol);
  const double R1 = rho * inst.r1;
  const double R2 = rho * inst.r2;
  PointSet out;
  for (PointId v = 0; v < inst.size(); ++v) {
    bool hit = false;
    for (PointId c : sol.centers1) {
      if (inst.metric(c, v) <= R1) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      for (PointId c : sol.centers2) {
        if (inst.metric(c, v) <= R2) {
          hit = true;
          break;
        }
      }
    }
    if (hit) out.push_back(v);
  }
  return out;
}

struct Verification {
  bool ok = false;
  int covered = 0;
};

// Universal post-check: budgets hold and at least m points are covered at
// dilation rho.
inline Verification verify_solution(const NUkCInstance& inst, const NUkCSolution& sol, double rho) {
  bool indices_ok = true;
  for (PointId c : sol.centers1) indices_ok = indices_ok && inst.metric.valid_index(c);
  for (PointId c : sol.centers2) indices_ok = indices_ok && inst.metric.valid_index(c);
  if (!indices_ok) return {false, 0};
  const int covered = static_cast<int>(covered_points(inst, sol, rho).size());
  const bool budgets = static_cast<int>(sol.centers1.size()) <= inst.k1 &&
                       static_cast<int>(sol.centers2.size()) <= inst.k2;
  return {budgets && covered >= inst.m, covered};
}

}  // namespace nukc
