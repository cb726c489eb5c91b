#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nukc/cgk.hpp"
#include "nukc/errors.hpp"
#include "nukc/instance.hpp"

// Exhaustive ground truth. Everything here enumerates; nothing is clever.
namespace nukc::brute {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }

// One coverage mask per candidate facility; facilities with identical masks
// are merged (first id kept), since they induce identical coverage.
struct FacilityMasks {
  std::vector<Mask> masks;
  std::vector<PointId> ids;
};

inline FacilityMasks facility_masks(const MetricSpace& metric, const std::vector<PointId>& facilities,
                                    const std::vector<PointId>& clients, double radius) {
  FacilityMasks out;
  std::set<Mask> seen;
  for (PointId f : facilities) {
    Mask m = 0;
    for (std::size_t i = 0; i < clients.size(); ++i) {
      if (metric(f, clients[i]) <= radius) m |= Mask{1} << i;
    }
    if (seen.insert(m).second) {
      out.masks.push_back(m);
      out.ids.push_back(f);
    }
  }
  return out;
}

// Calls fn(mask_or, chosen indices) for every subset of size <= k (or exactly
// min(k, size) when `exact`).
template <class Fn>
void for_each_subset(const std::vector<Mask>& masks, int k, bool exact, Fn&& fn) {
  const int size = static_cast<int>(masks.size());
  const int kk = std::min(k, size);
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int start, Mask acc) -> void {
    if (!exact || static_cast<int>(chosen.size()) == kk) fn(acc, chosen);
    if (static_cast<int>(chosen.size()) == kk) return;
    for (int i = start; i < size; ++i) {
      chosen.push_back(i);
      self(self, i + 1, acc | masks[i]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0);
}

inline double binomial_count(int n, int k, bool exact) {
  auto choose = [](int a, int b) {
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  k = std::min(k, n);
  if (exact) return choose(n, k);
  double s = 0.0;
  for (int i = 0; i <= k; ++i) s += choose(n, i);
  return s;
}

inline constexpr double kDefaultGuard = 5e7;

inline void check_clients(int n) {
  if (n > 64) throw SizeGuardExceeded("exhaustive enumeration supports at most 64 points");
}

struct BruteResult {
  bool feasible = false;
  int best_covered = 0;
  std::optional<NUkCSolution> witness;
};

// Max coverage over all S1 (subset of restrictY, or X) with |S1| <= k1 and
// S2 subset of X with |S2| <= k2, at dilation rho.
inline BruteResult brute_force_nukc(const NUkCInstance& inst, const PointSet* restrictY = nullptr,
                                    double rho = 1.0, double guard = kDefaultGuard) {
  const int n = inst.size();
  check_clients(n);
  std::vector<PointId> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  const std::vector<PointId> fac1 = restrictY ? std::vector<PointId>(*restrictY) : all;
  const FacilityMasks m1 = facility_masks(inst.metric, fac1, all, rho * inst.r1);
  const FacilityMasks m2 = facility_masks(inst.metric, all, all, rho * inst.r2);
  const double combos = binomial_count(static_cast<int>(m1.masks.size()), inst.k1, true) *
                        binomial_count(static_cast<int>(m2.masks.size()), inst.k2, true);
  if (combos > guard) {
    throw SizeGuardExceeded("brute force would enumerate " + std::to_string(combos) + " solutions");
  }
  std::vector<std::pair<Mask, std::vector<int>>> second;
  for_each_subset(m2.masks, inst.k2, true,
                  [&](Mask acc, const std::vector<int>& idx) { second.emplace_back(acc, idx); });
  BruteResult out;
  out.best_covered = -1;
  std::vector<int> best1;
  std::vector<int> best2;
  for_each_subset(m1.masks, inst.k1, true, [&](Mask acc1, const std::vector<int>& idx1) {
    for (const auto& [acc2, idx2] : second) {
      const int c = popcount(acc1 | acc2);
      if (c > out.best_covered) {
        out.best_covered = c;
        best1 = idx1;
        best2 = idx2;
      }
    }
  });
  out.feasible = out.best_covered >= inst.m;
  NUkCSolution w;
  for (int i : best1) w.centers1.push_back(m1.ids[i]);
  for (int i : best2) w.centers2.push_back(m2.ids[i]);
  w.centers1 = normalized(std::move(w.centers1));
  w.centers2 = normalized(std::move(w.centers2));
  w.dilation = rho;
  out.witness = std::move(w);
  return out;
}

// The 0/1 coverage vectors (cov1, cov2) of every budget-feasible integral
// solution covering at least m clients. cov1(v) = 1 iff a radius-1 center
// covers v; cov2(v) = 1 iff v is covered by radius 2 and not by radius 1.
class IntegralHull {
 public:
  struct Vertex {
    Mask cov1;
    Mask cov2;
    auto operator<=>(const Vertex&) const = default;
  };

  // Clients and facility lists are point ids of `metric`; cut coordinates are
  // client positions.
  static IntegralHull build(const MetricSpace& metric, const std::vector<PointId>& clients,
                            const std::vector<PointId>& facilities1,
                            const std::vector<PointId>& facilities2, double R1, double R2, int k1,
                            int k2, int m, double guard = kDefaultGuard) {
    check_clients(static_cast<int>(clients.size()));
    const FacilityMasks m1 = facility_masks(metric, facilities1, clients, R1);
    const FacilityMasks m2 = facility_masks(metric, facilities2, clients, R2);
    const double combos = binomial_count(static_cast<int>(m1.masks.size()), k1, false) *
                          binomial_count(static_cast<int>(m2.masks.size()), k2, false);
    if (combos > guard) {
      throw SizeGuardExceeded("hull enumeration would visit " + std::to_string(combos) +
                              " solutions");
    }
    std::set<Mask> unions2;
    for_each_subset(m2.masks, k2, false, [&](Mask acc, const std::vector<int>&) { unions2.insert(acc); });
    std::set<Mask> unions1;
    for_each_subset(m1.masks, k1, false, [&](Mask acc, const std::vector<int>&) { unions1.insert(acc); });
    IntegralHull hull;
    hull.n_ = static_cast<int>(clients.size());
    std::set<Vertex> verts;
    for (Mask c1 : unions1) {
      for (Mask c2 : unions2) {
        const Mask only2 = c2 & ~c1;
        if (popcount(c1 | only2) >= m) verts.insert({c1, only2});
      }
    }
    hull.vertices_.assign(verts.begin(), verts.end());
    return hull;
  }

  static IntegralHull of(const NUkCInstance& inst, const PointSet* restrictY = nullptr) {
    std::vector<PointId> all(inst.size());
    for (int i = 0; i < inst.size(); ++i) all[i] = i;
    return build(inst.metric, all, restrictY ? std::vector<PointId>(*restrictY) : all, all, inst.r1,
                 inst.r2, inst.k1, inst.k2, inst.m);
  }

  bool empty() const { return vertices_.empty(); }
  int dimension_points() const { return n_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  static double lhs(const Cut& cut, const Vertex& v) {
    double s = 0.0;
    for (int i = 0; i < cut.size(); ++i) {
      if ((v.cov1 >> i) & 1U) s += cut.a1[i];
      if ((v.cov2 >> i) & 1U) s += cut.a2[i];
    }
    return s;
  }

  // Largest violation b - a.cov < 0 over vertices, or nullopt if the cut holds
  // everywhere (within tol).
  std::optional<Vertex> violating_vertex(const Cut& cut, double tol = 1e-9) const {
    if (cut.size() != n_) throw InvalidInstance("cut dimension does not match the hull");
    for (const Vertex& v : vertices_) {
      if (lhs(cut, v) > cut.b + tol) return v;
    }
    return std::nullopt;
  }

  bool validates(const Cut& cut, double tol = 1e-9) const { return !violating_vertex(cut, tol); }

 private:
  int n_ = 0;
  std::vector<Vertex> vertices_;
};

// A cut is valid for the integer hull iff it holds at every integral
// coverage vector of a feasible solution.
inline bool validate_cut_on_hull(const NUkCInstance& inst, const PointSet* restrictY, const Cut& cut) {
  return IntegralHull::of(inst, restrictY).validates(cut);
}

// Exhaustive 2-FF optimum over all (T1, T2) with |Ti| <= ki.
inline int brute_2ff(const TwoFFInstance& tree) {
  const int R = tree.num_roots();
  const int L = tree.num_leaves();
  if (R > 12 || L > 16) throw SizeGuardExceeded("brute_2ff supports |L1| <= 12, |L2| <= 16");
  std::vector<Mask> star(R, 0);
  for (int r = 0; r < R; ++r) {
    for (int leaf : tree.leaf_set[r]) star[r] |= Mask{1} << leaf;
  }
  int best = 0;
  for (std::uint32_t t1 = 0; t1 < (1U << R); ++t1) {
    if (std::popcount(t1) > tree.k1) continue;
    Mask base = 0;
    for (int r = 0; r < R; ++r) {
      if ((t1 >> r) & 1U) base |= star[r];
    }
    for (std::uint32_t t2 = 0; t2 < (1U << L); ++t2) {
      if (std::popcount(t2) > tree.k2) continue;
      const Mask cov = base | t2;
      int value = 0;
      for (int j = 0; j < L; ++j) {
        if ((cov >> j) & 1U) value += tree.weight[j];
      }
      best = std::max(best, value);
    }
  }
  return best;
}

}  // namespace nukc::brute
