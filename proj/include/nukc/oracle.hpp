#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "nukc/ellipsoid.hpp"
#include "nukc/instance.hpp"

namespace nukc {

enum class CutKind {
  kNonnegative1,     // cov1(v) >= 0
  kNonnegative2,     // cov2(v) >= 0
  kUnitCoverage,     // cov1(v) + cov2(v) <= 1
  kYSupport,         // cov1(v) <= 0 when d(v, Y) > r1
  kMass,             // sum cov >= m
  kTreeWeight,       // sum_{v in L2} w(v) cov(v) <= m - 1 (tree not valuable)
  kBudget1,          // cov1(L1) <= k1
  kBudget2,          // cov2(L2) <= k2
  kSeparatedBudget,  // cov1(L1) <= k1 - 2 (every well-separated candidate infeasible)
};

inline std::string_view to_string(CutKind kind) {
  switch (kind) {
    case CutKind::kNonnegative1: return "nonnegative1";
    case CutKind::kNonnegative2: return "nonnegative2";
    case CutKind::kUnitCoverage: return "unit_coverage";
    case CutKind::kYSupport: return "y_support";
    case CutKind::kMass: return "mass";
    case CutKind::kTreeWeight: return "tree_weight";
    case CutKind::kBudget1: return "budget1";
    case CutKind::kBudget2: return "budget2";
    case CutKind::kSeparatedBudget: return "separated_budget";
  }
  return "unknown";
}

struct KindedCut {
  CutKind kind;
  Cut cut;
};

template <class Payload>
using OracleVerdict = std::variant<Rounded<Payload>, KindedCut>;

enum class Layer { kOuter, kInner };

// Outcome of one well-separated candidate inside an outer Case II step.
struct CandidateVerdict {
  std::optional<PointId> q;
  bool feasible = false;
  long iterations = 0;
  bool cached = false;
};

struct CutEvent {
  Layer layer = Layer::kOuter;
  long iteration = 0;
  CutKind kind = CutKind::kMass;
  const Cut* cut = nullptr;
  // Inner cuts: the well-separated instance the cut belongs to.
  const WellSepNUkCInstance* inner_instance = nullptr;
  std::optional<PointId> candidate_q;
  // Outer separated-budget cuts: per-candidate verdicts that justified it.
  const std::vector<CandidateVerdict>* candidates = nullptr;
};

struct RoundEvent {
  Layer layer = Layer::kOuter;
  long iteration = 0;
  std::string_view route;
  double dilation = 0.0;
};

// Hooks for certificate logging and cut auditing. Default no-ops.
class SolveObserver {
 public:
  virtual ~SolveObserver() = default;
  virtual void on_cut(const CutEvent&) {}
  virtual void on_round(const RoundEvent&) {}
};

struct SolverOptions {
  std::optional<long> max_iters;   // per ellipsoid run; default from dimension
  double eps = 1e-9;               // minimum violation of any returned cut
  // Slack on the box, support, mass and budget checks: queries within it are
  // passed on to rounding. Unset means 1 / (4 (n + 1)) for n points, small
  // enough that rounding still reaches m (coverage counts are integers) and
  // large enough that the region the ellipsoid must hit is full-dimensional.
  std::optional<double> slack;
  // Ellipsoid thinness stop; unset means slack / (4 n). A feasible instance
  // leaves a ball of about that radius around each integral solution that
  // the oracle rounds.
  std::optional<double> min_width;
  double case_tolerance = 1e-7;    // Case I iff cov1(L1) <= k1 - 2 + case_tolerance
  SolveObserver* observer = nullptr;
  bool cache_candidates = true;
};

inline double check_slack(const SolverOptions& o, int n) {
  return o.slack.value_or(0.25 / (n + 1));
}

inline double check_min_width(const SolverOptions& o, int n) {
  return o.min_width.value_or(check_slack(o, n) / (4.0 * n));
}

inline CoverageVector unflatten(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size() / 2);
  CoverageVector cov;
  cov.cov1.assign(x.data(), x.data() + n);
  cov.cov2.assign(x.data() + n, x.data() + 2 * n);
  return cov;
}

inline Eigen::VectorXd flatten(const Cut& cut) {
  const int n = cut.size();
  Eigen::VectorXd a(2 * n);
  for (int v = 0; v < n; ++v) {
    a[v] = cut.a1[v];
    a[n + v] = cut.a2[v];
  }
  return a;
}

// Box constraints 0 <= cov_i(v), cov1(v) + cov2(v) <= 1, first violation wins.
inline std::optional<KindedCut> box_cut(const CoverageVector& cov, double eps) {
  const int n = cov.size();
  for (int v = 0; v < n; ++v) {
    if (cov.cov1[v] < -eps) {
      Cut c = Cut::zero(n);
      c.a1[v] = -1.0;
      return KindedCut{CutKind::kNonnegative1, std::move(c)};
    }
    if (cov.cov2[v] < -eps) {
      Cut c = Cut::zero(n);
      c.a2[v] = -1.0;
      return KindedCut{CutKind::kNonnegative2, std::move(c)};
    }
    if (cov.cov1[v] + cov.cov2[v] > 1.0 + eps) {
      Cut c = Cut::zero(n);
      c.a1[v] = 1.0;
      c.a2[v] = 1.0;
      c.b = 1.0;
      return KindedCut{CutKind::kUnitCoverage, std::move(c)};
    }
  }
  return std::nullopt;
}

// sum_v cov(v) >= m, stored as -sum <= -m.
inline std::optional<KindedCut> mass_cut(const CoverageVector& cov, int m, double eps) {
  if (cov.total() >= m - eps) return std::nullopt;
  const int n = cov.size();
  Cut c{std::vector<double>(n, -1.0), std::vector<double>(n, -1.0), -static_cast<double>(m)};
  return KindedCut{CutKind::kMass, std::move(c)};
}

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Adapts a coverage-space oracle to the generic ellipsoid driver, reporting
// every cut to `observer` as it is emitted.
template <class Payload, class CoverageOracle>
auto engine_oracle(CoverageOracle& oracle, SolveObserver* observer, CutEvent event_template) {
  return [&oracle, observer, event_template,
          iteration = 0L](const Eigen::VectorXd& x) mutable -> Verdict<Payload> {
    OracleVerdict<Payload> v = oracle(unflatten(x));
    const long it = iteration++;
    if (auto* r = std::get_if<Rounded<Payload>>(&v)) return Rounded<Payload>{std::move(r->payload)};
    auto& kc = std::get<KindedCut>(v);
    if (observer != nullptr) {
      CutEvent ev = event_template;
      ev.iteration = it;
      ev.kind = kc.kind;
      ev.cut = &kc.cut;
      if (ev.layer == Layer::kOuter) ev.candidates = oracle.last_candidates();
      observer->on_cut(ev);
    }
    return HalfSpace{flatten(kc.cut), kc.cut.b};
  };
}

}  // namespace nukc
