#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "nukc/cgk.hpp"
#include "nukc/ellipsoid.hpp"
#include "nukc/firefighter.hpp"
#include "nukc/oracle.hpp"
#include "nukc/wellsep.hpp"

namespace nukc {

inline constexpr double kOuterAlpha1 = 8.0;
inline constexpr double kOuterAlpha2 = 2.0;

// A well-separated instance derived from Y, optionally with one radius-r1
// center q opened far from Y. With q, the clients are X \ B(q, r1) and the
// coverage target drops by |B(q, r1)|.
struct Candidate {
  std::optional<PointId> q;
  WellSepNUkCInstance instance;
};

// I_empty = (X, (2r1, r2), (k1, k2), Y, m) and, for every q with d(q, Y) > r1
// (only when k1 >= 1), I_q = (X \ B(q, r1), (2r1, r2), (k1 - 1, k2), Y,
// max(0, m - |B(q, r1)|)).
inline std::vector<Candidate> enumerate_candidates(const NUkCInstance& inst, const PointSet& Y) {
  for (std::size_t i = 0; i < Y.size(); ++i) {
    inst.metric.check_index(Y[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (!(inst.metric(Y[i], Y[j]) > 8.0 * inst.r1)) {
        throw ContractViolation("candidate enumeration needs Y pairwise more than 8*r1 apart");
      }
    }
  }
  std::vector<Candidate> out;
  {
    Candidate c;
    c.instance.base = inst;
    c.instance.base.r1 = 2.0 * inst.r1;
    c.instance.Y = Y;
    out.push_back(std::move(c));
  }
  if (inst.k1 == 0) return out;
  for (PointId q = 0; q < inst.size(); ++q) {
    if (!(distance_to_set(inst.metric, q, Y) > inst.r1)) continue;
    std::vector<PointId> keep;
    int ball_size = 0;
    for (PointId v = 0; v < inst.size(); ++v) {
      if (inst.metric(q, v) <= inst.r1) {
        ++ball_size;
      } else {
        keep.push_back(v);
      }
    }
    std::vector<int> local(inst.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
    Candidate c;
    c.q = q;
    c.instance.base.metric = inst.metric.restricted(keep);
    c.instance.base.r1 = 2.0 * inst.r1;
    c.instance.base.r2 = inst.r2;
    c.instance.base.k1 = inst.k1 - 1;
    c.instance.base.k2 = inst.k2;
    c.instance.base.m = std::max(0, inst.m - ball_size);
    for (PointId y : Y) c.instance.Y.push_back(local[y]);
    c.instance.parent_ids = std::move(keep);
    out.push_back(std::move(c));
  }
  return out;
}

// Maps an inner dilation-4 solution back to the enclosing instance and adds
// q as a radius-1 center. Valid at dilation 8 for the original radii.
inline NUkCSolution lift_candidate_solution(std::optional<PointId> q, const NUkCSolution& inner,
                                            const Candidate& cand, const NUkCInstance& inst) {
  NUkCSolution out;
  for (PointId c : inner.centers1) out.centers1.push_back(cand.instance.to_parent(c));
  for (PointId c : inner.centers2) out.centers2.push_back(cand.instance.to_parent(c));
  if (q) out.centers1.push_back(*q);
  out.centers1 = normalized(std::move(out.centers1));
  out.centers2 = normalized(std::move(out.centers2));
  if (static_cast<int>(out.centers1.size()) > inst.k1 ||
      static_cast<int>(out.centers2.size()) > inst.k2) {
    throw ContractViolation("lifted candidate solution exceeds the budgets");
  }
  out.dilation = 8.0;
  return out;
}

enum class Route { kShortCircuit, kCaseI, kCaseII };

inline std::string_view to_string(Route r) {
  switch (r) {
    case Route::kShortCircuit: return "short_circuit";
    case Route::kCaseI: return "case_I";
    case Route::kCaseII: return "case_II";
  }
  return "unknown";
}

struct OuterRound {
  NUkCSolution solution;
  Route route = Route::kCaseI;
};

struct OuterStats {
  long inner_solves = 0;
  long inner_iterations = 0;
  long cache_hits = 0;
  long case1_rounds = 0;
  long case2_steps = 0;
};

// Memoizes well-separated verdicts per (clients, Y, k1) within one solve. The
// inner instance is a pure function of that key.
class CandidateCache {
 public:
  using Key = std::tuple<std::vector<PointId>, PointSet, int, int>;

  const WellSepResult* find(const Key& k) const {
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }
  const WellSepResult& insert(Key k, WellSepResult r) {
    return map_.emplace(std::move(k), std::move(r)).first->second;
  }

  static Key key_of(const Candidate& c) {
    return {c.instance.parent_ids, c.instance.Y, c.instance.base.k1, c.instance.base.m};
  }

 private:
  std::map<Key, WellSepResult> map_;
};

// Outer round-or-cut oracle with (alpha1, alpha2) = (8, 2).
class OuterOracle {
 public:
  OuterOracle(const NUkCInstance& inst, const SolverOptions& options)
      : inst_(inst), options_(options) {}

  OracleVerdict<OuterRound> operator()(const CoverageVector& cov) {
    last_candidates_.clear();
    const int n = inst_.size();
    if (cov.size() != n) throw InvalidInstance("coverage vector has wrong dimension");
    const double slack = check_slack(options_, n);
    if (auto c = box_cut(cov, slack)) return *c;
    if (auto c = mass_cut(cov, inst_.m, slack)) return *c;

    CoverageVector clean = CoverageVector::zeros(n);
    for (int v = 0; v < n; ++v) {
      clean.cov1[v] = clamp01(cov.cov1[v]);
      clean.cov2[v] = clamp01(cov.cov2[v]);
    }
    const TwoFFInstance tree = cgk_reduce(inst_, kOuterAlpha1, kOuterAlpha2, clean);

    double cov1_L1 = 0.0;
    for (PointId u : tree.roots) cov1_L1 += cov.cov1[u];
    if (cov1_L1 > inst_.k1 + slack) {
      Cut c = Cut::zero(n);
      for (PointId u : tree.roots) c.a1[u] = 1.0;
      c.b = inst_.k1;
      return KindedCut{CutKind::kBudget1, std::move(c)};
    }
    double cov2_L2 = 0.0;
    for (PointId v : tree.leaves) cov2_L2 += cov.cov2[v];
    if (cov2_L2 > inst_.k2 + slack) {
      Cut c = Cut::zero(n);
      for (PointId v : tree.leaves) c.a2[v] = 1.0;
      c.b = inst_.k2;
      return KindedCut{CutKind::kBudget2, std::move(c)};
    }

    if (cov1_L1 <= inst_.k1 - 2 + options_.case_tolerance) {
      const TwoFFSolution best = solve_2ff(tree);
      if (best.value < inst_.m) throw TheoryViolation(dump_case1(cov, tree, best));
      ++stats_.case1_rounds;
      return Rounded<OuterRound>{{lift_ff_solution(tree, best).solution, Route::kCaseI}};
    }

    ++stats_.case2_steps;
    PointSet Y = normalized(tree.roots);
    const std::vector<Candidate> candidates = enumerate_candidates(inst_, Y);
    for (const Candidate& cand : candidates) {
      const WellSepResult& res = solve_candidate(cand);
      last_candidates_.push_back({cand.q, res.feasible, res.iterations, last_was_cached_});
      if (res.feasible) {
        NUkCSolution lifted = lift_candidate_solution(cand.q, res.solution, cand, inst_);
        return Rounded<OuterRound>{{std::move(lifted), Route::kCaseII}};
      }
    }
    Cut c = Cut::zero(n);
    for (PointId u : tree.roots) c.a1[u] = 1.0;
    c.b = inst_.k1 - 2.0;
    return KindedCut{CutKind::kSeparatedBudget, std::move(c)};
  }

  const std::vector<CandidateVerdict>* last_candidates() const { return &last_candidates_; }
  const OuterStats& stats() const { return stats_; }

 private:
  const WellSepResult& solve_candidate(const Candidate& cand) {
    last_was_cached_ = false;
    if (!options_.cache_candidates) {
      scratch_ = run_candidate(cand);
      return scratch_;
    }
    auto key = CandidateCache::key_of(cand);
    if (const WellSepResult* hit = cache_.find(key)) {
      ++stats_.cache_hits;
      last_was_cached_ = true;
      return *hit;
    }
    return cache_.insert(std::move(key), run_candidate(cand));
  }

  WellSepResult run_candidate(const Candidate& cand) {
    WellSepResult r = solve_wellsep(cand.instance, options_, cand.q);
    ++stats_.inner_solves;
    stats_.inner_iterations += r.iterations;
    return r;
  }

  std::string dump_case1(const CoverageVector& cov, const TwoFFInstance& tree,
                         const TwoFFSolution& best) const {
    std::ostringstream os;
    os.precision(17);
    os << "theory-violation: Case I tree is not valuable (best " << best.value << " < m "
       << inst_.m << ")\n  r1=" << inst_.r1 << " r2=" << inst_.r2 << " k1=" << inst_.k1
       << " k2=" << inst_.k2 << "\n  cov1=";
    for (double x : cov.cov1) os << x << ' ';
    os << "\n  cov2=";
    for (double x : cov.cov2) os << x << ' ';
    os << "\n  roots=";
    for (PointId u : tree.roots) os << u << ' ';
    os << "\n  leaves(weight,parent)=";
    for (int j = 0; j < tree.num_leaves(); ++j) {
      os << tree.leaves[j] << '(' << tree.weight[j] << ',' << tree.parent[j] << ") ";
    }
    return os.str();
  }

  const NUkCInstance& inst_;
  const SolverOptions& options_;
  CandidateCache cache_;
  WellSepResult scratch_;
  bool last_was_cached_ = false;
  std::vector<CandidateVerdict> last_candidates_;
  OuterStats stats_;
};

struct FeasibilityResult {
  bool feasible = false;
  NUkCSolution solution;
  Route route = Route::kShortCircuit;
  long outer_iterations = 0;
  OuterStats stats;
};

// Either a solution verified at dilation <= 10 or INFEASIBLE (no dilation-1
// solution, up to the iteration cap).
inline FeasibilityResult solve_feasibility(const NUkCInstance& inst, const SolverOptions& options = {}) {
  inst.validate();
  FeasibilityResult out;
  const int n = inst.size();
  if (inst.m == 0) {
    out.feasible = true;
    return out;
  }
  if (inst.k2 >= inst.m) {
    out.feasible = true;
    for (PointId v = 0; v < inst.m; ++v) out.solution.centers2.push_back(v);
    return out;
  }
  if (inst.k1 == 0 && inst.k2 == 0) return out;

  OuterOracle oracle(inst, options);
  CutEvent tmpl;
  tmpl.layer = Layer::kOuter;
  EllipsoidConfig cfg;
  cfg.max_iters = options.max_iters;
  cfg.eps = options.eps;
  cfg.min_width = check_min_width(options, n);
  auto outcome = run_round_or_cut<OuterRound>(
      2 * n, engine_oracle<OuterRound>(oracle, options.observer, tmpl), cfg);
  out.outer_iterations = outcome.iterations;
  out.stats = oracle.stats();
  if (!outcome.rounded) return out;

  out.feasible = true;
  out.solution = std::move(outcome.payload->solution);
  out.route = outcome.payload->route;
  const Verification check = verify_solution(inst, out.solution, out.solution.dilation);
  if (!check.ok) {
    std::ostringstream os;
    os << "theory-violation: rounded solution (" << to_string(out.route) << ") covers "
       << check.covered << " < m = " << inst.m << " at dilation " << out.solution.dilation;
    throw TheoryViolation(os.str());
  }
  if (options.observer != nullptr) {
    options.observer->on_round({Layer::kOuter, outcome.iterations, to_string(out.route),
                                out.solution.dilation});
  }
  return out;
}

struct OptimizeResult {
  bool found = false;
  double rho = std::numeric_limits<double>::infinity();  // smallest non-refuted candidate
  NUkCSolution solution;  // dilation w.r.t. the original radii, <= 10 * rho
  FeasibilityResult at_rho;
};

// Radius scaling used when probing a candidate dilation: absorbs the rounding
// of (d/r) * r so that the defining pair stays inside the ball.
inline constexpr double kScaleSlack = 1e-12;

// Exact answer at rho = 0: every ball shrinks to its duplicate class.
inline FeasibilityResult solve_at_zero(const NUkCInstance& inst) {
  std::vector<std::pair<int, PointId>> classes;  // (size, representative)
  std::vector<std::uint8_t> seen(inst.size(), 0);
  for (PointId u = 0; u < inst.size(); ++u) {
    if (seen[u]) continue;
    int size = 0;
    for (PointId v = 0; v < inst.size(); ++v) {
      if (!seen[v] && inst.metric(u, v) <= 0.0) {
        seen[v] = 1;
        ++size;
      }
    }
    classes.emplace_back(size, u);
  }
  std::stable_sort(classes.begin(), classes.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  FeasibilityResult out;
  int covered = 0;
  const int budget = inst.k1 + inst.k2;
  for (int i = 0; i < budget && i < static_cast<int>(classes.size()) && covered < inst.m; ++i) {
    if (i < inst.k1) {
      out.solution.centers1.push_back(classes[i].second);
    } else {
      out.solution.centers2.push_back(classes[i].second);
    }
    covered += classes[i].first;
  }
  out.feasible = covered >= inst.m;
  if (!out.feasible) out.solution = {};
  out.solution.centers1 = normalized(out.solution.centers1);
  out.solution.centers2 = normalized(out.solution.centers2);
  out.solution.dilation = 0.0;
  return out;
}

inline std::vector<double> candidate_dilations(const NUkCInstance& inst) {
  std::vector<double> cands = {0.0, 1.0};
  for (PointId u = 0; u < inst.size(); ++u) {
    for (PointId v = u + 1; v < inst.size(); ++v) {
      const double d = inst.metric(u, v);
      if (inst.r1 > 0.0) cands.push_back(d / inst.r1);
      if (inst.r2 > 0.0) cands.push_back(d / inst.r2);
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

// Feasibility probe at one candidate dilation.
inline FeasibilityResult probe_dilation(const NUkCInstance& inst, double rho,
                                        const SolverOptions& options) {
  if (rho == 0.0) return solve_at_zero(inst);
  FeasibilityResult r = solve_feasibility(inst.scaled(rho * (1.0 + kScaleSlack)), options);
  if (r.feasible) r.solution.dilation *= rho * (1.0 + 2.0 * kScaleSlack);
  return r;
}

// Binary search for the smallest candidate dilation not refuted by
// solve_feasibility.
inline OptimizeResult optimize(const NUkCInstance& inst, const SolverOptions& options = {}) {
  inst.validate();
  if (!(inst.r1 > 0.0)) throw InvalidInstance("optimize needs r1 > 0");
  OptimizeResult out;
  if (inst.m == 0) {
    out.found = true;
    out.rho = 0.0;
    out.solution.dilation = 0.0;
    return out;
  }
  const std::vector<double> cands = candidate_dilations(inst);
  FeasibilityResult top = probe_dilation(inst, cands.back(), options);
  if (!top.feasible) return out;
  std::size_t lo = 0;
  std::size_t hi = cands.size() - 1;  // invariant: cands[hi] feasible
  FeasibilityResult best = std::move(top);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    FeasibilityResult r = probe_dilation(inst, cands[mid], options);
    if (r.feasible) {
      hi = mid;
      best = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  out.found = true;
  out.rho = cands[hi];
  out.solution = best.solution;
  out.at_rho = std::move(best);
  return out;
}

}  // namespace nukc
