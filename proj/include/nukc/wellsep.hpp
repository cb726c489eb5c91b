#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nukc/cgk.hpp"
#include "nukc/ellipsoid.hpp"
#include "nukc/firefighter.hpp"
#include "nukc/oracle.hpp"

namespace nukc {

// Round-or-cut oracle for well-separated instances. Checks, in order: box,
// Y-support (cov1 vanishes away from Y), mass, and finally builds the
// (2,2)-tree; rounds at dilation 4 when the tree is valuable, otherwise cuts
// sum_{v in L2} w(v) cov(v) <= m - 1.
class WellSepOracle {
 public:
  WellSepOracle(const WellSepNUkCInstance& inst, double slack) : inst_(inst), slack_(slack) {
    const int n = inst_.base.size();
    supported_.assign(n, 0);
    for (int v = 0; v < n; ++v) {
      supported_[v] = distance_to_set(inst_.base.metric, v, inst_.Y) <= inst_.base.r1 ? 1 : 0;
    }
  }

  OracleVerdict<NUkCSolution> operator()(const CoverageVector& cov) const {
    const int n = inst_.base.size();
    if (cov.size() != n) throw InvalidInstance("coverage vector has wrong dimension");
    if (auto c = box_cut(cov, slack_)) return *c;
    for (int v = 0; v < n; ++v) {
      if (!supported_[v] && cov.cov1[v] > slack_) {
        Cut c = Cut::zero(n);
        c.a1[v] = 1.0;
        return KindedCut{CutKind::kYSupport, std::move(c)};
      }
    }
    if (auto c = mass_cut(cov, inst_.base.m, slack_)) return *c;

    // Snap the tolerated slack: cov1 is exactly 0 off the support and the box
    // holds exactly, so the HS priority rule sees the intended order.
    CoverageVector clean = CoverageVector::zeros(n);
    for (int v = 0; v < n; ++v) {
      clean.cov1[v] = supported_[v] ? clamp01(cov.cov1[v]) : 0.0;
      clean.cov2[v] = clamp01(cov.cov2[v]);
    }
    last_tree_ = cgk_reduce(inst_.base, 2.0, 2.0, clean, &inst_.Y);
    const TwoFFSolution best = solve_2ff(*last_tree_);
    if (best.value >= inst_.base.m) {
      NUkCSolution sol = lift_ff_solution(*last_tree_, best).solution;
      return Rounded<NUkCSolution>{std::move(sol)};
    }
    Cut c = Cut::zero(n);
    for (int j = 0; j < last_tree_->num_leaves(); ++j) {
      const PointId v = last_tree_->leaves[j];
      c.a1[v] = last_tree_->weight[j];
      c.a2[v] = last_tree_->weight[j];
    }
    c.b = inst_.base.m - 1.0;
    return KindedCut{CutKind::kTreeWeight, std::move(c)};
  }

  // Tree built by the most recent query that reached the reduction step.
  const std::optional<TwoFFInstance>& last_tree() const { return last_tree_; }
  const std::vector<CandidateVerdict>* last_candidates() const { return nullptr; }

 private:
  const WellSepNUkCInstance& inst_;
  double slack_;
  std::vector<std::uint8_t> supported_;
  mutable std::optional<TwoFFInstance> last_tree_;
};

struct WellSepResult {
  bool feasible = false;
  NUkCSolution solution;     // dilation 4 w.r.t. the instance's own radii
  long iterations = 0;
  bool short_circuit = false;
  std::vector<HalfSpace> trace;
};

// Either a 4-approximate solution or INFEASIBLE after the iteration cap.
inline WellSepResult solve_wellsep(const WellSepNUkCInstance& inst, const SolverOptions& options = {},
                                   std::optional<PointId> candidate_q = std::nullopt,
                                   bool record_trace = false) {
  WellSepResult out;
  const int n = inst.base.size();
  if (inst.base.m > n) {  // checked before validate(), which rejects it
    out.short_circuit = true;
    return out;
  }
  inst.validate();
  if (inst.base.m == 0) {
    out.feasible = true;
    out.short_circuit = true;
    return out;
  }
  WellSepOracle oracle(inst, check_slack(options, n));
  CutEvent tmpl;
  tmpl.layer = Layer::kInner;
  tmpl.inner_instance = &inst;
  tmpl.candidate_q = candidate_q;
  EllipsoidConfig cfg;
  cfg.max_iters = options.max_iters;
  cfg.eps = options.eps;
  cfg.min_width = check_min_width(options, n);
  cfg.record_trace = record_trace;
  auto outcome = run_round_or_cut<NUkCSolution>(
      2 * n, engine_oracle<NUkCSolution>(oracle, options.observer, tmpl), cfg);
  out.iterations = outcome.iterations;
  out.trace = std::move(outcome.trace);
  if (outcome.rounded) {
    out.feasible = true;
    out.solution = std::move(*outcome.payload);
    if (options.observer != nullptr) {
      options.observer->on_round({Layer::kInner, outcome.iterations, "tree", out.solution.dilation});
    }
  }
  return out;
}

}  // namespace nukc
