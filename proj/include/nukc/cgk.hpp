#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nukc/errors.hpp"
#include "nukc/hs.hpp"
#include "nukc/instance.hpp"

namespace nukc {

// Weighted two-level firefighter instance: a forest of stars with roots L1 and
// leaves L2. Leaves and roots are addressed by position; `roots[i]` and
// `leaves[j]` hold the underlying point ids (synthetic for standalone trees).
struct TwoFFInstance {
  std::vector<PointId> roots;               // L1
  std::vector<PointId> leaves;              // L2
  std::vector<int> parent;                  // leaf position -> root position
  std::vector<std::vector<int>> leaf_set;   // root position -> leaf positions (Leaf(u))
  std::vector<int> weight;                  // leaf position -> w(v) = |Child2(v)|
  std::vector<PointSet> child2;             // leaf position -> Child2(v)
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  int k1 = 0;
  int k2 = 0;

  int num_roots() const { return static_cast<int>(roots.size()); }
  int num_leaves() const { return static_cast<int>(leaves.size()); }

  int total_weight() const {
    int s = 0;
    for (int w : weight) s += w;
    return s;
  }

  int star_weight(int root) const {
    int s = 0;
    for (int leaf : leaf_set[root]) s += weight[leaf];
    return s;
  }

  // Builds a metric-free tree: star i has leaves with the listed weights.
  static TwoFFInstance from_stars(const std::vector<std::vector<int>>& star_weights, int k1,
                                  int k2) {
    TwoFFInstance t;
    t.k1 = k1;
    t.k2 = k2;
    for (std::size_t s = 0; s < star_weights.size(); ++s) {
      t.roots.push_back(static_cast<PointId>(t.leaves.size()));
      t.leaf_set.emplace_back();
      for (int w : star_weights[s]) {
        if (w < 0) throw InvalidInstance("leaf weights must be nonnegative");
        const int pos = t.num_leaves();
        t.leaves.push_back(pos);
        t.parent.push_back(static_cast<int>(s));
        t.leaf_set.back().push_back(pos);
        t.weight.push_back(w);
        t.child2.push_back({pos});
      }
      if (star_weights[s].empty()) throw InvalidInstance("every star needs at least one leaf");
    }
    return t;
  }
};

// T1 and T2 hold root / leaf positions.
struct TwoFFSolution {
  std::vector<int> T1;
  std::vector<int> T2;
  int value = 0;
};

// w(C(T)) where C(T) = { v in L2 : v in T2 or p(v) in T1 }.
inline int ff_value(const TwoFFInstance& tree, const std::vector<int>& T1,
                    const std::vector<int>& T2) {
  std::vector<std::uint8_t> covered(tree.num_leaves(), 0);
  for (int r : T1) {
    for (int leaf : tree.leaf_set[r]) covered[leaf] = 1;
  }
  for (int leaf : T2) covered[leaf] = 1;
  int s = 0;
  for (int j = 0; j < tree.num_leaves(); ++j) {
    if (covered[j]) s += tree.weight[j];
  }
  return s;
}

// Two HS passes: leaves at radius alpha2*r2 under cov1+cov2 over all of X,
// then roots at radius alpha1*r1 under cov1 over the leaves. When Y is given,
// points within r1 of Y win cov1 ties in the second pass.
inline TwoFFInstance cgk_reduce(const NUkCInstance& inst, double alpha1, double alpha2,
                                const CoverageVector& cov, const PointSet* Y = nullptr) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw InvalidInstance("dilation factors must be positive");
  const int n = inst.size();
  if (cov.size() != n) throw InvalidInstance("coverage vector has wrong dimension");

  std::vector<double> total(n);
  for (int v = 0; v < n; ++v) total[v] = cov.cov(v);
  std::vector<PointId> all(n);
  std::iota(all.begin(), all.end(), 0);
  HSResult level2 = hs_partition(inst.metric, all, alpha2 * inst.r2, total);

  std::vector<std::uint8_t> priority;
  if (Y != nullptr) {
    priority.assign(n, 0);
    for (int v = 0; v < n; ++v) {
      priority[v] = distance_to_set(inst.metric, v, *Y) <= inst.r1 ? 1 : 0;
    }
  }
  HSResult level1 = hs_partition(inst.metric, level2.reps, alpha1 * inst.r1, cov.cov1, priority);

  TwoFFInstance tree;
  tree.alpha1 = alpha1;
  tree.alpha2 = alpha2;
  tree.k1 = inst.k1;
  tree.k2 = inst.k2;
  tree.leaves = level2.reps;
  tree.child2 = std::move(level2.child);
  tree.weight.resize(tree.leaves.size());
  for (std::size_t j = 0; j < tree.leaves.size(); ++j) {
    tree.weight[j] = static_cast<int>(tree.child2[j].size());
  }

  std::vector<int> leaf_pos(n, -1);
  for (std::size_t j = 0; j < tree.leaves.size(); ++j) leaf_pos[tree.leaves[j]] = static_cast<int>(j);

  tree.roots = level1.reps;
  tree.parent.assign(tree.leaves.size(), -1);
  tree.leaf_set.resize(tree.roots.size());
  for (std::size_t i = 0; i < tree.roots.size(); ++i) {
    for (PointId v : level1.child[i]) {
      const int j = leaf_pos[v];
      tree.parent[j] = static_cast<int>(i);
      tree.leaf_set[i].push_back(j);
    }
    std::sort(tree.leaf_set[i].begin(), tree.leaf_set[i].end());
  }
  return tree;
}

struct FracFFSolution {
  std::vector<double> y_root;   // per root position
  std::vector<double> y_leaf;   // per leaf position
  double value = 0.0;           // sum_v w(v) (y_p(v) + y_v)
};

// y_u = cov1(u) on roots, y_v = min(cov2(v), 1 - cov1(p(v))) on leaves.
inline FracFFSolution frac_ff_solution(const TwoFFInstance& tree, const CoverageVector& cov) {
  FracFFSolution out;
  out.y_root.resize(tree.num_roots());
  out.y_leaf.resize(tree.num_leaves());
  for (int i = 0; i < tree.num_roots(); ++i) out.y_root[i] = cov.cov1[tree.roots[i]];
  for (int j = 0; j < tree.num_leaves(); ++j) {
    const double yp = out.y_root[tree.parent[j]];
    out.y_leaf[j] = std::min(cov.cov2[tree.leaves[j]], 1.0 - yp);
    out.value += tree.weight[j] * (yp + out.y_leaf[j]);
  }
  return out;
}

struct LiftedSolution {
  NUkCSolution solution;
  // For each centers1 entry: a point of Y within r1 of it, if requested and
  // one exists. Reporting only; centers are never moved.
  std::vector<std::optional<PointId>> snap_witness;
};

// Opens radius-1 centers at the chosen roots and radius-2 centers at the
// chosen leaves; every point of Child2(v), v in C(T), is then within
// alpha2*r2 + alpha1*r1 <= (alpha1+alpha2)*r1 of a center.
inline LiftedSolution lift_ff_solution(const TwoFFInstance& tree, const TwoFFSolution& T,
                                       const NUkCInstance* inst = nullptr,
                                       const PointSet* snapY = nullptr) {
  if (static_cast<int>(T.T1.size()) > tree.k1 || static_cast<int>(T.T2.size()) > tree.k2) {
    throw ContractViolation("firefighter solution exceeds its budgets");
  }
  LiftedSolution out;
  for (int r : T.T1) out.solution.centers1.push_back(tree.roots.at(r));
  for (int l : T.T2) out.solution.centers2.push_back(tree.leaves.at(l));
  out.solution.centers1 = normalized(std::move(out.solution.centers1));
  out.solution.centers2 = normalized(std::move(out.solution.centers2));
  out.solution.dilation = tree.alpha1 + tree.alpha2;
  if (snapY != nullptr && inst != nullptr) {
    for (PointId c : out.solution.centers1) {
      std::optional<PointId> witness;
      for (PointId y : *snapY) {
        if (inst->metric(c, y) <= inst->r1) {
          witness = y;
          break;
        }
      }
      out.snap_witness.push_back(witness);
    }
  }
  return out;
}

}  // namespace nukc
