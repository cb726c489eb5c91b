#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "nukc/metric.hpp"

namespace nukc {

struct HSResult {
  std::vector<PointId> reps;       // in selection order
  std::vector<PointSet> child;     // child[i] belongs to reps[i]
};

// Greedy Hochbaum-Shmoys partition of U at radius r. Representatives are
// taken in non-increasing `cov` order; ties go to points whose `priority`
// flag is set, then to the lowest index. `cov` and `priority` are indexed by
// point id. Each representative claims every remaining point within r.
//
// Guarantees: d(u, v) <= r inside a part, d(u, u') > r between
// representatives, the parts partition U, and cov(u) >= cov(v) for every v in
// Child(u).
inline HSResult hs_partition(const MetricSpace& metric, std::span<const PointId> U, double r,
                             std::span<const double> cov,
                             std::span<const std::uint8_t> priority = {}) {
  std::vector<PointId> order(U.begin(), U.end());
  auto prio = [&](PointId v) { return !priority.empty() && priority[v] != 0; };
  std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
    if (cov[a] != cov[b]) return cov[a] > cov[b];
    if (prio(a) != prio(b)) return prio(a);
    return a < b;
  });

  HSResult out;
  std::vector<std::uint8_t> taken(metric.size(), 0);
  for (PointId u : order) {
    if (taken[u]) continue;
    PointSet part;
    for (PointId v : order) {
      if (!taken[v] && metric(u, v) <= r) {
        taken[v] = 1;
        part.push_back(v);
      }
    }
    std::sort(part.begin(), part.end());
    out.reps.push_back(u);
    out.child.push_back(std::move(part));
  }
  return out;
}

}  // namespace nukc
