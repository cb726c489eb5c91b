#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "nukc/cgk.hpp"

namespace nukc {

// Exact weighted 2-level firefighter by dynamic programming over stars.
// State (roots used, leaves used); each star is either selected as a whole or
// contributes its j heaviest leaves (ties broken by position). Runs in
// O(|L1| * k1 * k2 * maxdeg).
inline TwoFFSolution solve_2ff(const TwoFFInstance& tree) {
  const int stars = tree.num_roots();
  const int K1 = std::clamp(tree.k1, 0, stars);
  const int K2 = std::clamp(tree.k2, 0, tree.num_leaves());

  // Leaves of each star sorted heaviest first, and their prefix sums.
  std::vector<std::vector<int>> sorted(stars);
  std::vector<std::vector<int>> prefix(stars);
  for (int s = 0; s < stars; ++s) {
    sorted[s] = tree.leaf_set[s];
    std::sort(sorted[s].begin(), sorted[s].end(), [&](int a, int b) {
      if (tree.weight[a] != tree.weight[b]) return tree.weight[a] > tree.weight[b];
      return a < b;
    });
    prefix[s].assign(sorted[s].size() + 1, 0);
    for (std::size_t j = 0; j < sorted[s].size(); ++j) {
      prefix[s][j + 1] = prefix[s][j] + tree.weight[sorted[s][j]];
    }
  }

  constexpr int kNeg = std::numeric_limits<int>::min() / 2;
  const int W = K2 + 1;
  auto at = [W](int a, int b) { return static_cast<std::size_t>(a) * W + b; };
  // best[s][a][b]: max weight over the first s stars using a roots, b leaves.
  std::vector<std::vector<int>> best(stars + 1, std::vector<int>((K1 + 1) * W, kNeg));
  // choice[s][a][b]: -1 = star s selected, j >= 0 = j leaves of star s taken.
  std::vector<std::vector<int>> choice(stars, std::vector<int>((K1 + 1) * W, 0));
  best[0][at(0, 0)] = 0;
  for (int s = 0; s < stars; ++s) {
    const int deg = static_cast<int>(sorted[s].size());
    for (int a = 0; a <= K1; ++a) {
      for (int b = 0; b <= K2; ++b) {
        const int cur = best[s][at(a, b)];
        if (cur == kNeg) continue;
        if (a + 1 <= K1) {
          const int cand = cur + prefix[s][deg];
          int& slot = best[s + 1][at(a + 1, b)];
          if (cand > slot) {
            slot = cand;
            choice[s][at(a + 1, b)] = -1;
          }
        }
        for (int j = 0; j <= deg && b + j <= K2; ++j) {
          const int cand = cur + prefix[s][j];
          int& slot = best[s + 1][at(a, b + j)];
          if (cand > slot) {
            slot = cand;
            choice[s][at(a, b + j)] = j;
          }
        }
      }
    }
  }

  // Among optimal states prefer more whole stars, then fewer leaves.
  int ba = 0;
  int bb = 0;
  for (int a = 0; a <= K1; ++a) {
    for (int b = 0; b <= K2; ++b) {
      const int v = best[stars][at(a, b)];
      const int cur = best[stars][at(ba, bb)];
      if (v > cur || (v == cur && a > ba)) {
        ba = a;
        bb = b;
      }
    }
  }

  TwoFFSolution sol;
  sol.value = best[stars][at(ba, bb)];
  int a = ba;
  int b = bb;
  for (int s = stars - 1; s >= 0; --s) {
    const int c = choice[s][at(a, b)];
    if (c < 0) {
      sol.T1.push_back(s);
      --a;
    } else {
      for (int j = 0; j < c; ++j) sol.T2.push_back(sorted[s][j]);
      b -= c;
    }
  }
  std::sort(sol.T1.begin(), sol.T1.end());
  std::sort(sol.T2.begin(), sol.T2.end());
  return sol;
}

// Valuable: some integral solution reaches weight m.
inline bool is_valuable(const TwoFFInstance& tree, int m) { return solve_2ff(tree).value >= m; }

}  // namespace nukc
