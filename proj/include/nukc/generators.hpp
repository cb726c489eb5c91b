#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nukc/instance.hpp"
#include "nukc/io.hpp"

namespace nukc::gen {

using Rng = std::mt19937_64;

struct GenParams {
  int n = 10;
  int k1 = 1;
  int k2 = 1;
  int m = -1;            // -1: n for uniform/graph, n - outliers for planted
  double r1 = 1.0;
  double r2 = 0.5;
  int outliers = 0;      // planted only
  double edge_prob = 0.3;  // graph only
  int max_weight = 5;      // graph only
  std::uint64_t seed = 1;
};

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline MetricSpace uniform_square_metric(int n, Rng& rng) {
  std::vector<Point2> pts(n);
  for (auto& p : pts) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  return MetricSpace::from_points(std::move(pts));
}

// Random spanning tree plus independent extra edges, integer weights in
// [1, max_weight]; shortest-path metric by Floyd-Warshall.
inline MetricSpace random_graph_metric(int n, double edge_prob, int max_weight, Rng& rng) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (int u = 0; u < n; ++u) d[u][u] = 0.0;
  auto add_edge = [&](int u, int v) {
    const double w = uniform_int(rng, 1, max_weight);
    d[u][v] = std::min(d[u][v], w);
    d[v][u] = d[u][v];
  };
  for (int v = 1; v < n; ++v) add_edge(v, uniform_int(rng, 0, v - 1));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (uniform01(rng) < edge_prob) add_edge(u, v);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return MetricSpace::from_matrix(d);
}

// Point strictly inside the closed disk of radius r (or the center when r = 0).
inline Point2 point_in_disk(const Point2& c, double r, Rng& rng) {
  if (r <= 0.0) return c;
  const double angle = 2.0 * M_PI * uniform01(rng);
  const double rad = 0.999 * r * std::sqrt(uniform01(rng));
  return {c.x + rad * std::cos(angle), c.y + rad * std::sin(angle)};
}

// k1 + k2 planted centers with points scattered inside their balls, plus
// `outliers` points more than 10*r1 from every inlier and from each other.
// Feasible at dilation 1 by construction; the truth is recorded.
inline io::InstanceFile planted(const GenParams& p) {
  const int inliers = p.n - p.outliers;
  const int centers = p.k1 + p.k2;
  if (p.outliers < 0 || inliers < centers || centers == 0) {
    throw InvalidInstance("planted generator needs n - outliers >= k1 + k2 >= 1");
  }
  if (!(p.r1 > p.r2) || p.r2 < 0.0) throw InvalidInstance("planted generator needs r1 > r2 >= 0");
  const int m = p.m < 0 ? inliers : p.m;
  if (m > inliers) throw InvalidInstance("planted generator cannot guarantee m > n - outliers");
  Rng rng(p.seed);

  const double side = 4.0 * p.r1 * std::sqrt(static_cast<double>(centers)) + 1e-9;
  std::vector<Point2> pts;
  std::vector<int> owner;  // center slot per point, -1 for outliers
  for (int c = 0; c < centers; ++c) {
    pts.push_back({side * uniform01(rng), side * uniform01(rng)});
    owner.push_back(c);
  }
  for (int i = centers; i < inliers; ++i) {
    const int c = uniform_int(rng, 0, centers - 1);
    const double r = c < p.k1 ? p.r1 : p.r2;
    pts.push_back(point_in_disk(pts[c], r, rng));
    owner.push_back(c);
  }
  double cx = 0.0;
  double cy = 0.0;
  for (const auto& q : pts) {
    cx += q.x;
    cy += q.y;
  }
  cx /= inliers;
  cy /= inliers;
  double spread = 0.0;
  for (const auto& q : pts) spread = std::max(spread, std::hypot(q.x - cx, q.y - cy));
  const double R = std::max(spread + 11.0 * p.r1, 11.0 * p.r1 * std::max(1, p.outliers));
  const double phase = 2.0 * M_PI * uniform01(rng);
  for (int i = 0; i < p.outliers; ++i) {
    const double a = phase + 2.0 * M_PI * i / p.outliers;
    pts.push_back({cx + R * std::cos(a), cy + R * std::sin(a)});
    owner.push_back(-1);
  }

  std::vector<int> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);  // perm[new] = old
  std::vector<Point2> shuffled(p.n);
  io::PlantedTruth truth;
  for (int i = 0; i < p.n; ++i) {
    const int old = perm[i];
    shuffled[i] = pts[old];
    if (old < p.k1) truth.centers1.push_back(i);
    else if (old < centers) truth.centers2.push_back(i);
    if (owner[old] < 0) truth.outliers.push_back(i);
  }
  truth.centers1 = normalized(truth.centers1);
  truth.centers2 = normalized(truth.centers2);
  truth.outliers = normalized(truth.outliers);

  io::InstanceFile f;
  f.instance = NUkCInstance::make(MetricSpace::from_points(std::move(shuffled)), p.r1, p.r2, p.k1,
                                  p.k2, m);
  f.planted = std::move(truth);
  f.kind = "planted";
  f.seed = p.seed;
  return f;
}

inline io::InstanceFile uniform(const GenParams& p) {
  Rng rng(p.seed);
  io::InstanceFile f;
  f.instance = NUkCInstance::make(uniform_square_metric(p.n, rng), p.r1, p.r2, p.k1, p.k2,
                                  p.m < 0 ? p.n : p.m);
  f.kind = "uniform";
  f.seed = p.seed;
  return f;
}

inline io::InstanceFile graph(const GenParams& p) {
  if (p.max_weight < 1) throw InvalidInstance("graph generator needs max_weight >= 1");
  Rng rng(p.seed);
  io::InstanceFile f;
  f.instance = NUkCInstance::make(random_graph_metric(p.n, p.edge_prob, p.max_weight, rng), p.r1,
                                  p.r2, p.k1, p.k2, p.m < 0 ? p.n : p.m);
  f.kind = "graph";
  f.seed = p.seed;
  return f;
}

inline io::InstanceFile generate(const std::string& kind, const GenParams& p) {
  if (kind == "planted") return planted(p);
  if (kind == "uniform") return uniform(p);
  if (kind == "graph") return graph(p);
  throw InvalidInstance("unknown generator kind '" + kind + "' (planted|uniform|graph)");
}

}  // namespace nukc::gen
