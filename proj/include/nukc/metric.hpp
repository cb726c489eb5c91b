#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nukc/errors.hpp"

namespace nukc {

using PointId = int;
// Point sets are kept sorted ascending and duplicate free.
using PointSet = std::vector<PointId>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kMetricTolerance = 1e-9;

// Finite metric space backed by a dense distance matrix. Optionally remembers
// the planar coordinates it was built from so it can be serialized back.
class MetricSpace {
 public:
  MetricSpace() = default;

  // Validates symmetry, zero diagonal, nonnegativity and the triangle
  // inequality (all within `tol`).
  static MetricSpace from_matrix(const std::vector<std::vector<double>>& dist,
                                 double tol = kMetricTolerance) {
    const int n = static_cast<int>(dist.size());
    MetricSpace space;
    space.n_ = n;
    space.dist_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u) {
      if (static_cast<int>(dist[u].size()) != n) {
        throw InvalidInstance("distance matrix is not square (row " + std::to_string(u) + ")");
      }
      for (int v = 0; v < n; ++v) {
        const double d = dist[u][v];
        if (!std::isfinite(d) || d < 0.0) {
          throw InvalidInstance("distance (" + std::to_string(u) + "," + std::to_string(v) +
                                ") is negative or not finite");
        }
        space.dist_[static_cast<std::size_t>(u) * n + v] = d;
      }
    }
    space.validate(tol);
    return space;
  }

  static MetricSpace from_points(std::vector<Point2> points) {
    const int n = static_cast<int>(points.size());
    MetricSpace space;
    space.n_ = n;
    space.dist_.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u) {
      if (!std::isfinite(points[u].x) || !std::isfinite(points[u].y)) {
        throw InvalidInstance("coordinate of point " + std::to_string(u) + " is not finite");
      }
    }
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        const double d = std::hypot(points[u].x - points[v].x, points[u].y - points[v].y);
        space.dist_[static_cast<std::size_t>(u) * n + v] = d;
        space.dist_[static_cast<std::size_t>(v) * n + u] = d;
      }
    }
    space.coords_ = std::move(points);
    return space;
  }

  int size() const { return n_; }

  double operator()(PointId u, PointId v) const {
    return dist_[static_cast<std::size_t>(u) * n_ + v];
  }

  const std::optional<std::vector<Point2>>& coords() const { return coords_; }

  std::vector<std::vector<double>> matrix() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) out[u][v] = (*this)(u, v);
    }
    return out;
  }

  bool valid_index(PointId u) const { return u >= 0 && u < n_; }

  void check_index(PointId u) const {
    if (!valid_index(u)) {
      throw InvalidInstance("point index " + std::to_string(u) + " out of range [0," +
                            std::to_string(n_) + ")");
    }
  }

  // Submetric on `keep` (in the given order); coordinates follow along.
  MetricSpace restricted(std::span<const PointId> keep) const {
    MetricSpace sub;
    sub.n_ = static_cast<int>(keep.size());
    sub.dist_.assign(static_cast<std::size_t>(sub.n_) * sub.n_, 0.0);
    for (int i = 0; i < sub.n_; ++i) {
      check_index(keep[i]);
      for (int j = 0; j < sub.n_; ++j) {
        sub.dist_[static_cast<std::size_t>(i) * sub.n_ + j] = (*this)(keep[i], keep[j]);
      }
    }
    if (coords_) {
      std::vector<Point2> pts;
      pts.reserve(keep.size());
      for (PointId u : keep) pts.push_back((*coords_)[u]);
      sub.coords_ = std::move(pts);
    }
    return sub;
  }

 private:
  void validate(double tol) const {
    for (int u = 0; u < n_; ++u) {
      if ((*this)(u, u) > tol) {
        throw InvalidInstance("nonzero self distance at point " + std::to_string(u));
      }
      for (int v = u + 1; v < n_; ++v) {
        if (std::abs((*this)(u, v) - (*this)(v, u)) > tol) {
          throw InvalidInstance("asymmetric distance between " + std::to_string(u) + " and " +
                                std::to_string(v));
        }
      }
    }
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        const double duv = (*this)(u, v);
        for (int w = 0; w < n_; ++w) {
          if ((*this)(u, w) > duv + (*this)(v, w) + tol) {
            throw InvalidInstance("triangle inequality violated for (" + std::to_string(u) + "," +
                                  std::to_string(v) + "," + std::to_string(w) + ")");
          }
        }
      }
    }
  }

  int n_ = 0;
  std::vector<double> dist_;
  std::optional<std::vector<Point2>> coords_;
};

// B(u, r) = { v : d(u, v) <= r }, sorted.
inline PointSet ball(const MetricSpace& metric, PointId u, double r) {
  metric.check_index(u);
  if (!(r >= 0.0)) throw InvalidInstance("ball radius must be nonnegative");
  PointSet out;
  for (PointId v = 0; v < metric.size(); ++v) {
    if (metric(u, v) <= r) out.push_back(v);
  }
  return out;
}

// d(v, S) = min over S; +inf for the empty set.
inline double distance_to_set(const MetricSpace& metric, PointId v, std::span<const PointId> set) {
  double best = std::numeric_limits<double>::infinity();
  for (PointId s : set) best = std::min(best, metric(v, s));
  return best;
}

inline PointSet normalized(PointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace nukc
