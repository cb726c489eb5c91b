#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "nukc/errors.hpp"

namespace nukc {

// E = { x : (x - c)^T A^{-1} (x - c) <= 1 }.
struct EllipsoidState {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;
  long iteration = 0;
  double log_det = 0.0;  // tracked in closed form across updates

  int dim() const { return static_cast<int>(center.size()); }
};

// Ball of radius sqrt(dim)/2 around (1/2, ..., 1/2), the smallest one that
// contains [0,1]^dim.
inline EllipsoidState initial_ellipsoid(int dim) {
  EllipsoidState s;
  s.center = Eigen::VectorXd::Constant(dim, 0.5);
  const double r2 = dim / 4.0;
  s.shape = Eigen::MatrixXd::Identity(dim, dim) * r2;
  s.log_det = dim * std::log(r2);
  return s;
}

// det(A') / det(A) for a central cut in dimension d. At d = 1 the general
// expression is 0/0 and cancels to d^2/(d+1)^2.
inline double central_cut_volume_ratio(int d) {
  if (d == 1) return 0.25;
  const double dd = static_cast<double>(d);
  return std::exp(dd * std::log(dd * dd / (dd * dd - 1.0)) + std::log((dd - 1.0) / (dd + 1.0)));
}

// In-place central cut keeping { x : a^T x <= a^T c }.
inline void apply_central_cut(EllipsoidState& s, const Eigen::VectorXd& a) {
  const int d = s.dim();
  const Eigen::VectorXd Aa = s.shape * a;
  const double aAa = a.dot(Aa);
  if (!(aAa > 0.0) || !std::isfinite(aAa)) {
    std::ostringstream msg;
    msg << "ellipsoid breakdown at iteration " << s.iteration << ": a^T A a = " << aAa
        << " (dim " << d << ", |a| = " << a.norm() << ")";
    throw NumericalBreakdown(msg.str());
  }
  const Eigen::VectorXd b = Aa / std::sqrt(aAa);
  const double dd = static_cast<double>(d);
  s.center -= b / (dd + 1.0);
  if (d == 1) {
    s.shape *= 0.25;
  } else {
    s.shape.noalias() -= (2.0 / (dd + 1.0)) * (b * b.transpose());
    s.shape *= dd * dd / (dd * dd - 1.0);
    s.shape = 0.5 * (s.shape + s.shape.transpose()).eval();
  }
  s.log_det += std::log(central_cut_volume_ratio(d));
  ++s.iteration;
}

inline EllipsoidState ellipsoid_update(const EllipsoidState& state, const Eigen::VectorXd& a) {
  EllipsoidState next = state;
  apply_central_cut(next, a);
  return next;
}

inline bool is_positive_definite(const Eigen::MatrixXd& A) {
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  return llt.info() == Eigen::Success;
}

// Halfspace a^T x <= b returned by a separation oracle.
struct HalfSpace {
  Eigen::VectorXd a;
  double b = 0.0;
};

template <class Payload>
struct Rounded {
  Payload payload;
};

template <class Payload>
using Verdict = std::variant<Rounded<Payload>, HalfSpace>;

struct EllipsoidConfig {
  std::optional<long> max_iters;  // default: default_max_iters(dim)
  double eps = 1e-9;              // minimum violation a returned cut must have
  bool record_trace = false;
  long pd_check_period = 0;       // 0: every dim iterations
  // Gives up early once the half-width of E along a cut normal drops below
  // this: E then contains no ball of that radius. 0 disables the test.
  double min_width = 0.0;
};

// ceil(2 d (d+1) ln(d * 1e4)): shrinks the volume by (d * 1e4)^-d.
inline long default_max_iters(int dim) {
  const double d = static_cast<double>(dim);
  return static_cast<long>(std::ceil(2.0 * d * (d + 1.0) * std::log(d * 1e4)));
}

template <class Payload>
struct RoundOrCutOutcome {
  bool rounded = false;
  std::optional<Payload> payload;
  long iterations = 0;                // oracle queries answered with a cut
  std::vector<HalfSpace> trace;       // filled when record_trace is set
  bool too_thin = false;              // stopped by min_width rather than the cap
};

// Central-cut ellipsoid loop. Queries the center; stops at the first ROUND
// verdict, otherwise cuts. Gives up (infeasible) after max_iters cuts, or
// earlier when min_width is set and E has become too thin.
template <class Payload, class Oracle>
RoundOrCutOutcome<Payload> run_round_or_cut(int dim, Oracle&& oracle,
                                            const EllipsoidConfig& config = {}) {
  if (dim <= 0) throw InvalidInstance("ellipsoid dimension must be positive");
  const long cap = config.max_iters.value_or(default_max_iters(dim));
  const long pd_period = config.pd_check_period > 0 ? config.pd_check_period : dim;
  RoundOrCutOutcome<Payload> out;
  EllipsoidState state = initial_ellipsoid(dim);
  while (true) {
    if (!state.center.allFinite()) {
      throw NumericalBreakdown("ellipsoid center is not finite at iteration " +
                               std::to_string(state.iteration));
    }
    Verdict<Payload> verdict = oracle(static_cast<const Eigen::VectorXd&>(state.center));
    if (auto* r = std::get_if<Rounded<Payload>>(&verdict)) {
      out.rounded = true;
      out.payload = std::move(r->payload);
      out.iterations = state.iteration;
      return out;
    }
    auto& cut = std::get<HalfSpace>(verdict);
    if (cut.a.size() != dim) throw ContractViolation("oracle returned a cut of wrong dimension");
    const double violation = cut.a.dot(state.center) - cut.b;
    if (!(violation > config.eps)) {
      std::ostringstream msg;
      msg << "oracle returned a cut that is not violated at the query (violation " << violation
          << " at iteration " << state.iteration << ")";
      throw ContractViolation(msg.str());
    }
    if (config.record_trace) out.trace.push_back(cut);
    if (state.iteration >= cap) {
      out.iterations = state.iteration;
      return out;
    }
    if (config.min_width > 0.0) {
      const double aAa = cut.a.dot(state.shape * cut.a);
      if (!(aAa > 0.0) || std::sqrt(aAa) < config.min_width * cut.a.norm()) {
        out.iterations = state.iteration;
        out.too_thin = true;
        return out;
      }
    }
    apply_central_cut(state, cut.a);
    if (state.iteration % pd_period == 0 && !is_positive_definite(state.shape)) {
      throw NumericalBreakdown("ellipsoid shape lost positive-definiteness at iteration " +
                               std::to_string(state.iteration));
    }
  }
}

}  // namespace nukc
