#pragma once

#include <stdexcept>
#include <string>

namespace nukc {

// Malformed metric, instance, or solution input.
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller or an oracle broke a documented contract (e.g. a cut that is not
// violated at the queried point, or a solution over budget).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A branch that the approximation argument proves unreachable was reached.
// Carries a full dump of the offending state in what().
class TheoryViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The ellipsoid shape matrix lost positive-definiteness.
class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration refused because the instance is too large.
class SizeGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nukc
