#pragma once

#include <stdexcept>
#include <string>

namespace gtnl {

// Post-selection on an event of (numerically) zero probability.
struct NullOutcome : std::runtime_error {
  explicit NullOutcome(const std::string& what) : std::runtime_error(what) {}
};

// A closed form whose denominator vanishes at the requested parameters.
struct DegenerateOutcome : std::runtime_error {
  explicit DegenerateOutcome(const std::string& what) : std::runtime_error(what) {}
};

// A matrix handed to an X-state routine has entries off the two diagonals.
struct NotXState : std::runtime_error {
  explicit NotXState(const std::string& what) : std::runtime_error(what) {}
};

// A facet references a correlator monomial absent from the table.
struct MissingMonomial : std::runtime_error {
  explicit MissingMonomial(const std::string& what) : std::runtime_error(what) {}
};

// Malformed facet file or scan config.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Two facet records carry the same nonzero id.
struct DuplicateId : std::runtime_error {
  explicit DuplicateId(const std::string& what) : std::runtime_error(what) {}
};

// Bisection endpoints do not bracket a bound crossing.
struct BracketError : std::runtime_error {
  explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gtnl
