#pragma once

#include <stdexcept>

namespace vrteh {

// Inputs that violate a documented precondition (degenerate arms, invalid
// moments, priors with no feasible mass, ...).
class domain_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File system and parsing failures.
class io_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vrteh
