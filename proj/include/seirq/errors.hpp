#pragma once

#include <stdexcept>
#include <string>

namespace seirq {

// Input is structurally unusable: NaN or infinite fields.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parameters violate the admissibility conditions.
struct ParamError : std::domain_error {
  using std::domain_error::domain_error;
};

// A state or argument lies outside the operator's domain.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A reconstruction window cannot determine the susceptible coordinate.
struct DegenerateWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unusable search or scenario configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace seirq
