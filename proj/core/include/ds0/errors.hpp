#pragma once

#include <stdexcept>
#include <string>

namespace ds0 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated precondition of an operation (wrong theory kind, cyclic
// substitution, missing growth model, ...).
struct ContractError : Error {
  using Error::Error;
};

// Work refused because it would exceed the configured memory/size budget.
struct ResourceError : Error {
  using Error::Error;
};

// A quadrature ray points into a growing Stokes sector, or an integral's
// tail fails to decay.
struct DivergenceError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ds0
