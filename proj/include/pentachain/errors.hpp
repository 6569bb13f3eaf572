#pragma once

#include <stdexcept>
#include <string>

namespace pentachain {

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// The Laplacian system could not be solved (disconnected graph or a residual
/// above tolerance).
class SingularLaplacian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two engines produced different values for the same realization.
class EngineDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pentachain
