#pragma once

#include <stdexcept>
#include <string>

namespace nachman {

// Invalid caller-supplied argument (out-of-range order, point outside the
// disc, malformed phantom).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation at a point where the quantity is undefined (e.g. the
// logarithmic singularity of the Faddeev kernel).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative or direct solve failed. Carries the last residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Requested discretization cannot represent the requested data.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedPhantomError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nachman
