#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdmdirac {

/// Raised when a quantity that divides by m(x) is requested at a node where
/// the mass vanishes (or falls below the near-singularity guard).
class SingularNodeError : public std::runtime_error {
 public:
  SingularNodeError(const std::string& what, std::size_t node, double position)
      : std::runtime_error(what + " at node " + std::to_string(node) +
                           " (x = " + std::to_string(position) + ")"),
        node_(node),
        position_(position) {}

  std::size_t node() const noexcept { return node_; }
  double position() const noexcept { return position_; }

 private:
  std::size_t node_;
  double position_;
};

/// Adaptive integration failed; carries the abscissa where the step size
/// collapsed.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double location)
      : std::runtime_error(what + " near x = " + std::to_string(location)),
        location_(location) {}

  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Eigensolver failure; info carries the LAPACK diagnostic (number of
/// unconverged eigenvalues or illegal-argument index).
class EigenSolveError : public std::runtime_error {
 public:
  EigenSolveError(const std::string& what, long info)
      : std::runtime_error(what + " (info = " + std::to_string(info) + ")"),
        info_(info) {}

  long info() const noexcept { return info_; }

 private:
  long info_;
};

}  // namespace pdmdirac
