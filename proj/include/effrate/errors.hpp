#pragma once

#include <stdexcept>
#include <string>

namespace effrate {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Argument sits on a pole (e.g. log-gamma at a non-positive integer).
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

/// No vertical Mellin-Barnes contour separates the two pole families.
class ContourError : public DomainError {
 public:
  explicit ContourError(const std::string& what) : DomainError(what) {}
};

/// An iterative procedure (quadrature, Newton, truncation) hit its cap.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace effrate
