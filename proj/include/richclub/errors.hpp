#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace richclub {

/// Malformed edge-list input. Carries the 1-based line number (0 when the
/// problem is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Argument outside the domain of a formula (e.g. rich-club rank < 2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The weight recursion hit a zero or negative denominator at rank `m`
/// (1-based). The k+ configuration has no maximal-entropy solution.
class SingularWeights : public std::runtime_error {
 public:
  explicit SingularWeights(std::size_t m)
      : std::runtime_error("singular weight recursion at rank " + std::to_string(m)),
        rank_(m) {}

  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// No k+ sequence satisfies the requested bounds.
class InfeasibleConstraints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newman-Girvan null requested for a graph with k_max >= sqrt(2L).
class InfeasibleNG : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerics that did not reach tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& message, double residual)
      : std::runtime_error(message + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace richclub
