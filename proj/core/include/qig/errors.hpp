#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qig {

/// Base class for all qig errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: shape mismatches, broken invariants,
/// out-of-range parameters. Carries the offending field path when known.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& msg, std::string field_path = {})
      : Error(field_path.empty() ? msg : msg + " (at " + field_path + ")"),
        field_path_(std::move(field_path)) {}

  const std::string& field_path() const noexcept { return field_path_; }

private:
  std::string field_path_;
};

/// Input outside the mathematical domain of an operation, e.g. log of a
/// singular matrix or a non-faithful base state. Carries the eigenvalue
/// that violated the domain guard.
class DomainError : public Error {
public:
  DomainError(const std::string& msg, double offending_eigenvalue)
      : Error(msg), offending_eigenvalue_(offending_eigenvalue) {}

  double offending_eigenvalue() const noexcept { return offending_eigenvalue_; }

private:
  double offending_eigenvalue_;
};

/// An iterative solver hit its iteration cap before reaching tolerance.
/// Carries the best value reached and the final gradient norm.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& msg, double best_value,
                   double gradient_norm, long iterations)
      : Error(msg), best_value_(best_value), gradient_norm_(gradient_norm),
        iterations_(iterations) {}

  double best_value() const noexcept { return best_value_; }
  double gradient_norm() const noexcept { return gradient_norm_; }
  long iterations() const noexcept { return iterations_; }

private:
  double best_value_;
  double gradient_norm_;
  long iterations_;
};

}  // namespace qig
