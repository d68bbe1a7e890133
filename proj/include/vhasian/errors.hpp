#pragma once

#include <stdexcept>
#include <string>

namespace vhasian {

/// Base for failures of a numerical scheme on otherwise valid input.
/// Invalid input is reported with std::invalid_argument / std::domain_error.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quadrature or series did not reach its requested accuracy.
class AccuracyError : public NumericError {
 public:
  AccuracyError(const std::string& what, double achieved_error)
      : NumericError(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// A time-stepping scheme produced a non-finite value.
class DivergenceError : public NumericError {
 public:
  DivergenceError(const std::string& what, std::size_t node)
      : NumericError(what), node_(node) {}

  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

/// A computed quantity broke an invariant the exact solution satisfies.
class InvariantError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace vhasian
