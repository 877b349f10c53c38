#pragma once

#include <stdexcept>
#include <string>

namespace ktcy {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// invert_laplacian was handed a right-hand side that is not mean-free.
class NonZeroMeanInput : public Error {
 public:
  NonZeroMeanInput(double mean, double tol);
  double mean() const { return mean_; }

 private:
  double mean_;
};

/// The reduced metric has nu <= 0 somewhere.
class DegenerateMetric : public Error {
 public:
  explicit DegenerateMetric(double min_nu);
  double min_nu() const { return min_nu_; }

 private:
  double min_nu_;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class LineSearchFailed : public Error {
 public:
  using Error::Error;
};

class LinearSolveStagnated : public Error {
 public:
  using Error::Error;
};

class MaxItersExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed KTCY v1 / CSV input.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ktcy
