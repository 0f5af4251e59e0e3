#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bochner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: shapes, ranges, dimension mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Unknown names, bad parameters or flags.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A profile returned a non-finite value.
class EvaluationError : public ValidationError {
 public:
  EvaluationError(const std::string& what, double t) : ValidationError(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// Mathematical rejection of an otherwise well-formed input.
class Rejection : public Error {
 public:
  using Error::Error;
  virtual const char* kind() const = 0;
};

class NotPositiveDefinite : public Rejection {
 public:
  struct Details {
    double atom_zero = 0.0;
    double min_density = 0.0;
    double at_frequency = 0.0;
    double threshold = 0.0;
  };

  NotPositiveDefinite(const std::string& what, Details d) : Rejection(what), details_(d) {}
  const char* kind() const override { return "NotPositiveDefinite"; }
  const Details& details() const { return details_; }

 private:
  Details details_;
};

class UnboundedMetric : public Rejection {
 public:
  UnboundedMetric(double integral, double bound)
      : Rejection("metric has no bounded translation-invariant kernel"),
        integral_(integral),
        bound_(bound) {}
  const char* kind() const override { return "UnboundedMetric"; }
  double integral() const { return integral_; }
  double bound() const { return bound_; }

 private:
  double integral_;
  double bound_;
};

class NotHilbertian : public Rejection {
 public:
  NotHilbertian(double kernel_eigenvalue, double nd_eigenvalue, Eigen::VectorXd nd_witness)
      : Rejection("squared distances are not Hilbertian"),
        kernel_eigenvalue_(kernel_eigenvalue),
        nd_eigenvalue_(nd_eigenvalue),
        nd_witness_(std::move(nd_witness)) {}
  const char* kind() const override { return "NotHilbertian"; }

  /// Most negative eigenvalue of the base-point kernel matrix.
  double kernel_eigenvalue() const { return kernel_eigenvalue_; }
  /// Largest eigenvalue of the squared-distance form restricted to sum-zero vectors.
  double nd_eigenvalue() const { return nd_eigenvalue_; }
  const Eigen::VectorXd& nd_witness() const { return nd_witness_; }

 private:
  double kernel_eigenvalue_;
  double nd_eigenvalue_;
  Eigen::VectorXd nd_witness_;
};

}  // namespace bochner
