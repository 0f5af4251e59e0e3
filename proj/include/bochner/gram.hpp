#pragma once

// Finite-sample definiteness checks: Gram matrices, positive and negative
// definiteness verdicts with certifying witnesses, the negative-to-positive
// definite transform, and Euclidean embedding of squared distances.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bochner/profiles.hpp"

namespace bochner {

inline constexpr double kDefaultTolerance = 1e-10;

/// Dense symmetric matrix of kernel values K(x_i, x_j). `points` may be empty
/// for matrices that do not come from sample locations.
class GramMatrix {
 public:
  explicit GramMatrix(Eigen::MatrixXd entries, std::vector<double> points = {});

  const Eigen::MatrixXd& entries() const { return entries_; }
  const std::vector<double>& points() const { return points_; }
  Eigen::Index size() const { return entries_.rows(); }

 private:
  Eigen::MatrixXd entries_;
  std::vector<double> points_;
};

/// Dense symmetric matrix of candidate negative definite kernel values.
class SymmetricKernelMatrix {
 public:
  explicit SymmetricKernelMatrix(Eigen::MatrixXd entries);

  const Eigen::MatrixXd& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }

 private:
  Eigen::MatrixXd entries_;
};

struct DefinitenessVerdict {
  bool holds = true;
  /// Most violating eigenvalue: the minimum for PSD checks, the maximum of the
  /// sum-zero restricted form for ND checks.
  double witness_eigenvalue = 0.0;
  /// Unit eigenvector for witness_eigenvalue; orthogonal to the all-ones vector
  /// for ND checks.
  Eigen::VectorXd witness_vector;
  double threshold = 0.0;
};

struct EmbeddingResult {
  Eigen::MatrixXd coordinates;  // n x rank
  Eigen::Index rank = 0;
  double residual = 0.0;
};

GramMatrix build_gram(const KernelProfile& k, std::span<const double> points);

/// True iff the minimum eigenvalue is >= -tol * n * max|diag|.
DefinitenessVerdict is_positive_definite(const GramMatrix& g, double tol = kDefaultTolerance);

/// True iff c^T N c <= tol * n * max|N| for all unit c with c^T 1 = 0. The form
/// is diagonalized on an orthonormal basis of the sum-zero subspace.
DefinitenessVerdict is_negative_definite(const SymmetricKernelMatrix& n,
                                         double tol = kDefaultTolerance);

/// K(i, j) = (N(i, b) + N(j, b) - N(i, j) - N(b, b)) / 2.
GramMatrix nd_to_psd(const SymmetricKernelMatrix& n, Eigen::Index base_index);

/// Classical embedding of a squared-distance matrix through nd_to_psd at base 0.
/// Throws NotHilbertian when the base-point kernel has an eigenvalue below
/// -tol * n * max|diag|.
EmbeddingResult euclidean_embedding(const SymmetricKernelMatrix& d2,
                                    double tol = kDefaultTolerance);

/// Quadratic form c^T M c.
double quadratic_form(const Eigen::MatrixXd& m, const Eigen::VectorXd& c);

}  // namespace bochner
