#include "bochner/gram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bochner/error.hpp"

namespace bochner {

namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
  if (!m.allFinite()) throw ValidationError(std::string(what) + " has non-finite entries");
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  const double asym = m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << what << " is not symmetric (max asymmetry " << asym << ")";
    throw ValidationError(msg.str());
  }
}

double max_abs_diagonal(const Eigen::MatrixXd& m) {
  return m.rows() == 0 ? 0.0 : m.diagonal().cwiseAbs().maxCoeff();
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolve(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigen-solver did not converge on a " << m.rows()
        << "x" << m.cols() << " matrix (max |entry| " << m.cwiseAbs().maxCoeff() << ")";
    throw NumericError(msg.str());
  }
  return solver;
}

// Orthonormal basis of the complement of the all-ones vector: the last n - 1
// columns of the Householder reflector that swaps e_1 and 1 / sqrt(n).
Eigen::MatrixXd sum_zero_basis(Eigen::Index n) {
  Eigen::VectorXd u = Eigen::VectorXd::Constant(n, -1.0 / std::sqrt(static_cast<double>(n)));
  u(0) += 1.0;
  const double norm = u.norm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  if (norm > 0.0) {
    u /= norm;
    h -= 2.0 * u * u.transpose();
  }
  return h.rightCols(n - 1);
}

}  // namespace

GramMatrix::GramMatrix(Eigen::MatrixXd entries, std::vector<double> points)
    : entries_(std::move(entries)), points_(std::move(points)) {
  require_symmetric(entries_, "Gram matrix");
  if (!points_.empty() && static_cast<Eigen::Index>(points_.size()) != entries_.rows()) {
    throw ValidationError("Gram matrix size does not match its point count");
  }
}

SymmetricKernelMatrix::SymmetricKernelMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  require_symmetric(entries_, "kernel matrix");
}

double quadratic_form(const Eigen::MatrixXd& m, const Eigen::VectorXd& c) {
  return c.dot(m * c);
}

GramMatrix build_gram(const KernelProfile& k, std::span<const double> points) {
  if (points.empty()) throw ValidationError("build_gram needs at least one point");
  for (double x : points) {
    if (!std::isfinite(x)) throw ValidationError("sample points must be finite");
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double t = points[i] - points[j];
      const double v = k(t);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "kernel '" << k.descriptor().name << "' is not finite at t = " << t;
        throw EvaluationError(msg.str(), t);
      }
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return GramMatrix(std::move(g), {points.begin(), points.end()});
}

DefinitenessVerdict is_positive_definite(const GramMatrix& g, double tol) {
  const auto& m = g.entries();
  const Eigen::Index n = m.rows();
  DefinitenessVerdict verdict;
  verdict.threshold = -tol * static_cast<double>(n) * max_abs_diagonal(m);
  if (n == 0) return verdict;

  const auto solver = eigensolve(m);
  verdict.witness_eigenvalue = solver.eigenvalues()(0);
  verdict.witness_vector = solver.eigenvectors().col(0);
  verdict.holds = verdict.witness_eigenvalue >= verdict.threshold;
  return verdict;
}

DefinitenessVerdict is_negative_definite(const SymmetricKernelMatrix& nd, double tol) {
  const auto& m = nd.entries();
  const Eigen::Index n = m.rows();
  DefinitenessVerdict verdict;
  const double scale = n == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  verdict.threshold = tol * static_cast<double>(n) * scale;
  if (n < 2) {
    verdict.witness_vector = Eigen::VectorXd::Zero(n);
    return verdict;
  }

  const Eigen::MatrixXd q = sum_zero_basis(n);
  const Eigen::MatrixXd restricted = q.transpose() * m * q;
  const auto solver = eigensolve(0.5 * (restricted + restricted.transpose()));
  const Eigen::Index top = n - 2;
  verdict.witness_eigenvalue = solver.eigenvalues()(top);
  verdict.witness_vector = q * solver.eigenvectors().col(top);
  verdict.holds = verdict.witness_eigenvalue <= verdict.threshold;
  return verdict;
}

GramMatrix nd_to_psd(const SymmetricKernelMatrix& nd, Eigen::Index base_index) {
  const auto& m = nd.entries();
  const Eigen::Index n = m.rows();
  if (base_index < 0 || base_index >= n) {
    std::ostringstream msg;
    msg << "base index " << base_index << " out of range for a " << n << "x" << n << " matrix";
    throw ValidationError(msg.str());
  }
  Eigen::MatrixXd k(n, n);
  const double nbb = m(base_index, base_index);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = 0.5 * (m(i, base_index) + m(j, base_index) - m(i, j) - nbb);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  // Row and column b vanish identically; enforce it for inputs symmetric only within tolerance.
  k.row(base_index).setZero();
  k.col(base_index).setZero();
  return GramMatrix(std::move(k));
}

EmbeddingResult euclidean_embedding(const SymmetricKernelMatrix& d2, double tol) {
  const auto& m = d2.entries();
  const Eigen::Index n = m.rows();
  if (n == 0) throw ValidationError("embedding needs at least one point");
  const double scale = m.cwiseAbs().maxCoeff();
  if (max_abs_diagonal(m) > 1e-12 * scale) {
    throw ValidationError("squared distances must have a zero diagonal");
  }
  if (m.minCoeff() < -1e-12 * scale) {
    throw ValidationError("squared distances must be non-negative");
  }

  const GramMatrix k = nd_to_psd(d2, 0);
  const double diag = max_abs_diagonal(k.entries());
  const auto solver = eigensolve(k.entries());
  const Eigen::VectorXd& lambda = solver.eigenvalues();

  if (lambda(0) < -tol * static_cast<double>(n) * diag) {
    const auto nd = is_negative_definite(d2, tol);
    throw NotHilbertian(lambda(0), nd.witness_eigenvalue, nd.witness_vector);
  }

  const double cutoff = tol * diag;
  EmbeddingResult result;
  for (Eigen::Index i = n - 1; i >= 0 && lambda(i) > cutoff; --i) ++result.rank;
  result.coordinates.resize(n, result.rank);
  for (Eigen::Index c = 0; c < result.rank; ++c) {
    const Eigen::Index i = n - 1 - c;
    result.coordinates.col(c) = solver.eigenvectors().col(i) * std::sqrt(lambda(i));
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double dist =
          (result.coordinates.row(i) - result.coordinates.row(j)).squaredNorm();
      result.residual = std::max(result.residual, std::abs(dist - m(i, j)));
    }
  }
  return result;
}

}  // namespace bochner
