#include "steerlab/numkernel.hpp"

#include <string>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

void require_finite(const Mat& m, const char* where) {
  if (!m.allFinite()) throw NonFinite(std::string(where) + ": non-finite entry");
}

void require_square(const Mat& m, const char* where) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(where) + ": matrix is " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()));
}

}  // namespace

HermitianEig hermitian_eig(const Mat& m) {
  require_square(m, "hermitian_eig");
  require_finite(m, "hermitian_eig");
  const double defect = (m - m.adjoint()).norm();
  if (defect > kHermTol * (1.0 + m.norm()))
    throw NonHermitian("hermitian_eig: ||M - M^*||_F = " + std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) throw NumericalBreakdown("hermitian_eig: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

PsdDecomposition psd_sqrt_pinv(const Mat& m, double rank_tol) {
  HermitianEig eig = hermitian_eig(m);
  const double lambda_max = std::max(0.0, eig.eigenvalues.maxCoeff());
  const double neg_band = kPsdNegTol * lambda_max;
  const double rank_cut = rank_tol * lambda_max;
  const Eigen::Index n = m.rows();
  Mat sqrt = Mat::Zero(n, n);
  Mat pinv = Mat::Zero(n, n);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda < -neg_band)
      throw NotPsd("psd_sqrt_pinv: eigenvalue " + std::to_string(lambda) + " below -" +
                   std::to_string(neg_band));
    if (lambda <= rank_cut) continue;  // clipped or below the rank cutoff
    ++rank;
    const Vec v = eig.eigenvectors.col(i);
    const double root = std::sqrt(lambda);
    sqrt += root * v * v.adjoint();
    pinv += (1.0 / root) * v * v.adjoint();
  }
  return {std::move(sqrt), std::move(pinv), rank};
}

Mat kron(const Mat& a, const Mat& b) {
  require_finite(a, "kron");
  require_finite(b, "kron");
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
  return out;
}

Mat partial_trace_first(const Mat& m, Eigen::Index dim_a, Eigen::Index dim_b) {
  require_square(m, "partial_trace_first");
  if (dim_a < 1 || dim_b < 1 || m.rows() != dim_a * dim_b)
    throw DimensionMismatch("partial_trace_first: matrix of size " + std::to_string(m.rows()) +
                            " does not factor as " + std::to_string(dim_a) + "*" +
                            std::to_string(dim_b));
  Mat out = Mat::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

double operator_norm(const Mat& m) {
  require_square(m, "operator_norm");
  require_finite(m, "operator_norm");
  const double scale = m.norm();
  if (scale == 0.0) return 0.0;
  if ((m - m.adjoint()).norm() <= kHermTol * (1.0 + scale)) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()),
                                              Eigen::EigenvaluesOnly);
    const RVec& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

}  // namespace steerlab
