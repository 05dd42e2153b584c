#pragma once

#include <complex>

#include <Eigen/Dense>

namespace steerlab {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Default tolerances shared across the library.
inline constexpr double kHermTol = 1e-10;          // relative Hermiticity slack
inline constexpr double kPsdNegTol = 1e-10;        // relative negative-eigenvalue band
inline constexpr double kDefaultRankTol = 1e-12;   // relative rank cutoff
inline constexpr double kDefaultValidationTol = 1e-9;

struct HermitianEig {
  RVec eigenvalues;   // ascending
  Mat eigenvectors;   // unitary, columns match eigenvalues
};

struct PsdDecomposition {
  Mat sqrt;
  Mat pinv_sqrt;       // inverse square root on the support, zero on the kernel
  Eigen::Index rank;
};

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
// Throws NonHermitian / NonFinite / DimensionMismatch.
HermitianEig hermitian_eig(const Mat& m);

// Square root and pseudo-inverse square root of a PSD matrix. Eigenvalues in
// [-kPsdNegTol * lambda_max, 0) are clipped to zero; anything below that band
// throws NotPsd. rank counts eigenvalues above rank_tol * lambda_max.
PsdDecomposition psd_sqrt_pinv(const Mat& m, double rank_tol = kDefaultRankTol);

// Kronecker product, (A (x) B)[(i,j),(k,l)] = A(i,k) B(j,l).
Mat kron(const Mat& a, const Mat& b);

// Trace over the first tensor factor of a (dim_a*dim_b) square matrix,
// returning the dim_b x dim_b remainder. Trace-preserving.
Mat partial_trace_first(const Mat& m, Eigen::Index dim_a, Eigen::Index dim_b);

// Largest singular value (= max |eigenvalue| for Hermitian input).
double operator_norm(const Mat& m);

}  // namespace steerlab
