#include <doctest.h>

#include "steerlab/errors.hpp"
#include "steerlab/numkernel.hpp"
#include "steerlab/rng.hpp"
#include "support/oracles.hpp"

using namespace steerlab;
using namespace steerlab::testing;

TEST_CASE("hermitian_eig on known spectra") {
  const HermitianEig id = hermitian_eig(Mat::Identity(2, 2));
  CHECK(id.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(id.eigenvalues(1) == doctest::Approx(1.0));

  const HermitianEig x = hermitian_eig(pauli_x());
  CHECK(x.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(x.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstructs random Hermitian input") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    // Build M = V D V^* from a random unitary and a fixed diagonal, so the
    // expected spectrum is known independently of the solver.
    const Eigen::Index n = 6;
    const Mat v = rng.haar_unitary(n);
    RVec diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = -3.0 + static_cast<double>(i) + rng.uniform();
    const Mat m = v * diag.asDiagonal().toDenseMatrix().cast<Complex>() * v.adjoint();
    const HermitianEig eig = hermitian_eig(m);
    const Mat rebuilt = eig.eigenvectors *
                        eig.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                        eig.eigenvectors.adjoint();
    CHECK((rebuilt - m).norm() <= 1e-10 * (1.0 + m.norm()));
    CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - Mat::Identity(n, n)).norm() <= 1e-10);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
      CHECK(eig.eigenvalues(i) <= eig.eigenvalues(i + 1) + 1e-12);
  }
}

TEST_CASE("hermitian_eig rejects bad input") {
  Mat skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK_THROWS_AS(hermitian_eig(skew), NonHermitian);
  Mat bad = Mat::Identity(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hermitian_eig(bad), NonFinite);
  CHECK_THROWS_AS(hermitian_eig(Mat::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("psd_sqrt_pinv on diagonal cases") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 4.0;
  const PsdDecomposition dec = psd_sqrt_pinv(m);
  CHECK(dec.rank == 1);
  CHECK((dec.sqrt - (Mat(2, 2) << 2, 0, 0, 0).finished()).norm() <= 1e-12);
  CHECK((dec.pinv_sqrt - (Mat(2, 2) << 0.5, 0, 0, 0).finished()).norm() <= 1e-12);

  const PsdDecomposition id = psd_sqrt_pinv(Mat::Identity(3, 3));
  CHECK(id.rank == 3);
  CHECK((id.sqrt - Mat::Identity(3, 3)).norm() <= 1e-12);
}

TEST_CASE("psd_sqrt_pinv squares back on random PSD input") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat m = rng.random_psd(5, 5);
    const PsdDecomposition dec = psd_sqrt_pinv(m);
    CHECK((dec.sqrt * dec.sqrt - m).norm() <= 1e-9 * (1.0 + m.norm()));
    // pinv_sqrt * sqrt is the support projector.
    const Mat proj = dec.pinv_sqrt * dec.sqrt;
    CHECK((proj * proj - proj).norm() <= 1e-8);
    CHECK(dec.rank == 5);
  }
  Mat indefinite = Mat::Identity(2, 2);
  indefinite(1, 1) = -0.5;
  CHECK_THROWS_AS(psd_sqrt_pinv(indefinite), NotPsd);
}

TEST_CASE("kron matches the definition") {
  CHECK((kron(Mat::Identity(2, 2), Mat::Identity(2, 2)) - Mat::Identity(4, 4)).norm() == 0.0);

  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  Mat b = Mat::Zero(1, 1);
  b(0, 0) = 3.0;
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = 3.0;
  expected(1, 1) = 6.0;
  CHECK((kron(a, b) - expected).norm() == 0.0);

  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat p = rng.ginibre(3, 3);
    const Mat q = rng.ginibre(2, 2);
    CHECK((kron(p, q) - naive_kron(p, q)).norm() == 0.0);
    CHECK(std::abs((kron(p, q).trace() - p.trace() * q.trace())) <= 1e-12 * (1.0 + std::abs(p.trace() * q.trace())));
    const Mat r = rng.ginibre(2, 2);
    CHECK((kron(kron(p, q), r) - kron(p, kron(q, r))).norm() == 0.0);
  }
}

TEST_CASE("partial_trace_first on product and entangled states") {
  Rng rng(14);
  const Mat rho_a = random_density(3, rng);
  const Mat rho_b = random_density(2, rng);
  CHECK((partial_trace_first(kron(rho_a, rho_b), 3, 2) - rho_b).norm() <= 1e-12);

  // Maximally entangled state reduces to the maximally mixed state.
  Vec bell = Vec::Zero(4);
  bell(0) = M_SQRT1_2;
  bell(3) = M_SQRT1_2;
  CHECK((partial_trace_first(Mat(bell * bell.adjoint()), 2, 2) - 0.5 * Mat::Identity(2, 2)).norm() <=
        1e-12);

  CHECK((partial_trace_first(Mat::Identity(4, 4), 2, 2) - 2.0 * Mat::Identity(2, 2)).norm() <=
        1e-12);

  SUBCASE("linear and trace-preserving") {
    for (int trial = 0; trial < 10; ++trial) {
      const Mat m1 = rng.ginibre(6, 6);
      const Mat m2 = rng.ginibre(6, 6);
      const Complex c(rng.normal(), rng.normal());
      const Mat lhs = partial_trace_first(m1 + c * m2, 2, 3);
      const Mat rhs = partial_trace_first(m1, 2, 3) + c * partial_trace_first(m2, 2, 3);
      CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
      CHECK(std::abs(partial_trace_first(m1, 2, 3).trace() - m1.trace()) <= 1e-12);
      CHECK((partial_trace_first(m1, 2, 3) - naive_partial_trace_first(m1, 2, 3)).norm() == 0.0);
    }
  }

  CHECK_THROWS_AS(partial_trace_first(Mat::Identity(5, 5), 2, 2), DimensionMismatch);
}

TEST_CASE("operator_norm") {
  CHECK(operator_norm(Mat::Identity(4, 4)) == doctest::Approx(1.0));
  CHECK(operator_norm(pauli_z()) == doctest::Approx(1.0));

  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat h = rng.random_hermitian(5);
    const HermitianEig eig = hermitian_eig(h);
    const double expected =
        std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(4)));
    CHECK(operator_norm(h) == doctest::Approx(expected).epsilon(1e-12));

    const Mat g = rng.random_hermitian(5);
    CHECK(operator_norm(h * g) <= operator_norm(h) * operator_norm(g) + 1e-10);
    CHECK(operator_norm(h + g) <= operator_norm(h) + operator_norm(g) + 1e-10);
  }
}
