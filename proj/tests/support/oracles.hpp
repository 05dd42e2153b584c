#pragma once

// Test-side reference implementations and shared fixtures. Everything here is
// independent of the library code paths it is used to check: tensor products
// and partial traces are plain index loops, fixtures are hand-built matrices.

#include <vector>

#include "steerlab/assemblage.hpp"
#include "steerlab/rng.hpp"

namespace steerlab::testing {

inline Mat naive_kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + j, k * b.cols() + l) = a(i, k) * b(j, l);
  return out;
}

inline Mat naive_partial_trace_first(const Mat& m, Eigen::Index dim_a, Eigen::Index dim_b) {
  Mat out = Mat::Zero(dim_b, dim_b);
  for (Eigen::Index j = 0; j < dim_b; ++j)
    for (Eigen::Index l = 0; l < dim_b; ++l)
      for (Eigen::Index i = 0; i < dim_a; ++i)
        out(j, l) += m(i * dim_b + j, i * dim_b + l);
  return out;
}

inline Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Mat pauli_y() {
  Mat m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// Two-outcome projective measurement of a +-1 observable, outcome 0 mapped
// to the +1 eigenprojector.
inline Povm observable_povm(const Mat& observable) {
  const Mat id = Mat::Identity(observable.rows(), observable.cols());
  return Povm{{0.5 * (id + observable), 0.5 * (id - observable)}};
}

// The singlet (|01> - |10>) / sqrt(2) as a 4x4 density matrix.
inline Mat singlet_state() {
  Vec psi = Vec::Zero(4);
  psi(1) = M_SQRT1_2;
  psi(2) = -M_SQRT1_2;
  return psi * psi.adjoint();
}

// Singlet steered by Pauli Z and X measurements on the untrusted side.
inline Assemblage singlet_assemblage() {
  return from_realization(singlet_state(), {observable_povm(pauli_z()), observable_povm(pauli_x())},
                          2);
}

inline std::vector<Povm> pauli_trusted_povms() {
  return {observable_povm(pauli_z()), observable_povm(pauli_x())};
}

// Random density matrix of full rank.
inline Mat random_density(Eigen::Index dim, Rng& rng) {
  Mat rho = rng.random_psd(dim, dim);
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace steerlab::testing
