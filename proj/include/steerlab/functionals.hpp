#pragma once

#include <cstdint>
#include <vector>

#include "steerlab/assemblage.hpp"

namespace steerlab {

// Linear steering functional sum_{a,x} Tr( F_{a|x} sigma_{a|x} ) with
// Hermitian coefficient matrices.
struct SteeringFunctional {
  Scenario scenario;
  std::vector<Mat> coeffs;  // setting-major, like Assemblage storage

  const Mat& coeff(int outcome, int setting) const {
    return coeffs[static_cast<std::size_t>(setting) * scenario.outcomes + outcome];
  }
};

double evaluate(const SteeringFunctional& functional, const Assemblage& assemblage);

// Equal-settings correlation score of a two-outcome behaviour:
// (1/m) sum_x [ p(a=b|xx) - p(a!=b|xx) ]. The 1/m prefactor makes the
// m = 2 free-family bound below equal to the attainable value 1.
double bell_I(const Behaviour& behaviour);

// 2 sqrt(m-1) / m: the normalized operator-norm bound for a sum of m free
// self-adjoint unitaries. This is a property of infinite free families, not
// of finite-dimensional tensor models; see the seesaw notes.
double tensor_bound(int settings);

// One tensor-model strategy: a shared pure state and one +-1 observable per
// setting on each side.
struct SeesawState {
  Vec psi;                           // unit vector on C^{dim_a * dim_b}
  std::vector<Mat> a_observables;    // Hermitian unitaries on C^{dim_a}
  std::vector<Mat> b_observables;    // Hermitian unitaries on C^{dim_b}
  double value = 0.0;                // bell_I of the strategy
  std::vector<std::vector<double>> sweep_values;  // per restart, per sweep
  int best_restart = 0;
};

// Alternating maximization of bell_I over tensor-model strategies: the state
// moves to the top eigenvector of (1/m) sum_x A_x (x) B_x, each observable to
// the sign decomposition of its effective operator (ties toward +1). The
// value is nondecreasing across sweeps. Restarts are independent and
// deterministic in (seed, restart index); `jobs` only parallelizes them.
//
// Note: the unconstrained optimum of this functional is 1 for every m (both
// parties measuring identically on a maximally correlated state), so values
// above tensor_bound(m) are expected for m >= 3; the 2 sqrt(m-1)/m figure is
// specific to infinite free families on the trusted side.
SeesawState seesaw(int settings, int dim_a, int dim_b, int restarts, std::uint64_t seed,
                   int jobs = 1);

enum class LhvStatus { feasible, infeasible };

// Linear-program membership of a behaviour in the local polytope: existence
// of a convex combination of deterministic behaviours reproducing it, decided
// by a phase-1 simplex with Bland's rule at tolerance 1e-9.
LhvStatus lhv_membership(const Behaviour& behaviour);

}  // namespace steerlab
