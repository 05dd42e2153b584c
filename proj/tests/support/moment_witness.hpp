#pragma once

// Constructive moment-matrix certificate, independent of the feasibility
// solver: a quantum realization is Naimark-dilated to genuine projective
// measurements on a common space, and the moment matrix is assembled from the
// dilated state and the word operators directly.

#include "steerlab/hierarchy.hpp"
#include "steerlab/realization.hpp"

namespace steerlab::testing {

// Moment matrix of the given problem's word set evaluated on the dilated
// realization. Satisfies every constraint of `problem` and is PSD whenever
// the realization reproduces the problem's assemblage data.
Mat witness_moment_matrix(const MomentProblem& problem, const QuantumRealization& realization);

}  // namespace steerlab::testing
