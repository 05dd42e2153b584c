#pragma once

#include <vector>

#include "steerlab/assemblage.hpp"

namespace steerlab {

// Finite-dimensional quantum model of an assemblage: a joint pure state on
// C^{untrusted_dim} (x) C^{trusted_dim} plus one POVM per setting on the
// untrusted leg.
struct QuantumRealization {
  Mat rho_ab;                // (untrusted_dim * trusted_dim)^2 density matrix
  std::vector<Povm> povms;   // one per setting, acting on the untrusted leg
  int untrusted_dim = 0;
};

// Purification construction: untrusted_dim = rank of the reduced state, the
// joint state is the eigen-purification of sigma, and the POVM entries are
// <j| M_{a|x} |i> = <v_i| sigma^{-1/2} sigma_{a|x} sigma^{-1/2} |v_j>, i.e.
// the transpose taken in the sigma eigenbasis (see docs/conventions.md).
QuantumRealization gisin_realize(const Assemblage& assemblage);

// max_{a,x} || Tr_A( (M_{a|x} (x) 1) rho_ab ) - sigma_{a|x} ||_F
double verify_realization(const QuantumRealization& realization, const Assemblage& assemblage);

}  // namespace steerlab
