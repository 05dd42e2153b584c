#pragma once

#include <vector>

#include "steerlab/assemblage.hpp"

namespace steerlab {

// GNS representation of a state sigma on the n x n matrix algebra, quotiented
// by the null space of the Gram matrix of matrix units and expressed in an
// orthonormal basis. gns_dim = n * rank(sigma).
//
// Coordinates: b = sum_{ij} c_{ij} E_{ij} is flattened row-major to c in
// C^{n^2}; left multiplication by b acts there as b (x) 1. `to_gns` maps those
// coordinates to the orthonormal quotient basis, `from_gns` is its right
// inverse with range orthogonal to the Gram kernel.
class GnsRep {
public:
  GnsRep(Mat sigma, Mat to_gns, Mat from_gns, Vec omega);

  Eigen::Index trusted_dim() const { return sigma_.rows(); }
  Eigen::Index gns_dim() const { return omega_.size(); }

  const Mat& sigma() const { return sigma_; }
  const Mat& basis_map() const { return to_gns_; }
  const Vec& omega() const { return omega_; }

  // pi(b): the represented left multiplication, gns_dim x gns_dim.
  Mat represent(const Mat& b) const;

  // Image of an algebra element's coordinate vector in the GNS space.
  Vec embed(const Mat& b) const;

  // Compression F^* W F of a sesquilinear-form matrix W on matrix-unit
  // coordinates, F being the whitening isometry (pseudo-inverse of
  // basis_map). Yields the operator representing the form when the form's
  // kernel contains the Gram kernel.
  Mat compress_form(const Mat& form) const;

private:
  Mat sigma_;
  Mat to_gns_;    // gns_dim x n^2
  Mat from_gns_;  // n^2 x gns_dim
  Vec omega_;
};

// Builds the GNS triple of the state b -> Tr(sigma b). Throws NotAState when
// sigma is not a PSD unit-trace Hermitian matrix.
GnsRep gns_construct(const Mat& sigma);

// The steering operators of the commutant construction: Hermitian PSD
// operators M_{a|x} on the GNS space with sum_a M_{a|x} = 1, commuting with
// pi(B), and satisfying sigma_{a|x}(b) = <Omega, pi(b) M_{a|x} Omega>.
// Indexed [setting][outcome]. Requires reduced_state(assemblage) to match the
// state the representation was built from.
std::vector<std::vector<Mat>> steering_operators(const GnsRep& rep,
                                                 const Assemblage& assemblage);

// max over matrix units E_ij of || [m, pi(E_ij)] || (operator norm).
double commutant_residual(const GnsRep& rep, const Mat& m);

// p(a b | x y) = <Omega, pi(N_{b|y}) M_{a|x} Omega>.
Behaviour behaviour_via_gns(const GnsRep& rep,
                            const std::vector<std::vector<Mat>>& steering_ops,
                            const std::vector<Povm>& trusted_povms);

}  // namespace steerlab
