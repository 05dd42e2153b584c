#pragma once

#include <string>
#include <vector>

#include "steerlab/assemblage.hpp"
#include "steerlab/freeword.hpp"

namespace steerlab {

// One shared block variable of the moment matrix: all ordered word pairs
// (w, w') whose normal form w^{-1} w' equals the representative or its
// inverse. Positions with the inverse orientation store the adjoint of the
// class value.
struct MomentClass {
  struct Position {
    int row_word;
    int col_word;
    bool conjugated;
  };

  FreeWord rep;        // min(g, g^{-1}) in the word order
  bool self_paired;    // rep equals its own inverse; value forced Hermitian
  bool pinned;         // value fixed by the assemblage data
  Mat pin_value;       // set when pinned
  std::vector<Position> positions;
};

// Moment-matrix relaxation of commuting-model membership at a word-length
// truncation. The matrix is indexed by (word, trusted index) with n x n
// blocks Gamma_{w,w'} whose (i,j) entry represents phi(w^* w' (x) E_ij).
// Under that convention the (e,e) block is pinned to the transpose of the
// barycenter and the unitary-power blocks (e, u_x^j) to the discrete Fourier
// combinations of the assemblage data.
struct MomentProblem {
  Scenario scenario;
  int level = 0;
  int block_dim = 0;                 // trusted dimension n
  std::vector<FreeWord> words;
  std::vector<MomentClass> classes;
  std::vector<Mat> data;             // hermitized sigma_{a|x}, setting-major
  // Residual norm of the pin equations themselves; zero for no-signaling
  // data, positive when the outcome sums depend on the setting.
  double data_inconsistency = 0.0;

  Eigen::Index matrix_dim() const {
    return static_cast<Eigen::Index>(words.size()) * block_dim;
  }

  const Mat& sigma(int outcome, int setting) const {
    return data[static_cast<std::size_t>(setting) * scenario.outcomes + outcome];
  }

  // Largest violation of the affine constraints (block sharing plus data
  // pins) by a candidate moment matrix.
  double constraint_defect(const Mat& gamma) const;
};

// Builds words, block classes, and pins for the given truncation level
// (>= 1). With require_valid the assemblage must pass validation; the
// unchecked path exists to diagnose no-signaling violations, which surface
// as data_inconsistency > 0.
MomentProblem build_moment_problem(const Assemblage& assemblage, int level,
                                   bool require_valid = true);

struct FeasibilityResult {
  enum class Status { feasible, undetermined };
  Status status = Status::undetermined;
  double residual = 0.0;
  int iterations = 0;
};

// Alternating projections between the PSD cone (eigenvalue clipping) and the
// pinned block-sharing subspace (least-squares projection), with Dykstra
// corrections. The reported residual combines the Frobenius distance from
// the affine iterate to the PSD cone with the pin-equation inconsistency, so
// contradictory data plateaus instead of drifting feasible.
FeasibilityResult dykstra_feasibility(const MomentProblem& problem, int max_iters = 20000,
                                      double tol = 1e-7);

// Sparse SDPA (.dat-s) export of the feasibility problem over the real
// symmetric embedding [[X, -Y], [Y, X]] of the complex moment matrix.
// Deterministic, byte-identical output for identical input.
void export_sdpa(const MomentProblem& problem, const std::string& path);

}  // namespace steerlab
