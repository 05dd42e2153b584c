#include "support/moment_witness.hpp"

#include <cmath>
#include <vector>

#include "steerlab/errors.hpp"

namespace steerlab::testing {

namespace {

// One dilation round: the POVM `effects` on the current space H becomes a
// projective measurement on H (x) C^k, with the original space embedded as
// h -> h (x) e_0. Returns the projections; previously built operators are
// lifted by the caller as T (x) 1.
std::vector<Mat> naimark_round(const std::vector<Mat>& effects) {
  const Eigen::Index dim = effects.front().rows();
  const int k = static_cast<int>(effects.size());
  const Eigen::Index big = dim * k;

  // Isometry V = sum_a sqrt(M_a) (x) |a>.
  Mat isometry = Mat::Zero(big, dim);
  for (int a = 0; a < k; ++a) {
    const Mat root = psd_sqrt_pinv(effects[static_cast<std::size_t>(a)]).sqrt;
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) isometry(i * k + a, j) = root(i, j);
  }

  // Orthonormal completion of V via the tail columns of a Householder Q.
  Eigen::HouseholderQR<Mat> qr(isometry);
  const Mat full_q = qr.householderQ();
  Mat unitary_q(big, big);
  unitary_q.leftCols(dim) = isometry;
  unitary_q.rightCols(big - dim) = full_q.rightCols(big - dim);
  // Re-orthogonalize the tail against V (the Householder basis spans the same
  // range but is not V itself).
  for (Eigen::Index c = dim; c < big; ++c) {
    Vec col = unitary_q.col(c);
    col -= isometry * (isometry.adjoint() * col);
    for (Eigen::Index prev = dim; prev < c; ++prev) {
      const Vec prev_col = unitary_q.col(prev);
      col -= prev_col * (prev_col.adjoint() * col)(0, 0);
    }
    unitary_q.col(c) = col / col.norm();
  }

  // Permutation E whose first dim columns are e_{q k} (the embedding), the
  // rest the remaining basis vectors in order.
  Mat embed_basis = Mat::Zero(big, big);
  Eigen::Index next = dim;
  for (Eigen::Index q = 0; q < dim; ++q) embed_basis(q * k, q) = 1.0;
  for (Eigen::Index r = 0; r < big; ++r)
    if (r % k != 0) embed_basis(r, next++) = 1.0;

  const Mat rotate = embed_basis * unitary_q.adjoint();  // maps V h to h (x) e_0

  std::vector<Mat> projections;
  projections.reserve(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    Mat slot = Mat::Zero(big, big);
    for (Eigen::Index i = 0; i < dim; ++i) slot(i * k + a, i * k + a) = 1.0;
    Mat p = rotate * slot * rotate.adjoint();
    projections.push_back(0.5 * (p + p.adjoint()));
  }
  return projections;
}

}  // namespace

Mat witness_moment_matrix(const MomentProblem& problem, const QuantumRealization& realization) {
  const int settings = problem.scenario.settings;
  const int outcomes = problem.scenario.outcomes;
  const Eigen::Index trusted = problem.block_dim;

  // Dilate setting by setting; already-dilated projections and untouched
  // POVMs are lifted as T (x) 1 each round.
  std::vector<std::vector<Mat>> operators;
  operators.reserve(static_cast<std::size_t>(settings));
  for (const Povm& povm : realization.povms) operators.push_back(povm.effects);

  for (int x = 0; x < settings; ++x) {
    const std::vector<Mat> projections = naimark_round(operators[static_cast<std::size_t>(x)]);
    const Eigen::Index k = outcomes;
    for (int y = 0; y < settings; ++y) {
      if (y == x) {
        operators[static_cast<std::size_t>(y)] = projections;
        continue;
      }
      for (Mat& op : operators[static_cast<std::size_t>(y)]) op = kron(op, Mat::Identity(k, k));
    }
  }
  const Eigen::Index dilated_dim = operators.front().front().rows();

  // Lift the joint state along the embedding chain h -> h (x) e_0 on the
  // untrusted leg.
  Mat embed = Mat::Identity(realization.untrusted_dim, realization.untrusted_dim);
  for (int x = 0; x < settings; ++x) {
    Vec e0 = Vec::Zero(outcomes);
    e0(0) = 1.0;
    embed = kron(embed, e0).eval();
  }
  const Mat lift = kron(embed, Mat::Identity(trusted, trusted));
  const Mat state = lift * realization.rho_ab * lift.adjoint();

  // Unitary generators u_x = sum_a omega^a P_{a|x} and word operators.
  const Complex omega = std::polar(1.0, 2.0 * M_PI / outcomes);
  std::vector<Mat> generators;
  generators.reserve(static_cast<std::size_t>(settings));
  for (int x = 0; x < settings; ++x) {
    Mat u = Mat::Zero(dilated_dim, dilated_dim);
    for (int a = 0; a < outcomes; ++a)
      u += std::pow(omega, a) * operators[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
    generators.push_back(std::move(u));
  }
  std::vector<Mat> word_ops;
  word_ops.reserve(problem.words.size());
  for (const FreeWord& word : problem.words) {
    Mat op = Mat::Identity(dilated_dim, dilated_dim);
    for (const auto& letter : word.letters()) {
      Mat power = Mat::Identity(dilated_dim, dilated_dim);
      for (int j = 0; j < letter.power; ++j)
        power = power * generators[static_cast<std::size_t>(letter.setting)];
      op = op * power;
    }
    word_ops.push_back(std::move(op));
  }

  const Eigen::Index word_count = static_cast<Eigen::Index>(problem.words.size());
  Mat gamma = Mat::Zero(word_count * trusted, word_count * trusted);
  for (Eigen::Index i = 0; i < word_count; ++i)
    for (Eigen::Index j = 0; j < word_count; ++j) {
      const Mat op = word_ops[static_cast<std::size_t>(i)].adjoint() *
                     word_ops[static_cast<std::size_t>(j)];
      const Mat reduced = partial_trace_first(kron(op, Mat::Identity(trusted, trusted)) * state,
                                              dilated_dim, trusted);
      gamma.block(i * trusted, j * trusted, trusted, trusted) = reduced.transpose();
    }
  return 0.5 * (gamma + gamma.adjoint());
}

}  // namespace steerlab::testing
