#include "steerlab/realization.hpp"

#include <string>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

// Deterministic phase convention: first component of magnitude above the
// cutoff is made real positive.
void fix_column_phases(Mat& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const Complex v = vectors(i, j);
      const double a = std::abs(v);
      if (a > 1e-12) {
        vectors.col(j) *= std::conj(v) / a;
        break;
      }
    }
  }
}

Mat clip_negative_eigenvalues(const Mat& m, double band) {
  HermitianEig eig = hermitian_eig(0.5 * (m + m.adjoint()));
  Mat out = Mat::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda < 0.0 && lambda >= -band) lambda = 0.0;
    out += lambda * eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
  }
  return out;
}

}  // namespace

QuantumRealization gisin_realize(const Assemblage& assemblage) {
  const ValidationReport report = validate(assemblage);
  if (!report.passes(kDefaultValidationTol))
    throw InvalidAssemblage("gisin_realize: input fails validation");

  const Scenario& s = assemblage.scenario();
  const Eigen::Index n = s.trusted_dim;
  Mat sigma = assemblage.outcome_sum(0);
  sigma = 0.5 * (sigma + sigma.adjoint());

  HermitianEig eig = hermitian_eig(sigma);
  fix_column_phases(eig.eigenvectors);
  const double lambda_max = std::max(0.0, eig.eigenvalues.maxCoeff());
  const double cutoff = kDefaultRankTol * lambda_max;

  // Kept eigenpairs in ascending order; their slot index is the untrusted
  // basis label.
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < n; ++i)
    if (eig.eigenvalues(i) > cutoff) kept.push_back(i);
  const Eigen::Index rank = static_cast<Eigen::Index>(kept.size());
  if (rank == 0) throw InvalidAssemblage("gisin_realize: reduced state is zero");

  Mat pinv_root = Mat::Zero(n, n);
  Mat support = Mat::Zero(n, n);
  for (Eigen::Index slot = 0; slot < rank; ++slot) {
    const Vec v = eig.eigenvectors.col(kept[slot]);
    pinv_root += (1.0 / std::sqrt(eig.eigenvalues(kept[slot]))) * v * v.adjoint();
    support += v * v.adjoint();
  }

  Vec purification = Vec::Zero(rank * n);
  for (Eigen::Index slot = 0; slot < rank; ++slot) {
    const double weight = std::sqrt(eig.eigenvalues(kept[slot]));
    purification.segment(slot * n, n) = weight * eig.eigenvectors.col(kept[slot]);
  }

  QuantumRealization realization;
  realization.untrusted_dim = static_cast<int>(rank);
  realization.rho_ab = purification * purification.adjoint();

  for (int x = 0; x < s.settings; ++x) {
    Povm povm;
    for (int a = 0; a < s.outcomes; ++a) {
      const Mat& element = assemblage.element(a, x);
      const double leak = (element - support * element * support).norm();
      if (leak > 1e-8)
        throw SupportViolation("gisin_realize: sigma_{a|x} has weight " + std::to_string(leak) +
                               " outside supp(sigma)");
      const Mat filtered = pinv_root * element * pinv_root;
      Mat effect(rank, rank);
      for (Eigen::Index i = 0; i < rank; ++i)
        for (Eigen::Index j = 0; j < rank; ++j) {
          const Vec vi = eig.eigenvectors.col(kept[i]);
          const Vec vj = eig.eigenvectors.col(kept[j]);
          effect(j, i) = (vi.adjoint() * filtered * vj)(0, 0);
        }
      effect = clip_negative_eigenvalues(0.5 * (effect + effect.adjoint()), kPsdNegTol);
      povm.effects.push_back(std::move(effect));
    }
    realization.povms.push_back(std::move(povm));
  }
  return realization;
}

double verify_realization(const QuantumRealization& realization, const Assemblage& assemblage) {
  const Scenario& s = assemblage.scenario();
  const Eigen::Index da = realization.untrusted_dim;
  const Eigen::Index n = s.trusted_dim;
  if (realization.rho_ab.rows() != da * n || realization.rho_ab.cols() != da * n)
    throw DimensionMismatch("verify_realization: joint state has wrong size");
  if (static_cast<int>(realization.povms.size()) != s.settings)
    throw DimensionMismatch("verify_realization: setting count mismatch");
  const Mat id_trusted = Mat::Identity(n, n);
  double worst = 0.0;
  for (int x = 0; x < s.settings; ++x) {
    const Povm& povm = realization.povms[x];
    if (povm.outcome_count() != s.outcomes || povm.dim() != da)
      throw DimensionMismatch("verify_realization: povm shape mismatch");
    for (int a = 0; a < s.outcomes; ++a) {
      const Mat reproduced = partial_trace_first(
          kron(povm.effects[a], id_trusted) * realization.rho_ab, da, n);
      worst = std::max(worst, (reproduced - assemblage.element(a, x)).norm());
    }
  }
  return worst;
}

}  // namespace steerlab
