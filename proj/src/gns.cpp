#include "steerlab/gns.hpp"

#include <string>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

// Row-major flattening of an n x n matrix.
Vec vectorize(const Mat& m) {
  const Eigen::Index n = m.rows();
  Vec out(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i * n + j) = m(i, j);
  return out;
}

}  // namespace

GnsRep::GnsRep(Mat sigma, Mat to_gns, Mat from_gns, Vec omega)
    : sigma_(std::move(sigma)),
      to_gns_(std::move(to_gns)),
      from_gns_(std::move(from_gns)),
      omega_(std::move(omega)) {}

Mat GnsRep::represent(const Mat& b) const {
  const Eigen::Index n = trusted_dim();
  if (b.rows() != n || b.cols() != n)
    throw DimensionMismatch("gns represent: operand is not trusted_dim x trusted_dim");
  return to_gns_ * kron(b, Mat::Identity(n, n)) * from_gns_;
}

Vec GnsRep::embed(const Mat& b) const {
  const Eigen::Index n = trusted_dim();
  if (b.rows() != n || b.cols() != n)
    throw DimensionMismatch("gns embed: operand is not trusted_dim x trusted_dim");
  return to_gns_ * vectorize(b);
}

Mat GnsRep::compress_form(const Mat& form) const {
  const Eigen::Index n = trusted_dim();
  if (form.rows() != n * n || form.cols() != n * n)
    throw DimensionMismatch("gns compress_form: form is not n^2 x n^2");
  return from_gns_.adjoint() * form * from_gns_;
}

GnsRep gns_construct(const Mat& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1)
    throw NotAState("gns_construct: state matrix must be square");
  const Eigen::Index n = sigma.rows();
  if ((sigma - sigma.adjoint()).norm() > kDefaultValidationTol * (1.0 + sigma.norm()))
    throw NotAState("gns_construct: state matrix is not Hermitian");
  if (std::abs(sigma.trace() - Complex(1.0, 0.0)) > kDefaultValidationTol)
    throw NotAState("gns_construct: state matrix does not have unit trace");
  {
    Eigen::SelfAdjointEigenSolver<Mat> probe(0.5 * (sigma + sigma.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (probe.eigenvalues().minCoeff() < -kDefaultValidationTol)
      throw NotAState("gns_construct: state matrix is not PSD");
  }

  // Gram matrix of the matrix units under <b, c> = Tr(sigma b^* c); with the
  // row-major flattening it equals 1 (x) sigma^T.
  const Mat hermitized = 0.5 * (sigma + sigma.adjoint());
  const Mat gram = kron(Mat::Identity(n, n), hermitized.transpose());
  HermitianEig eig = hermitian_eig(gram);
  const double lambda_max = std::max(0.0, eig.eigenvalues.maxCoeff());
  const double cutoff = kDefaultRankTol * lambda_max;

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > cutoff) kept.push_back(i);
  const Eigen::Index dim = static_cast<Eigen::Index>(kept.size());
  if (dim == 0) throw NotAState("gns_construct: state matrix is zero");

  Mat to_gns(dim, n * n);
  Mat from_gns(n * n, dim);
  for (Eigen::Index slot = 0; slot < dim; ++slot) {
    const double root = std::sqrt(eig.eigenvalues(kept[slot]));
    to_gns.row(slot) = root * eig.eigenvectors.col(kept[slot]).adjoint();
    from_gns.col(slot) = (1.0 / root) * eig.eigenvectors.col(kept[slot]);
  }
  Vec omega = to_gns * vectorize(Mat::Identity(n, n));
  return GnsRep(hermitized, std::move(to_gns), std::move(from_gns), std::move(omega));
}

std::vector<std::vector<Mat>> steering_operators(const GnsRep& rep,
                                                 const Assemblage& assemblage) {
  const Scenario& s = assemblage.scenario();
  if (s.trusted_dim != rep.trusted_dim())
    throw DimensionMismatch("steering_operators: trusted dimension mismatch");
  const Mat reduced = reduced_state(assemblage);
  if ((reduced - rep.sigma()).norm() > kDefaultValidationTol)
    throw StateMismatch("steering_operators: assemblage barycenter differs from the GNS state");

  const Eigen::Index n = s.trusted_dim;
  // The sesquilinear form of sigma_{a|x} on matrix-unit coordinates is
  // 1 (x) sigma_{a|x}^T; compressing it by the whitening isometry yields the
  // commutant operator.
  std::vector<std::vector<Mat>> operators(static_cast<std::size_t>(s.settings));
  for (int x = 0; x < s.settings; ++x) {
    operators[x].reserve(static_cast<std::size_t>(s.outcomes));
    for (int a = 0; a < s.outcomes; ++a) {
      const Mat& sigma_ax = assemblage.element(a, x);
      const Mat form = kron(Mat::Identity(n, n),
                            (0.5 * (sigma_ax + sigma_ax.adjoint())).transpose());
      Mat op = rep.compress_form(form);
      op = 0.5 * (op + op.adjoint());
      HermitianEig eig = hermitian_eig(op);
      Mat repaired = Mat::Zero(op.rows(), op.cols());
      for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        double lambda = eig.eigenvalues(i);
        if (lambda < -1e-8)
          throw NumericalBreakdown("steering_operators: PSD repair of " +
                                   std::to_string(lambda) + " exceeds 1e-8");
        if (lambda < 0.0) lambda = 0.0;
        repaired += lambda * eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
      }
      operators[x].push_back(std::move(repaired));
    }
  }
  return operators;
}

double commutant_residual(const GnsRep& rep, const Mat& m) {
  if (m.rows() != rep.gns_dim() || m.cols() != rep.gns_dim())
    throw DimensionMismatch("commutant_residual: operator is not gns_dim x gns_dim");
  const Eigen::Index n = rep.trusted_dim();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Mat unit = Mat::Zero(n, n);
      unit(i, j) = 1.0;
      const Mat represented = rep.represent(unit);
      worst = std::max(worst, operator_norm(m * represented - represented * m));
    }
  return worst;
}

Behaviour behaviour_via_gns(const GnsRep& rep,
                            const std::vector<std::vector<Mat>>& steering_ops,
                            const std::vector<Povm>& trusted_povms) {
  if (steering_ops.empty() || steering_ops.front().empty())
    throw DimensionMismatch("behaviour_via_gns: no steering operators");
  if (trusted_povms.empty()) throw DimensionMismatch("behaviour_via_gns: no trusted povms");
  const int settings_a = static_cast<int>(steering_ops.size());
  const int outcomes_a = static_cast<int>(steering_ops.front().size());
  const int settings_b = static_cast<int>(trusted_povms.size());
  const int outcomes_b = trusted_povms.front().outcome_count();
  for (const auto& per_setting : steering_ops)
    if (static_cast<int>(per_setting.size()) != outcomes_a)
      throw DimensionMismatch("behaviour_via_gns: ragged steering operator table");
  for (const Povm& povm : trusted_povms)
    if (povm.dim() != rep.trusted_dim() || povm.outcome_count() != outcomes_b)
      throw DimensionMismatch("behaviour_via_gns: trusted povm shape mismatch");

  Behaviour behaviour(outcomes_a, outcomes_b, settings_a, settings_b);
  const Vec& omega = rep.omega();
  for (int y = 0; y < settings_b; ++y)
    for (int b = 0; b < outcomes_b; ++b) {
      const Mat represented = rep.represent(trusted_povms[y].effects[b]);
      for (int x = 0; x < settings_a; ++x)
        for (int a = 0; a < outcomes_a; ++a) {
          const Complex value =
              (omega.adjoint() * represented * steering_ops[x][a] * omega)(0, 0);
          behaviour.p(a, b, x, y) = value.real();
        }
    }
  return behaviour;
}

}  // namespace steerlab
