#include "steerlab/assemblage.hpp"

#include <string>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

double hermiticity_defect(const Mat& m) { return (m - m.adjoint()).norm(); }

double negative_part(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double lambda_min = solver.eigenvalues().minCoeff();
  return std::max(0.0, -lambda_min);
}

}  // namespace

void check_scenario(const Scenario& s) {
  if (s.settings < 1 || s.outcomes < 1 || s.trusted_dim < 1)
    throw BadSetting("scenario: settings=" + std::to_string(s.settings) +
                     " outcomes=" + std::to_string(s.outcomes) +
                     " trusted_dim=" + std::to_string(s.trusted_dim));
}

Assemblage::Assemblage(Scenario scenario, std::vector<Mat> elements)
    : scenario_(scenario), elements_(std::move(elements)) {
  check_scenario(scenario_);
  const std::size_t expected =
      static_cast<std::size_t>(scenario_.settings) * static_cast<std::size_t>(scenario_.outcomes);
  if (elements_.size() != expected)
    throw DimensionMismatch("assemblage: expected " + std::to_string(expected) +
                            " elements, got " + std::to_string(elements_.size()));
  for (const Mat& m : elements_) {
    if (m.rows() != scenario_.trusted_dim || m.cols() != scenario_.trusted_dim)
      throw DimensionMismatch("assemblage: element is not trusted_dim x trusted_dim");
    if (!m.allFinite()) throw NonFinite("assemblage: non-finite element entry");
  }
}

const Mat& Assemblage::element(int outcome, int setting) const {
  if (outcome < 0 || outcome >= scenario_.outcomes || setting < 0 ||
      setting >= scenario_.settings)
    throw DimensionMismatch("assemblage: index (a=" + std::to_string(outcome) +
                            ", x=" + std::to_string(setting) + ") out of range");
  return elements_[static_cast<std::size_t>(setting) * scenario_.outcomes + outcome];
}

Mat& Assemblage::element(int outcome, int setting) {
  return const_cast<Mat&>(static_cast<const Assemblage&>(*this).element(outcome, setting));
}

Mat Assemblage::outcome_sum(int setting) const {
  Mat sum = Mat::Zero(scenario_.trusted_dim, scenario_.trusted_dim);
  for (int a = 0; a < scenario_.outcomes; ++a) sum += element(a, setting);
  return sum;
}

double povm_defect(const Povm& povm) {
  if (povm.effects.empty()) return 1.0;
  const Eigen::Index d = povm.dim();
  double worst = 0.0;
  Mat sum = Mat::Zero(d, d);
  for (const Mat& effect : povm.effects) {
    if (effect.rows() != d || effect.cols() != d)
      throw DimensionMismatch("povm: effects have mixed dimensions");
    worst = std::max(worst, hermiticity_defect(effect));
    worst = std::max(worst, negative_part(effect));
    sum += effect;
  }
  worst = std::max(worst, (sum - Mat::Identity(d, d)).norm());
  return worst;
}

void require_valid_povm(const Povm& povm, double tol) {
  const double defect = povm_defect(povm);
  if (defect > tol)
    throw InvalidPovm("povm: worst violation " + std::to_string(defect) + " exceeds " +
                      std::to_string(tol));
}

Povm random_povm(Eigen::Index dim, int outcomes, Rng& rng) {
  std::vector<Mat> raw;
  raw.reserve(static_cast<std::size_t>(outcomes));
  Mat sum = Mat::Zero(dim, dim);
  for (int a = 0; a < outcomes; ++a) {
    Mat e = rng.random_psd(dim, dim);
    sum += e;
    raw.push_back(std::move(e));
  }
  const Mat whiten = psd_sqrt_pinv(sum).pinv_sqrt;
  Povm povm;
  for (Mat& e : raw) {
    Mat effect = whiten * e * whiten;
    povm.effects.push_back(0.5 * (effect + effect.adjoint()));
  }
  return povm;
}

ValidationReport validate(const Assemblage& assemblage, double /*tol*/) {
  const Scenario& s = assemblage.scenario();
  ValidationReport report;
  for (int x = 0; x < s.settings; ++x)
    for (int a = 0; a < s.outcomes; ++a) {
      const Mat& sigma = assemblage.element(a, x);
      report.worst_psd_violation =
          std::max({report.worst_psd_violation, hermiticity_defect(sigma), negative_part(sigma)});
    }
  const Mat reference = assemblage.outcome_sum(0);
  for (int x = 1; x < s.settings; ++x)
    report.worst_ns_violation =
        std::max(report.worst_ns_violation, (assemblage.outcome_sum(x) - reference).norm());
  report.trace_defect = std::abs(reference.trace() - Complex(1.0, 0.0));
  return report;
}

Mat reduced_state(const Assemblage& assemblage) {
  const ValidationReport report = validate(assemblage);
  if (!report.passes(kDefaultValidationTol))
    throw InvalidAssemblage("reduced_state: assemblage fails validation (psd=" +
                            std::to_string(report.worst_psd_violation) + ", ns=" +
                            std::to_string(report.worst_ns_violation) + ", trace=" +
                            std::to_string(report.trace_defect) + ")");
  Mat sigma = assemblage.outcome_sum(0);
  return 0.5 * (sigma + sigma.adjoint());
}

Assemblage from_realization(const Mat& rho_ab, const std::vector<Povm>& povms, int trusted_dim) {
  if (povms.empty()) throw InvalidPovm("from_realization: no measurements given");
  const Eigen::Index untrusted_dim = povms.front().dim();
  const int outcomes = povms.front().outcome_count();
  for (const Povm& povm : povms) {
    if (povm.dim() != untrusted_dim || povm.outcome_count() != outcomes)
      throw InvalidPovm("from_realization: measurements disagree in shape");
    require_valid_povm(povm);
  }
  if (rho_ab.rows() != untrusted_dim * trusted_dim || rho_ab.cols() != rho_ab.rows())
    throw DimensionMismatch("from_realization: state dimension does not match povm x trusted");
  if (hermiticity_defect(rho_ab) > kDefaultValidationTol ||
      negative_part(rho_ab) > kDefaultValidationTol ||
      std::abs(rho_ab.trace() - Complex(1.0, 0.0)) > kDefaultValidationTol)
    throw InvalidState("from_realization: rho_ab is not a density matrix");

  const Mat id_trusted = Mat::Identity(trusted_dim, trusted_dim);
  std::vector<Mat> elements;
  elements.reserve(povms.size() * static_cast<std::size_t>(outcomes));
  for (const Povm& povm : povms)
    for (const Mat& effect : povm.effects) {
      Mat sigma = partial_trace_first(kron(effect, id_trusted) * rho_ab,
                                      untrusted_dim, trusted_dim);
      elements.push_back(0.5 * (sigma + sigma.adjoint()));
    }
  Scenario scenario{static_cast<int>(povms.size()), outcomes, trusted_dim};
  return Assemblage(scenario, std::move(elements));
}

Assemblage random_ns(const Scenario& scenario, std::uint64_t seed) {
  check_scenario(scenario);
  Rng rng(seed);
  const Eigen::Index n = scenario.trusted_dim;
  const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.uniform_index(
                                    static_cast<std::uint64_t>(n)));
  Mat barycenter = rng.random_psd(n, rank);
  barycenter /= barycenter.trace().real();
  barycenter = 0.5 * (barycenter + barycenter.adjoint());
  const Mat root = psd_sqrt_pinv(barycenter).sqrt;

  std::vector<Mat> elements;
  elements.reserve(static_cast<std::size_t>(scenario.settings) * scenario.outcomes);
  for (int x = 0; x < scenario.settings; ++x) {
    const Povm povm = random_povm(n, scenario.outcomes, rng);
    for (const Mat& effect : povm.effects) {
      Mat sigma = root * effect * root;
      elements.push_back(0.5 * (sigma + sigma.adjoint()));
    }
  }
  return Assemblage(scenario, std::move(elements));
}

Behaviour::Behaviour(int outcomes_a, int outcomes_b, int settings_a, int settings_b)
    : outcomes_a_(outcomes_a),
      outcomes_b_(outcomes_b),
      settings_a_(settings_a),
      settings_b_(settings_b),
      values_(static_cast<std::size_t>(outcomes_a) * outcomes_b * settings_a * settings_b, 0.0) {
  if (outcomes_a < 1 || outcomes_b < 1 || settings_a < 1 || settings_b < 1)
    throw DimensionMismatch("behaviour: empty scenario");
}

std::size_t Behaviour::index(int a, int b, int x, int y) const {
  if (a < 0 || a >= outcomes_a_ || b < 0 || b >= outcomes_b_ || x < 0 || x >= settings_a_ ||
      y < 0 || y >= settings_b_)
    throw DimensionMismatch("behaviour: index out of range");
  return ((static_cast<std::size_t>(a) * outcomes_b_ + b) * settings_a_ + x) * settings_b_ + y;
}

double& Behaviour::p(int a, int b, int x, int y) { return values_[index(a, b, x, y)]; }

double Behaviour::p(int a, int b, int x, int y) const { return values_[index(a, b, x, y)]; }

double Behaviour::worst_defect() const {
  double worst = 0.0;
  for (double v : values_) worst = std::max({worst, -v, v - 1.0});
  for (int x = 0; x < settings_a_; ++x)
    for (int y = 0; y < settings_b_; ++y) {
      double total = 0.0;
      for (int a = 0; a < outcomes_a_; ++a)
        for (int b = 0; b < outcomes_b_; ++b) total += p(a, b, x, y);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  // Marginal of B must not depend on x.
  for (int b = 0; b < outcomes_b_; ++b)
    for (int y = 0; y < settings_b_; ++y) {
      double reference = 0.0;
      for (int a = 0; a < outcomes_a_; ++a) reference += p(a, b, 0, y);
      for (int x = 1; x < settings_a_; ++x) {
        double marginal = 0.0;
        for (int a = 0; a < outcomes_a_; ++a) marginal += p(a, b, x, y);
        worst = std::max(worst, std::abs(marginal - reference));
      }
    }
  // Marginal of A must not depend on y.
  for (int a = 0; a < outcomes_a_; ++a)
    for (int x = 0; x < settings_a_; ++x) {
      double reference = 0.0;
      for (int b = 0; b < outcomes_b_; ++b) reference += p(a, b, x, 0);
      for (int y = 1; y < settings_b_; ++y) {
        double marginal = 0.0;
        for (int b = 0; b < outcomes_b_; ++b) marginal += p(a, b, x, y);
        worst = std::max(worst, std::abs(marginal - reference));
      }
    }
  return worst;
}

Behaviour behaviour_from(const Assemblage& assemblage, const std::vector<Povm>& trusted_povms) {
  const Scenario& s = assemblage.scenario();
  if (trusted_povms.empty()) throw InvalidPovm("behaviour_from: no trusted measurements");
  const int outcomes_b = trusted_povms.front().outcome_count();
  for (const Povm& povm : trusted_povms) {
    if (povm.dim() != s.trusted_dim)
      throw DimensionMismatch("behaviour_from: trusted povm dimension mismatch");
    if (povm.outcome_count() != outcomes_b)
      throw DimensionMismatch("behaviour_from: trusted povms disagree in outcome count");
    require_valid_povm(povm);
  }
  Behaviour behaviour(s.outcomes, outcomes_b, s.settings, static_cast<int>(trusted_povms.size()));
  for (int x = 0; x < s.settings; ++x)
    for (int a = 0; a < s.outcomes; ++a) {
      const Mat& sigma = assemblage.element(a, x);
      for (int y = 0; y < static_cast<int>(trusted_povms.size()); ++y)
        for (int b = 0; b < outcomes_b; ++b)
          behaviour.p(a, b, x, y) = (trusted_povms[y].effects[b] * sigma).trace().real();
    }
  return behaviour;
}

}  // namespace steerlab
