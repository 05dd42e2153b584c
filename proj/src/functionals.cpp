#include "steerlab/functionals.hpp"

#include <cmath>
#include <string>
#include <thread>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

// Partial trace over the second tensor factor.
Mat partial_trace_second(const Mat& m, Eigen::Index dim_a, Eigen::Index dim_b) {
  Mat out = Mat::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index k = 0; k < dim_a; ++k) {
      Complex sum = 0.0;
      for (Eigen::Index j = 0; j < dim_b; ++j) sum += m(i * dim_b + j, k * dim_b + j);
      out(i, k) = sum;
    }
  return out;
}

// Projector onto the nonnegative eigenspace minus projector onto the
// negative eigenspace; zero eigenvalues count as +1.
Mat sign_decomposition(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (hermitian + hermitian.adjoint()));
  Mat out = Mat::Zero(hermitian.rows(), hermitian.cols());
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double sign = solver.eigenvalues()(i) >= 0.0 ? 1.0 : -1.0;
    out += sign * solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
  }
  return out;
}

// Haar-like random +-1 observable: eigenbasis of a random Hermitian matrix
// with the eigenvalue signs kept.
Mat random_observable(Eigen::Index dim, Rng& rng) {
  return sign_decomposition(rng.random_hermitian(dim));
}

struct RestartOutcome {
  Vec psi;
  std::vector<Mat> a_obs;
  std::vector<Mat> b_obs;
  double value = 0.0;
  std::vector<double> sweep_values;
};

RestartOutcome run_restart(int settings, Eigen::Index dim_a, Eigen::Index dim_b,
                           std::uint64_t restart_seed) {
  Rng rng(restart_seed);
  RestartOutcome outcome;
  outcome.a_obs.reserve(static_cast<std::size_t>(settings));
  outcome.b_obs.reserve(static_cast<std::size_t>(settings));
  for (int x = 0; x < settings; ++x) {
    outcome.a_obs.push_back(random_observable(dim_a, rng));
    outcome.b_obs.push_back(random_observable(dim_b, rng));
  }

  const int max_sweeps = 400;
  double previous = -2.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Mat objective = Mat::Zero(dim_a * dim_b, dim_a * dim_b);
    for (int x = 0; x < settings; ++x)
      objective += kron(outcome.a_obs[x], outcome.b_obs[x]);
    objective /= static_cast<double>(settings);
    Eigen::SelfAdjointEigenSolver<Mat> solver(objective);
    outcome.psi = solver.eigenvectors().col(dim_a * dim_b - 1);

    const Mat projector = outcome.psi * outcome.psi.adjoint();
    for (int x = 0; x < settings; ++x) {
      const Mat effective_a =
          partial_trace_second(kron(Mat::Identity(dim_a, dim_a), outcome.b_obs[x]) * projector,
                               dim_a, dim_b);
      outcome.a_obs[x] = sign_decomposition(effective_a);
    }
    for (int x = 0; x < settings; ++x) {
      const Mat effective_b = partial_trace_first(
          kron(outcome.a_obs[x], Mat::Identity(dim_b, dim_b)) * projector, dim_a, dim_b);
      outcome.b_obs[x] = sign_decomposition(effective_b);
    }

    double value = 0.0;
    for (int x = 0; x < settings; ++x)
      value += (outcome.psi.adjoint() * kron(outcome.a_obs[x], outcome.b_obs[x]) *
                outcome.psi)(0, 0)
                   .real();
    value /= static_cast<double>(settings);
    outcome.sweep_values.push_back(value);
    outcome.value = value;
    if (value - previous < 1e-13 && sweep >= 2) break;
    previous = value;
  }
  return outcome;
}

}  // namespace

double evaluate(const SteeringFunctional& functional, const Assemblage& assemblage) {
  if (!(functional.scenario == assemblage.scenario()))
    throw ScenarioMismatch("evaluate: functional and assemblage scenarios differ");
  const Scenario& s = functional.scenario;
  if (functional.coeffs.size() !=
      static_cast<std::size_t>(s.settings) * static_cast<std::size_t>(s.outcomes))
    throw DimensionMismatch("evaluate: coefficient table has wrong size");
  Complex total = 0.0;
  for (int x = 0; x < s.settings; ++x)
    for (int a = 0; a < s.outcomes; ++a)
      total += (functional.coeff(a, x) * assemblage.element(a, x)).trace();
  return total.real();
}

double bell_I(const Behaviour& behaviour) {
  if (behaviour.outcomes_a() != 2 || behaviour.outcomes_b() != 2)
    throw WrongOutcomeCount("bell_I: requires two outcomes on each side");
  if (behaviour.settings_a() != behaviour.settings_b())
    throw DimensionMismatch("bell_I: requires matching setting counts");
  const int m = behaviour.settings_a();
  double total = 0.0;
  for (int x = 0; x < m; ++x)
    total += behaviour.p(0, 0, x, x) + behaviour.p(1, 1, x, x) - behaviour.p(0, 1, x, x) -
             behaviour.p(1, 0, x, x);
  return total / m;
}

double tensor_bound(int settings) {
  if (settings < 1) throw BadSetting("tensor_bound: settings must be >= 1");
  return 2.0 * std::sqrt(static_cast<double>(settings - 1)) / settings;
}

SeesawState seesaw(int settings, int dim_a, int dim_b, int restarts, std::uint64_t seed,
                   int jobs) {
  if (settings < 1) throw BadSetting("seesaw: settings must be >= 1");
  if (dim_a < 2 || dim_b < 2) throw BadSetting("seesaw: dimensions must be >= 2");
  if (restarts < 1) throw BadSetting("seesaw: restarts must be >= 1");

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  const auto worker = [&](int begin, int stride) {
    for (int r = begin; r < restarts; r += stride)
      outcomes[static_cast<std::size_t>(r)] =
          run_restart(settings, dim_a, dim_b, substream_seed(seed, static_cast<std::uint64_t>(r)));
  };
  const int thread_count = std::max(1, std::min(jobs, restarts));
  if (thread_count == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker, t, thread_count);
    for (std::thread& t : pool) t.join();
  }

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (outcomes[static_cast<std::size_t>(r)].value > outcomes[static_cast<std::size_t>(best)].value)
      best = r;

  SeesawState state;
  RestartOutcome& winner = outcomes[static_cast<std::size_t>(best)];
  state.psi = std::move(winner.psi);
  state.a_observables = std::move(winner.a_obs);
  state.b_observables = std::move(winner.b_obs);
  state.value = winner.value;
  state.best_restart = best;
  state.sweep_values.reserve(outcomes.size());
  for (auto& outcome : outcomes) state.sweep_values.push_back(std::move(outcome.sweep_values));
  return state;
}

}  // namespace steerlab
