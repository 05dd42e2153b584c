#include "steerlab/freeprob.hpp"

#include <cmath>
#include <string>
#include <thread>

#include "steerlab/errors.hpp"
#include "steerlab/rng.hpp"

namespace steerlab {

ReflectionFamily random_reflections(int count, int dim, std::uint64_t seed) {
  if (count < 1) throw BadSetting("random_reflections: need at least one reflection");
  if (dim < 2 || dim % 2 != 0)
    throw OddDimension("random_reflections: dimension must be even, got " + std::to_string(dim));
  Rng rng(seed);
  ReflectionFamily family;
  family.dim = dim;
  family.unitaries.reserve(static_cast<std::size_t>(count));
  Mat balanced = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) balanced(i, i) = (i < dim / 2) ? 1.0 : -1.0;
  for (int x = 0; x < count; ++x) {
    const Mat rotation = rng.haar_unitary(dim);
    Mat u = rotation * balanced * rotation.adjoint();
    family.unitaries.push_back(0.5 * (u + u.adjoint()));
  }
  return family;
}

Assemblage reflection_assemblage(const ReflectionFamily& family) {
  const int dim = family.dim;
  const Mat identity = Mat::Identity(dim, dim);
  std::vector<Mat> elements;
  elements.reserve(family.unitaries.size() * 2);
  for (const Mat& u : family.unitaries) {
    elements.push_back((identity + u) / (2.0 * dim));
    elements.push_back((identity - u) / (2.0 * dim));
  }
  Scenario scenario{static_cast<int>(family.unitaries.size()), 2, dim};
  return Assemblage(scenario, std::move(elements));
}

double reflection_alignment_sum(const Assemblage& assemblage, const ReflectionFamily& family) {
  const Scenario& s = assemblage.scenario();
  if (s.outcomes != 2 || s.trusted_dim != family.dim ||
      s.settings != static_cast<int>(family.unitaries.size()))
    throw Mismatch("reflection_alignment_sum: assemblage does not match the family");
  const int dim = family.dim;
  const Mat identity = Mat::Identity(dim, dim);
  double total = 0.0;
  for (int x = 0; x < s.settings; ++x) {
    const Mat& u = family.unitaries[static_cast<std::size_t>(x)];
    const double defect =
        std::max((assemblage.element(0, x) - (identity + u) / (2.0 * dim)).norm(),
                 (assemblage.element(1, x) - (identity - u) / (2.0 * dim)).norm());
    if (defect > 1e-10)
      throw Mismatch("reflection_alignment_sum: element deviates by " + std::to_string(defect));
    const Mat difference = assemblage.element(0, x) - assemblage.element(1, x);
    total += (difference * u).trace().real();
  }
  return total;
}

NormStatistics kesten_estimate(int count, int dim, int trials, std::uint64_t seed, int jobs) {
  if (trials < 1) throw BadSetting("kesten_estimate: need at least one trial");
  if (dim < 2 || dim % 2 != 0) throw OddDimension("kesten_estimate: dimension must be even");
  NormStatistics stats;
  stats.samples.assign(static_cast<std::size_t>(trials), 0.0);
  const auto worker = [&](int begin, int stride) {
    for (int t = begin; t < trials; t += stride) {
      const ReflectionFamily family =
          random_reflections(count, dim, substream_seed(seed, static_cast<std::uint64_t>(t)));
      Mat sum = Mat::Zero(dim, dim);
      for (const Mat& u : family.unitaries) sum += u;
      stats.samples[static_cast<std::size_t>(t)] = operator_norm(sum);
    }
  };
  const int thread_count = std::max(1, std::min(jobs, trials));
  if (thread_count == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker, t, thread_count);
    for (std::thread& t : pool) t.join();
  }
  stats.min = stats.samples.front();
  stats.max = stats.samples.front();
  double total = 0.0;
  for (double v : stats.samples) {
    stats.min = std::min(stats.min, v);
    stats.max = std::max(stats.max, v);
    total += v;
  }
  stats.mean = total / trials;
  return stats;
}

ContradictionReport contradiction_report(int count, int dim, std::uint64_t seed) {
  const ReflectionFamily family = random_reflections(count, dim, seed);
  const Assemblage assemblage = reflection_assemblage(family);
  ContradictionReport report;
  report.alignment_value = reflection_alignment_sum(assemblage, family);
  Mat sum = Mat::Zero(dim, dim);
  for (const Mat& u : family.unitaries) sum += u;
  report.norm_estimate = operator_norm(sum);
  report.norm_cap = 2.0 * std::sqrt(static_cast<double>(count));
  report.gap = count - report.norm_cap;
  return report;
}

}  // namespace steerlab
