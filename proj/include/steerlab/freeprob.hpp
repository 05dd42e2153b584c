#pragma once

#include <cstdint>
#include <vector>

#include "steerlab/assemblage.hpp"

namespace steerlab {

// m independent Haar-rotated reflections on an even-dimensional space, each
// with an exactly balanced +-1 spectrum (so trace zero). Independent such
// families model free self-adjoint trace-zero unitaries at large dimension.
struct ReflectionFamily {
  int dim = 0;
  std::vector<Mat> unitaries;
};

ReflectionFamily random_reflections(int count, int dim, std::uint64_t seed);

// Two-outcome assemblage sigma_{a|x} = (1 + (-1)^{a+1} u_x) / (2 dim): the
// density-matrix form of the normalized-trace state filtered by each
// reflection. Its outcome sums are exactly 1/dim.
Assemblage reflection_assemblage(const ReflectionFamily& family);

// sum_x [ sigma_{1|x}(u_x) - sigma_{2|x}(u_x) ]. Equals the number of
// settings exactly, because each term is the normalized trace of u_x^2 = 1.
// Throws Mismatch when the assemblage was not built from `family`.
double reflection_alignment_sum(const Assemblage& assemblage, const ReflectionFamily& family);

struct NormStatistics {
  double mean = 0.0;
  double max = 0.0;
  double min = 0.0;
  std::vector<double> samples;  // one operator norm of sum_x u_x per trial
};

// Operator norms of sum_x u_x over independent random reflection families.
// For free families the limit is 2 sqrt(m-1); 2 sqrt(m) is a hard cap.
NormStatistics kesten_estimate(int count, int dim, int trials, std::uint64_t seed, int jobs = 1);

struct ContradictionReport {
  double alignment_value = 0.0;  // the exact value m
  double norm_estimate = 0.0;    // sampled || sum_x u_x ||
  double norm_cap = 0.0;         // 2 sqrt(m)
  double gap = 0.0;              // m - 2 sqrt(m), positive from m = 5 on
};

// Demonstrates that the exact alignment value m exceeds every norm
// achievable by free-looking reflections once m >= 5.
ContradictionReport contradiction_report(int count, int dim, std::uint64_t seed);

}  // namespace steerlab
