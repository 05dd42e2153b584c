#pragma once

#include <cstdint>
#include <vector>

#include "steerlab/numkernel.hpp"
#include "steerlab/rng.hpp"

namespace steerlab {

// Measurement scenario: `settings` choices for the untrusted party,
// `outcomes` results each, trusted side modeled on `trusted_dim` x
// `trusted_dim` complex matrices. A single-outcome scenario (outcomes = 1)
// is permitted as the degenerate case.
struct Scenario {
  int settings = 0;
  int outcomes = 0;
  int trusted_dim = 0;

  bool operator==(const Scenario&) const = default;
};

void check_scenario(const Scenario& s);

// Collection of subnormalized conditional states sigma_{a|x} on the trusted
// side. Outcomes and settings are 1-based at the I/O boundary and 0-based
// here.
class Assemblage {
public:
  Assemblage(Scenario scenario, std::vector<Mat> elements);

  const Scenario& scenario() const { return scenario_; }

  // 0-based accessors.
  const Mat& element(int outcome, int setting) const;
  Mat& element(int outcome, int setting);

  // Sum of all outcomes for one setting.
  Mat outcome_sum(int setting) const;

private:
  Scenario scenario_;
  std::vector<Mat> elements_;  // indexed setting * outcomes + outcome
};

struct Povm {
  std::vector<Mat> effects;

  int outcome_count() const { return static_cast<int>(effects.size()); }
  Eigen::Index dim() const { return effects.empty() ? 0 : effects.front().rows(); }
};

// Worst constraint violation of a POVM: Hermiticity / positivity of each
// effect and completeness of the sum.
double povm_defect(const Povm& povm);
void require_valid_povm(const Povm& povm, double tol = kDefaultValidationTol);

// Haar-like random POVM with `outcomes` effects on dimension `dim`:
// Ginibre-square effects renormalized by the inverse square root of their sum.
Povm random_povm(Eigen::Index dim, int outcomes, Rng& rng);

struct ValidationReport {
  double worst_psd_violation = 0.0;  // max over elements of Hermiticity defect / negative part
  double worst_ns_violation = 0.0;   // max_x || sum_a sigma_{a|x} - sum_a sigma_{a|1} ||_F
  double trace_defect = 0.0;         // | Tr sum_a sigma_{a|1} - 1 |

  bool passes(double tol) const {
    return worst_psd_violation <= tol && worst_ns_violation <= tol && trace_defect <= tol;
  }
};

// Checks positivity of every element, setting-independence of the outcome
// sums, and unit trace of the reduced state.
ValidationReport validate(const Assemblage& assemblage, double tol = kDefaultValidationTol);

// The common outcome sum (computed from the first setting). Throws
// InvalidAssemblage when validation fails.
Mat reduced_state(const Assemblage& assemblage);

// Conditional states produced by measuring `povms` on the first leg of
// rho_ab, trusted side of dimension trusted_dim on the second leg.
Assemblage from_realization(const Mat& rho_ab, const std::vector<Povm>& povms, int trusted_dim);

// Random no-signaling assemblage: sigma_{a|x} = sqrt(sigma) E_{a|x} sqrt(sigma)
// with a random POVM {E_{a|x}}_a per setting and a random barycenter sigma
// whose rank is drawn uniformly in 1..trusted_dim. Deterministic in the seed.
Assemblage random_ns(const Scenario& scenario, std::uint64_t seed);

// Joint conditional probabilities p(a b | x y), stored densely.
class Behaviour {
public:
  Behaviour(int outcomes_a, int outcomes_b, int settings_a, int settings_b);

  int outcomes_a() const { return outcomes_a_; }
  int outcomes_b() const { return outcomes_b_; }
  int settings_a() const { return settings_a_; }
  int settings_b() const { return settings_b_; }

  double& p(int a, int b, int x, int y);
  double p(int a, int b, int x, int y) const;

  // Largest violation among: range [0,1], normalization per (x,y), and the
  // two no-signaling marginal conditions.
  double worst_defect() const;

private:
  std::size_t index(int a, int b, int x, int y) const;

  int outcomes_a_, outcomes_b_, settings_a_, settings_b_;
  std::vector<double> values_;
};

// p(a b | x y) = Tr( N_{b|y} sigma_{a|x} ) for trusted POVMs {N_{b|y}}.
Behaviour behaviour_from(const Assemblage& assemblage, const std::vector<Povm>& trusted_povms);

}  // namespace steerlab
