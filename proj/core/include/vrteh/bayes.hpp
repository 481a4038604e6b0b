#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vrteh/solver.hpp"

namespace vrteh {

// Prior belief about the unobservable correlation rho. Support must lie
// within [-1, 1]; discrete weights must be positive (they are normalized
// internally) and a uniform prior needs a < b.
struct RhoPrior {
  enum class Kind { point, uniform, discrete };

  Kind kind = Kind::point;
  double value = 0.0;  // point
  double a = -1.0;     // uniform lower edge
  double b = 1.0;      // uniform upper edge
  std::vector<std::pair<double, double>> atoms;  // discrete (rho, weight)

  static RhoPrior point_mass(double rho);
  static RhoPrior uniform(double a, double b);
  static RhoPrior discrete(std::vector<std::pair<double, double>> atoms);
};

// How to weight the two roots inside the dual region.
enum class BranchPolicy { equal_weight, min_only, max_only };

// What to do with prior mass that is incompatible with the observed nu.
// Both policies drop the infeasible mass and renormalize; a prior whose
// entire mass is infeasible is an error in either case, since no posterior
// exists. The enumeration keeps the choice explicit at call sites and in
// serialized results.
enum class InfeasiblePolicy { reject, error_if_all };

const char* to_string(BranchPolicy p);
const char* to_string(InfeasiblePolicy p);

struct PosteriorSample {
  double sigma_delta;
  double rho;
  Branch branch;
  double weight;  // normalized, retained weights sum to 1
};

struct SigmaDeltaPosterior {
  std::vector<PosteriorSample> samples;
  double infeasible_mass = 0.0;  // prior mass dropped as infeasible
  BranchPolicy branch_policy = BranchPolicy::equal_weight;
  InfeasiblePolicy infeasible_policy = InfeasiblePolicy::reject;
};

// Pushes the prior on rho through solve_sigma_delta into a weighted
// posterior over sigma_delta (with the generating rho and branch retained
// in every sample).
//
// Point and discrete priors are propagated by exact enumeration of their
// atoms, so their posteriors and infeasible mass carry no Monte Carlo
// error and n_samples is ignored. A uniform prior is sampled by the
// inverse-CDF transform: draw j of chunk c comes from
// RandomStream(seed).substream(c), with a fixed chunk size of 8192 draws,
// so the posterior is a pure function of (inputs, seed) no matter how
// chunks would be scheduled.
//
// Samples appear in draw order; a dual draw under equal_weight contributes
// its minus root immediately followed by its plus root, each at half the
// draw's weight.
//
// Throws domain_error when every bit of prior mass is infeasible for the
// given nu.
SigmaDeltaPosterior propagate(double nu, double sigma_tau,
                              const RhoPrior& prior, std::int64_t n_samples,
                              std::uint64_t seed,
                              BranchPolicy branch_policy =
                                  BranchPolicy::equal_weight,
                              InfeasiblePolicy infeasible_policy =
                                  InfeasiblePolicy::reject);

struct PosteriorSummary {
  double mean = 0.0;
  double sd = 0.0;
  std::vector<std::pair<double, double>> quantiles;  // (level, value)
  double prob_zero = 0.0;  // weight carried by samples at exactly 0
  double infeasible_mass = 0.0;
  std::size_t n_samples = 0;
};

// Weighted posterior summary. Quantiles use the lower-interpolation rule:
// the reported value is the smallest sample whose cumulative weight reaches
// the requested level. Cumulative comparisons carry a 1e-9 slack so that a
// level landing exactly on a cumulative-weight boundary resolves to the
// lower sample instead of depending on summation rounding.
PosteriorSummary summarize(const SigmaDeltaPosterior& post,
                           std::span<const double> quantiles);

}  // namespace vrteh
