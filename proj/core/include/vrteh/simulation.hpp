#pragma once

#include <cstdint>
#include <vector>

#include "vrteh/rng.hpp"

namespace vrteh {

// Synthetic two-arm trial on the response scale: per unit, (tau, delta) is
// jointly normal with SDs (sigma_tau, sigma_delta) and correlation rho, the
// control response is y0 = tau and the treated response is y1 = tau + delta.
// Treatment is assigned by complete randomization of exactly n_treated
// units.
//
// Denominator conventions are intentionally asymmetric by default: the
// observed arm SDs always use n - 1, while the oracle SD of delta is taken
// over the whole population with denominator n - sd_delta_denominator_offset
// (0 by default). The offset is exposed so the n - 1 convention can be
// selected for the oracle quantity as well.
struct ToyModelConfig {
  double rho = -0.5;
  double mu_tau = 0.0;
  double sigma_tau = 1.0;   // >= 0
  double mu_delta = 0.0;
  double sigma_delta = 1.0; // >= 0
  std::int64_t n_units = 10000;
  std::int64_t n_treated = 5000;  // 0 < n_treated < n_units
  std::uint64_t seed = 1;
  int sd_delta_denominator_offset = 0;  // 0 or 1
};

// Throws domain_error on invalid moments, unit counts, or offset. With the
// default configuration sigma_delta is deliberately nonzero even though the
// implied variability ratio is exactly 1: a ratio of 1 is compatible with
// both sigma_delta = 0 and sigma_delta = 2 |rho| sigma_tau, and the default
// realizes the nonzero member.
void validate(const ToyModelConfig& cfg);

// Both potential outcomes of every unit in one drawn population.
struct PotentialOutcomes {
  std::vector<double> y0;
  std::vector<double> y1;
};

// Draws n_units pairs from the configured bivariate normal via the
// lower-triangular square root of the covariance matrix:
//   tau   = mu_tau   + sigma_tau * z1
//   delta = mu_delta + sigma_delta * (rho * z1 + sqrt((1-rho)(1+rho)) * z2)
// The factor sqrt((1-rho)(1+rho)) is exactly zero at |rho| = 1 and the
// sigma_delta = 0 case yields y1 - y0 = mu_delta exactly. Every unit
// consumes exactly two normal deviates, in unit order, regardless of
// degeneracies, so the stream position after the call depends only on
// n_units.
PotentialOutcomes draw_potential_outcomes(const ToyModelConfig& cfg,
                                          RandomStream& stream);

// Mask with exactly n_treated entries set, uniform over all subsets of that
// size. Implemented as a partial Fisher-Yates shuffle: the first n_treated
// positions of an index array are filled by unbiased draws from the
// remaining suffix. Throws domain_error unless 0 < n_treated < n_units.
std::vector<std::uint8_t> assign_treatment(std::int64_t n_units,
                                           std::int64_t n_treated,
                                           RandomStream& stream);

// One replicate's observable effect size and unobservable target.
struct ReplicateResult {
  double vr = 0.0;        // SD(treated responses) / SD(control responses)
  double sd_delta = 0.0;  // SD of y1 - y0 over all units
};

// Draws a population, randomizes treatment, and computes the replicate
// statistics. vr uses only the observed arm of each unit; sd_delta uses
// both potential outcomes of every unit and is therefore invariant to the
// assignment. Throws domain_error when a realized arm is constant or has
// fewer than two units.
ReplicateResult run_replicate(const ToyModelConfig& cfg, RandomStream& stream);

struct SimulationAggregate {
  std::int64_t replicates = 0;
  double mean_vr = 0.0;
  double sd_vr = 0.0;
  double mean_sd_delta = 0.0;
  double sd_sd_delta = 0.0;
  std::vector<ReplicateResult> per_replicate;
};

// Runs `replicates` independent replicates, at most `parallelism` at a
// time. Replicate k reads only its private sub-stream (derived from
// cfg.seed and k) and writes only its own slot, and aggregation runs
// serially in index order, so the result is identical for every
// parallelism level. Aggregate SDs use the n - 1 denominator and are 0
// when replicates == 1. Replicate failures surface as domain_error
// carrying the lowest failing index.
SimulationAggregate run_simulation(const ToyModelConfig& cfg,
                                   std::int64_t replicates, int parallelism);

}  // namespace vrteh
