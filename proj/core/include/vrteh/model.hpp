#pragma once

namespace vrteh {

// One unit's potential-outcome decomposition: the endpoint score under
// arm a is alpha + tau + a * delta, so the response (endpoint minus
// baseline) is tau + a * delta and never depends on alpha.
struct UnitPotentialOutcomes {
  double alpha = 0.0;  // baseline score
  double tau = 0.0;    // response under control
  double delta = 0.0;  // individual treatment effect
};

// Population moments of (tau, delta) on the response scale.
struct PopulationMoments {
  double sigma_tau = 1.0;    // SD of tau, strictly positive
  double sigma_delta = 0.0;  // SD of delta, non-negative
  double rho = 0.0;          // correlation of tau and delta, in [-1, 1]
};

// Throws domain_error unless sigma_tau > 0, sigma_delta >= 0, |rho| <= 1.
void validate(const PopulationMoments& m);

// Endpoint score of a unit under arm 0 or 1.
double endpoint_score(const UnitPotentialOutcomes& u, int arm);

// Response score: endpoint minus baseline.
double response_from_scores(double endpoint, double baseline);

// Var(treated response) - Var(control response) =
// sigma_delta^2 + 2 * rho * sigma_tau * sigma_delta.
double variance_gap(const PopulationMoments& m);

}  // namespace vrteh
