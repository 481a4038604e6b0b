#include "vrteh/model.hpp"

#include <cmath>

#include "vrteh/errors.hpp"

namespace vrteh {

void validate(const PopulationMoments& m) {
  if (!(m.sigma_tau > 0.0) || !std::isfinite(m.sigma_tau)) {
    throw domain_error("PopulationMoments: sigma_tau must be finite and > 0");
  }
  if (!(m.sigma_delta >= 0.0) || !std::isfinite(m.sigma_delta)) {
    throw domain_error("PopulationMoments: sigma_delta must be finite and >= 0");
  }
  if (!(m.rho >= -1.0 && m.rho <= 1.0)) {
    throw domain_error("PopulationMoments: rho must lie in [-1, 1]");
  }
}

double endpoint_score(const UnitPotentialOutcomes& u, int arm) {
  if (arm != 0 && arm != 1) {
    throw domain_error("endpoint_score: arm must be 0 or 1");
  }
  return u.alpha + u.tau + static_cast<double>(arm) * u.delta;
}

double response_from_scores(double endpoint, double baseline) {
  return endpoint - baseline;
}

double variance_gap(const PopulationMoments& m) {
  validate(m);
  return m.sigma_delta * m.sigma_delta +
         2.0 * m.rho * m.sigma_tau * m.sigma_delta;
}

}  // namespace vrteh
