#include "vrteh/solver.hpp"

#include <algorithm>
#include <cmath>

#include "vrteh/errors.hpp"

namespace vrteh {

namespace {

void validate(const SolveInput& in) {
  if (!(in.nu >= 0.0) || !std::isfinite(in.nu)) {
    throw domain_error("solve_sigma_delta: nu must be finite and >= 0");
  }
  if (!(in.sigma_tau > 0.0) || !std::isfinite(in.sigma_tau)) {
    throw domain_error("solve_sigma_delta: sigma_tau must be finite and > 0");
  }
  if (!(in.rho >= -1.0 && in.rho <= 1.0)) {
    throw domain_error("solve_sigma_delta: rho must lie in [-1, 1]");
  }
}

}  // namespace

const char* to_string(Branch b) {
  return b == Branch::plus ? "plus" : "minus";
}

const char* to_string(RegionClass c) {
  switch (c) {
    case RegionClass::infeasible: return "INFEASIBLE";
    case RegionClass::unique: return "UNIQUE";
    case RegionClass::dual: return "DUAL";
    case RegionClass::boundary_dual: return "BOUNDARY_DUAL";
  }
  return "UNKNOWN";
}

double nu_from_teh(const PopulationMoments& m) {
  const double ratio =
      1.0 + variance_gap(m) / (m.sigma_tau * m.sigma_tau);
  return std::sqrt(std::max(0.0, ratio));
}

SolutionSet solve_sigma_delta(const SolveInput& in) {
  validate(in);
  const double r = in.nu * in.nu - 1.0;
  const double rho = in.rho;
  const double rho2 = rho * rho;
  const double radicand = r + rho2;
  const double feas_tol = 1e-12 * std::max(1.0, rho2);

  if (radicand < -feas_tol) {
    return {};
  }
  if (radicand <= 0.0) {
    // On (or within tolerance of) the boundary r = -rho^2: coincident
    // double root at -rho * sigma_tau, admissible only when rho <= 0.
    if (rho > 0.0) {
      return {};
    }
    return {true, {{-rho * in.sigma_tau, Branch::plus}}};
  }

  const double root = std::sqrt(radicand);
  SolutionSet out;
  // Admissibility is decided from the exact signs of (r, rho) rather than
  // from the rounded candidate values; the computed values are then clamped
  // at zero so boundary cases cannot come out as -1e-17.
  if (rho <= 0.0 && r <= 0.0) {
    const double v = (r == 0.0) ? 0.0 : in.sigma_tau * (-root - rho);
    out.solutions.push_back({std::max(0.0, v), Branch::minus});
  }
  if (rho < 0.0 || r >= 0.0) {
    const double v =
        (r == 0.0) ? -2.0 * rho * in.sigma_tau : in.sigma_tau * (root - rho);
    out.solutions.push_back({std::max(0.0, v), Branch::plus});
  }
  if (out.solutions.empty()) {
    return {};
  }
  if (out.solutions.size() == 2 &&
      out.solutions[0].sigma_delta == out.solutions[1].sigma_delta) {
    out.solutions = {{out.solutions[0].sigma_delta, Branch::plus}};
  }
  out.feasible = true;
  return out;
}

std::pair<double, double> universal_bounds(double nu) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw domain_error("universal_bounds: nu must be finite and >= 0");
  }
  return {std::abs(1.0 - nu), 1.0 + nu};
}

RegionClass classify_region(double r, double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw domain_error("classify_region: rho must lie in [-1, 1]");
  }
  const double rho2 = rho * rho;
  const double radicand = r + rho2;
  // The same tolerance as solve_sigma_delta, so the classification agrees
  // with the solver's solution count on every input, boundary cells
  // included.
  const double feas_tol = 1e-12 * std::max(1.0, rho2);
  if (radicand < -feas_tol || (r < 0.0 && rho > 0.0)) {
    return RegionClass::infeasible;
  }
  if (rho < 0.0 && radicand <= 0.0) {
    return RegionClass::boundary_dual;
  }
  if (rho < 0.0 && r <= 0.0) {
    return RegionClass::dual;
  }
  return RegionClass::unique;
}

std::vector<CurvePoint> curve_nu_vs_teh(
    double rho, std::span<const double> teh_ratio_grid) {
  std::vector<CurvePoint> out;
  out.reserve(teh_ratio_grid.size());
  for (double g : teh_ratio_grid) {
    out.push_back({g, nu_from_teh({1.0, g, rho})});
  }
  return out;
}

std::vector<RhoCurvePoint> curve_rho_vs_teh(double nu,
                                            std::span<const double> rho_grid) {
  std::vector<RhoCurvePoint> out;
  out.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    out.push_back({rho, solve_sigma_delta({nu, 1.0, rho})});
  }
  return out;
}

RegionGrid band_region(double nu_low, double nu_high,
                       std::span<const double> rho_grid,
                       std::span<const double> teh_grid) {
  if (!(nu_low >= 0.0 && nu_low < nu_high)) {
    throw domain_error("band_region: need 0 <= nu_low < nu_high");
  }
  RegionGrid grid;
  grid.rho_values.assign(rho_grid.begin(), rho_grid.end());
  grid.teh_values.assign(teh_grid.begin(), teh_grid.end());
  grid.member.resize(rho_grid.size() * teh_grid.size());
  std::size_t k = 0;
  for (double rho : rho_grid) {
    for (double g : teh_grid) {
      const double nu = nu_from_teh({1.0, g, rho});
      grid.member[k++] = (nu > nu_low && nu < nu_high) ? 1 : 0;
    }
  }
  return grid;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) {
    throw domain_error("linspace: need at least 2 points");
  }
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + static_cast<double>(i) * step;
  }
  out.back() = hi;
  return out;
}

}  // namespace vrteh
