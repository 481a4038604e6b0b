#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vrteh/model.hpp"

namespace vrteh {

// Inputs of the inverse problem: recover the TEH magnitude sigma_delta
// from an observed variability ratio nu, the control-response SD
// sigma_tau, and an assumed correlation rho.
struct SolveInput {
  double nu = 1.0;         // >= 0
  double sigma_tau = 1.0;  // > 0
  double rho = 0.0;        // in [-1, 1]
};

enum class Branch { plus, minus };

struct BranchSolution {
  double sigma_delta;
  Branch branch;
};

// Compatible sigma_delta values for one (nu, sigma_tau, rho) input.
// feasible == false exactly when solutions is empty; solutions are sorted
// by increasing sigma_delta and carry at most one entry per branch.
struct SolutionSet {
  bool feasible = false;
  std::vector<BranchSolution> solutions;
};

enum class RegionClass { infeasible, unique, dual, boundary_dual };

const char* to_string(Branch b);
const char* to_string(RegionClass c);

// Forward direction: the variability ratio implied by population moments,
//   nu = sqrt(1 + variance_gap(m) / sigma_tau^2).
// The radicand is clamped at zero, which it only reaches when rho = -1 and
// sigma_delta = sigma_tau (the treated response is constant).
double nu_from_teh(const PopulationMoments& m);

// Inverse direction. With r = nu^2 - 1 the identity reads
//   (sigma_delta + rho * sigma_tau)^2 = sigma_tau^2 * (r + rho^2),
// so candidate roots are sigma_tau * (+/- sqrt(r + rho^2) - rho) and a
// root is admissible only when it is non-negative:
//   r >  0            -> the plus root alone,
//   r =  0, rho <  0  -> both roots, {0, -2 rho sigma_tau},
//   r =  0, rho >= 0  -> the single root 0,
//   r <  0, rho <  0  -> both roots while r >= -rho^2,
//   r <  0, rho >  0  -> no admissible root,
//   r <  -rho^2       -> infeasible (negative radicand).
// A radicand within 1e-12 * max(1, rho^2) below zero is clamped to the
// coincident double root -rho * sigma_tau, so estimates sitting on the
// feasibility boundary do not flip to infeasible through rounding.
SolutionSet solve_sigma_delta(const SolveInput& in);

// Bounds on sigma_delta / sigma_tau over all rho in [-1, 1]:
//   |1 - nu| <= sigma_delta / sigma_tau <= 1 + nu.
std::pair<double, double> universal_bounds(double nu);

// Cardinality classification of the (r, rho) plane; agrees with the number
// of distinct solutions returned by solve_sigma_delta on every input,
// because it applies the same feasibility tolerance to the radicand.
RegionClass classify_region(double r, double rho);

struct CurvePoint {
  double teh_ratio;  // sigma_delta / sigma_tau
  double nu;
};

// nu as a function of the relative TEH g = sigma_delta / sigma_tau at a
// fixed correlation; evaluated with sigma_tau = 1.
std::vector<CurvePoint> curve_nu_vs_teh(double rho,
                                        std::span<const double> teh_ratio_grid);

struct RhoCurvePoint {
  double rho;
  SolutionSet set;
};

// Solution sets across a grid of correlations at a fixed nu (sigma_tau = 1).
// Infeasible grid points are carried with empty solution lists.
std::vector<RhoCurvePoint> curve_rho_vs_teh(double nu,
                                            std::span<const double> rho_grid);

// Membership grid of the band nu_low < nu < nu_high (strict on both sides)
// over (rho, teh_ratio) cells, row-major with rho as the row axis.
struct RegionGrid {
  std::vector<double> rho_values;
  std::vector<double> teh_values;
  std::vector<std::uint8_t> member;

  bool at(std::size_t rho_index, std::size_t teh_index) const {
    return member[rho_index * teh_values.size() + teh_index] != 0;
  }
};

RegionGrid band_region(double nu_low, double nu_high,
                       std::span<const double> rho_grid,
                       std::span<const double> teh_grid);

// Evenly spaced grid over [lo, hi] with n points (n >= 2), endpoints
// included.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace vrteh
