#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>

#include <CLI11.hpp>

#include "commands.hpp"
#include "vrteh/errors.hpp"
#include "vrteh/version.hpp"

namespace {

// Seed resolution order: --seed flag, then VRTEH_SEED, then 1.
std::uint64_t default_seed() {
  const char* env = std::getenv("VRTEH_SEED");
  if (env == nullptr || *env == '\0') return 1;
  std::uint64_t value = 0;
  const char* last = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, last, value);
  if (ec != std::errc() || ptr != last) {
    throw vrteh::cli::usage_error("VRTEH_SEED must be an unsigned integer");
  }
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace vrteh::cli;

  CLI::App app{
      "Variability-ratio toolkit: ln VR effect-size estimation, recovery of "
      "treatment-effect heterogeneity from a variability ratio under an "
      "assumed correlation, prior propagation, and seeded simulation."};
  app.set_version_flag("--version", std::string(vrteh::kVersion));
  app.require_subcommand(1);
  app.footer(
      "Seeded commands (bayes, simulate) default their seed to the\n"
      "VRTEH_SEED environment variable when it is set, and to 1 otherwise;\n"
      "--seed overrides both.");

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "ln VR point estimate, standard error, and CI from arm "
                  "summaries or a raw-data file");
  estimate->add_option("--sd1", est.sd1, "Treatment arm sample SD (n-1)");
  estimate->add_option("--n1", est.n1, "Treatment arm size");
  estimate->add_option("--sd0", est.sd0, "Control arm sample SD (n-1)");
  estimate->add_option("--n0", est.n0, "Control arm size");
  estimate->add_option("--data", est.data_path,
                       "CSV of observed responses with header arm,value and "
                       "arm in {treatment, control}");
  estimate->add_option("--ci-level", est.ci_level, "Confidence level in (0, 1)")
      ->capture_default_str();

  SolveArgs sol;
  CLI::App* solve = app.add_subcommand(
      "solve", "sigma_delta values compatible with an observed variability "
               "ratio, plus the correlation-free bounds");
  solve->add_option("--nu", sol.nu, "Observed variability ratio (>= 0)")
      ->required();
  solve->add_option("--sigma-tau", sol.sigma_tau, "Control-response SD (> 0)")
      ->capture_default_str();
  solve->add_option("--rho", sol.rho,
                    "Assumed correlation in [-1, 1]; omit for bounds only");

  RegionArgs reg;
  CLI::App* region = app.add_subcommand(
      "region", "Plot-ready grids over the identification plane (CSV to "
                "--out, envelope to stdout)");
  region->require_subcommand(1);

  CLI::App* classify = region->add_subcommand(
      "classify", "Solution-count class of every (r, rho) cell, r = nu^2 - 1");
  classify->add_option("--r-min", reg.r_min, "Low edge of the r axis")
      ->capture_default_str();
  classify->add_option("--r-max", reg.r_max, "High edge of the r axis")
      ->capture_default_str();
  classify->add_option("--rho-min", reg.rho_min, "Low edge of the rho axis")
      ->capture_default_str();
  classify->add_option("--rho-max", reg.rho_max, "High edge of the rho axis")
      ->capture_default_str();
  classify->add_option("--points", reg.points, "Grid points per axis")
      ->capture_default_str();
  classify->add_option("--out", reg.out, "Output CSV path")->required();

  CLI::App* nu_curve = region->add_subcommand(
      "nu-curve", "nu as a function of g = sigma_delta / sigma_tau at a "
                  "fixed correlation");
  nu_curve->add_option("--rho", reg.rho, "Correlation in [-1, 1]")->required();
  nu_curve->add_option("--teh-min", reg.teh_min, "Low edge of the g axis")
      ->capture_default_str();
  nu_curve->add_option("--teh-max", reg.teh_max, "High edge of the g axis")
      ->capture_default_str();
  nu_curve->add_option("--points", reg.points, "Grid points")
      ->capture_default_str();
  nu_curve->add_option("--out", reg.out, "Output CSV path")->required();

  CLI::App* rho_curve = region->add_subcommand(
      "rho-curve", "Compatible sigma_delta branches across correlations at a "
                   "fixed nu (sigma_tau = 1)");
  rho_curve->add_option("--nu", reg.nu, "Observed variability ratio (>= 0)")
      ->required();
  rho_curve->add_option("--rho-min", reg.rho_min, "Low edge of the rho axis")
      ->capture_default_str();
  rho_curve->add_option("--rho-max", reg.rho_max, "High edge of the rho axis")
      ->capture_default_str();
  rho_curve->add_option("--points", reg.points, "Grid points")
      ->capture_default_str();
  rho_curve->add_option("--out", reg.out, "Output CSV path")->required();

  CLI::App* band = region->add_subcommand(
      "band", "Membership grid of nu_low < nu < nu_high over (rho, g) cells");
  band->add_option("--nu-low", reg.nu_low, "Lower nu edge (exclusive)")
      ->required();
  band->add_option("--nu-high", reg.nu_high, "Upper nu edge (exclusive)")
      ->required();
  band->add_option("--rho-min", reg.rho_min, "Low edge of the rho axis")
      ->capture_default_str();
  band->add_option("--rho-max", reg.rho_max, "High edge of the rho axis")
      ->capture_default_str();
  band->add_option("--teh-min", reg.teh_min, "Low edge of the g axis")
      ->capture_default_str();
  band->add_option("--teh-max", reg.teh_max, "High edge of the g axis")
      ->capture_default_str();
  band->add_option("--points", reg.points, "Grid points per axis")
      ->capture_default_str();
  band->add_option("--out", reg.out, "Output CSV path")->required();

  BayesArgs bay;
  std::optional<std::uint64_t> bay_seed;
  CLI::App* bayes = app.add_subcommand(
      "bayes", "Push a prior on the correlation through the solver into a "
               "posterior over sigma_delta");
  bayes->add_option("--nu", bay.nu, "Observed variability ratio (>= 0)")
      ->required();
  bayes->add_option("--sigma-tau", bay.sigma_tau, "Control-response SD (> 0)")
      ->capture_default_str();
  bayes->add_option("--prior", bay.prior,
                    "point:X | uniform:A,B | discrete:FILE (CSV rho,weight)")
      ->required();
  bayes
      ->add_option("--samples", bay.samples,
                   "Monte Carlo draws for a uniform prior (atom priors are "
                   "enumerated exactly)")
      ->capture_default_str();
  bayes->add_option("--seed", bay_seed, "RNG seed (default: VRTEH_SEED or 1)");
  bayes
      ->add_option("--branch-policy", bay.branch_policy,
                   "equal_weight | min_only | max_only")
      ->capture_default_str();
  bayes
      ->add_option("--infeasible-policy", bay.infeasible_policy,
                   "reject | error_if_all")
      ->capture_default_str();
  bayes
      ->add_option("--quantiles", bay.quantiles,
                   "Posterior quantile levels in [0, 1]")
      ->delimiter(',');
  bayes->add_option("--dump-samples", bay.dump_samples,
                    "Write every posterior sample to this CSV");

  SimulateArgs sim;
  std::optional<std::uint64_t> sim_seed;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Replicated two-arm trials on the synthetic response model");
  simulate->add_option("--n", sim.n, "Units per replicate (>= 4)")
      ->capture_default_str();
  simulate->add_option("--n-treated", sim.n_treated,
                       "Treated units (default: n / 2)");
  simulate->add_option("--replicates", sim.replicates, "Replicate count")
      ->capture_default_str();
  simulate->add_option("--rho", sim.rho, "Correlation of (tau, delta)")
      ->capture_default_str();
  simulate->add_option("--sigma-tau", sim.sigma_tau, "SD of tau (>= 0)")
      ->capture_default_str();
  simulate->add_option("--sigma-delta", sim.sigma_delta, "SD of delta (>= 0)")
      ->capture_default_str();
  simulate->add_option("--mu-tau", sim.mu_tau, "Mean of tau")
      ->capture_default_str();
  simulate->add_option("--mu-delta", sim.mu_delta, "Mean of delta")
      ->capture_default_str();
  simulate
      ->add_option("--sd-delta-offset", sim.sd_delta_offset,
                   "Denominator offset for the oracle SD of delta (0 or 1)")
      ->capture_default_str();
  simulate->add_option("--seed", sim_seed,
                       "RNG seed (default: VRTEH_SEED or 1)");
  simulate
      ->add_option("--parallelism", sim.parallelism,
                   "Worker threads; never changes the results")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--dump-replicates", sim.dump_replicates,
                       "Write per-replicate vr and sd_delta to this CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (estimate->parsed()) {
      cmd_estimate(est);
    } else if (solve->parsed()) {
      cmd_solve(sol);
    } else if (region->parsed()) {
      if (classify->parsed()) reg.kind = "classify";
      else if (nu_curve->parsed()) reg.kind = "nu-curve";
      else if (rho_curve->parsed()) reg.kind = "rho-curve";
      else if (band->parsed()) reg.kind = "band";
      cmd_region(reg);
    } else if (bayes->parsed()) {
      bay.seed = bay_seed ? *bay_seed : default_seed();
      cmd_bayes(bay);
    } else if (simulate->parsed()) {
      sim.seed = sim_seed ? *sim_seed : default_seed();
      cmd_simulate(sim);
    }
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const vrteh::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const vrteh::io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
