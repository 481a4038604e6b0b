#include "commands.hpp"

#include <cstddef>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "csv.hpp"
#include "vrteh/bayes.hpp"
#include "vrteh/errors.hpp"
#include "vrteh/estimation.hpp"
#include "vrteh/simulation.hpp"
#include "vrteh/solver.hpp"
#include "vrteh/version.hpp"

namespace vrteh::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json new_envelope(const char* command) {
  ordered_json env;
  env["command"] = command;
  return env;
}

// Fixed envelope tail: the version always closes the object, after the
// optional seed, so consumers see one stable key order.
void emit(ordered_json env) {
  env["toolkit_version"] = kVersion;
  std::cout << env.dump(2) << "\n";
}

std::size_t checked_points(long long points) {
  if (points < 2 || points > 1000000) {
    throw usage_error("--points must lie in [2, 1000000]");
  }
  return static_cast<std::size_t>(points);
}

BranchPolicy parse_branch_policy(const std::string& name) {
  if (name == "equal_weight") return BranchPolicy::equal_weight;
  if (name == "min_only") return BranchPolicy::min_only;
  if (name == "max_only") return BranchPolicy::max_only;
  throw usage_error("--branch-policy must be equal_weight, min_only, or max_only");
}

InfeasiblePolicy parse_infeasible_policy(const std::string& name) {
  if (name == "reject") return InfeasiblePolicy::reject;
  if (name == "error_if_all") return InfeasiblePolicy::error_if_all;
  throw usage_error("--infeasible-policy must be reject or error_if_all");
}

// point:X | uniform:A,B | discrete:FILE. Malformed text is a usage error;
// out-of-range values surface as domain errors from the constructors and a
// missing atom file as an I/O error from the reader.
RhoPrior parse_prior(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw usage_error(
        "--prior must look like point:X, uniform:A,B, or discrete:FILE");
  }
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "point") {
    double value = 0.0;
    if (!parse_double(rest, value)) {
      throw usage_error("malformed point prior '" + text + "'");
    }
    return RhoPrior::point_mass(value);
  }
  if (kind == "uniform") {
    const auto comma = rest.find(',');
    double a = 0.0;
    double b = 0.0;
    if (comma == std::string::npos ||
        !parse_double(rest.substr(0, comma), a) ||
        !parse_double(rest.substr(comma + 1), b)) {
      throw usage_error("malformed uniform prior '" + text + "'");
    }
    return RhoPrior::uniform(a, b);
  }
  if (kind == "discrete") {
    if (rest.empty()) throw usage_error("discrete prior needs a file path");
    return RhoPrior::discrete(read_prior_atoms(rest));
  }
  throw usage_error("unknown prior kind '" + kind + "'");
}

}  // namespace

void cmd_estimate(const EstimateArgs& args) {
  ordered_json env = new_envelope("estimate");
  VrEstimate est;
  const bool has_summary =
      args.sd1 || args.n1 || args.sd0 || args.n0;
  if (!args.data_path.empty()) {
    if (has_summary) {
      throw usage_error(
          "give either --data or the summary flags, not both");
    }
    const RawData data = read_raw_data(args.data_path);
    est = estimate_from_raw(data.treatment, data.control, args.ci_level);
    env["inputs"] = {{"data", args.data_path}, {"ci_level", args.ci_level}};
  } else {
    if (!(args.sd1 && args.n1 && args.sd0 && args.n0)) {
      throw usage_error(
          "estimate needs --sd1 --n1 --sd0 --n0 together, or --data FILE");
    }
    est = estimate(ArmSummary{*args.n1, *args.sd1},
                   ArmSummary{*args.n0, *args.sd0}, args.ci_level);
    env["inputs"] = {{"sd1", *args.sd1},
                     {"n1", *args.n1},
                     {"sd0", *args.sd0},
                     {"n0", *args.n0},
                     {"ci_level", args.ci_level}};
  }
  env["results"] = {{"ln_vr", est.ln_vr},
                    {"se_ln_vr", est.se_ln_vr},
                    {"vr", est.vr},
                    {"ci_low", est.ci_low},
                    {"ci_high", est.ci_high}};
  emit(std::move(env));
}

void cmd_solve(const SolveArgs& args) {
  ordered_json env = new_envelope("solve");
  env["inputs"] = {{"nu", args.nu}, {"sigma_tau", args.sigma_tau}};
  ordered_json results;
  if (args.rho) {
    env["inputs"]["rho"] = *args.rho;
    const SolutionSet set =
        solve_sigma_delta({args.nu, args.sigma_tau, *args.rho});
    results["feasible"] = set.feasible;
    ordered_json solutions = ordered_json::array();
    for (const auto& s : set.solutions) {
      solutions.push_back(
          {{"sigma_delta", s.sigma_delta}, {"branch", to_string(s.branch)}});
    }
    results["solutions"] = std::move(solutions);
    results["region"] =
        to_string(classify_region(args.nu * args.nu - 1.0, *args.rho));
  }
  const auto [lo, hi] = universal_bounds(args.nu);
  results["bounds"] = {{"teh_ratio_low", lo},
                       {"teh_ratio_high", hi},
                       {"sigma_delta_low", lo * args.sigma_tau},
                       {"sigma_delta_high", hi * args.sigma_tau}};
  env["results"] = std::move(results);
  emit(std::move(env));
}

void cmd_region(const RegionArgs& args) {
  ordered_json env = new_envelope("region");
  const std::size_t points = checked_points(args.points);
  if (args.out.empty()) throw usage_error("region needs --out FILE");
  ordered_json inputs = {{"kind", args.kind}};
  std::string csv;
  std::size_t rows = 0;
  ordered_json extra;

  if (args.kind == "classify") {
    inputs["r_min"] = args.r_min;
    inputs["r_max"] = args.r_max;
    inputs["rho_min"] = args.rho_min;
    inputs["rho_max"] = args.rho_max;
    const std::vector<double> rs = linspace(args.r_min, args.r_max, points);
    const std::vector<double> rhos =
        linspace(args.rho_min, args.rho_max, points);
    csv = "r,rho,region\n";
    long long infeasible = 0;
    long long unique = 0;
    long long dual = 0;
    long long boundary_dual = 0;
    for (double rho : rhos) {
      for (double r : rs) {
        const RegionClass c = classify_region(r, rho);
        switch (c) {
          case RegionClass::infeasible: ++infeasible; break;
          case RegionClass::unique: ++unique; break;
          case RegionClass::dual: ++dual; break;
          case RegionClass::boundary_dual: ++boundary_dual; break;
        }
        csv += format_double(r);
        csv += ',';
        csv += format_double(rho);
        csv += ',';
        csv += to_string(c);
        csv += '\n';
        ++rows;
      }
    }
    extra["counts"] = {{"INFEASIBLE", infeasible},
                       {"UNIQUE", unique},
                       {"DUAL", dual},
                       {"BOUNDARY_DUAL", boundary_dual}};
  } else if (args.kind == "nu-curve") {
    if (!args.rho) throw usage_error("nu-curve needs --rho");
    inputs["rho"] = *args.rho;
    inputs["teh_min"] = args.teh_min;
    inputs["teh_max"] = args.teh_max;
    const std::vector<double> grid =
        linspace(args.teh_min, args.teh_max, points);
    csv = "teh_ratio,nu\n";
    for (const CurvePoint& p : curve_nu_vs_teh(*args.rho, grid)) {
      csv += format_double(p.teh_ratio);
      csv += ',';
      csv += format_double(p.nu);
      csv += '\n';
      ++rows;
    }
  } else if (args.kind == "rho-curve") {
    if (!args.nu) throw usage_error("rho-curve needs --nu");
    inputs["nu"] = *args.nu;
    inputs["rho_min"] = args.rho_min;
    inputs["rho_max"] = args.rho_max;
    const std::vector<double> grid =
        linspace(args.rho_min, args.rho_max, points);
    csv = "rho,feasible,branch,sigma_delta\n";
    for (const RhoCurvePoint& p : curve_rho_vs_teh(*args.nu, grid)) {
      if (p.set.feasible) {
        for (const auto& s : p.set.solutions) {
          csv += format_double(p.rho);
          csv += ",1,";
          csv += to_string(s.branch);
          csv += ',';
          csv += format_double(s.sigma_delta);
          csv += '\n';
          ++rows;
        }
      } else {
        csv += format_double(p.rho);
        csv += ",0,,\n";
        ++rows;
      }
    }
  } else if (args.kind == "band") {
    if (!args.nu_low || !args.nu_high) {
      throw usage_error("band needs --nu-low and --nu-high");
    }
    inputs["nu_low"] = *args.nu_low;
    inputs["nu_high"] = *args.nu_high;
    inputs["rho_min"] = args.rho_min;
    inputs["rho_max"] = args.rho_max;
    inputs["teh_min"] = args.teh_min;
    inputs["teh_max"] = args.teh_max;
    const std::vector<double> rhos =
        linspace(args.rho_min, args.rho_max, points);
    const std::vector<double> tehs =
        linspace(args.teh_min, args.teh_max, points);
    const RegionGrid grid = band_region(*args.nu_low, *args.nu_high, rhos, tehs);
    csv = "rho,teh_ratio,member\n";
    for (std::size_t i = 0; i < grid.rho_values.size(); ++i) {
      for (std::size_t j = 0; j < grid.teh_values.size(); ++j) {
        csv += format_double(grid.rho_values[i]);
        csv += ',';
        csv += format_double(grid.teh_values[j]);
        csv += ',';
        csv += grid.at(i, j) ? '1' : '0';
        csv += '\n';
        ++rows;
      }
    }
  } else {
    throw usage_error("unknown region kind '" + args.kind + "'");
  }

  inputs["points"] = args.points;
  inputs["out"] = args.out;
  write_text_file(args.out, csv);
  env["inputs"] = std::move(inputs);
  env["results"] = {{"file", args.out}, {"rows", rows}};
  for (auto& [key, value] : extra.items()) {
    env["results"][key] = std::move(value);
  }
  emit(std::move(env));
}

void cmd_bayes(const BayesArgs& args) {
  ordered_json env = new_envelope("bayes");
  if (args.prior.empty()) throw usage_error("bayes needs --prior");
  const RhoPrior prior = parse_prior(args.prior);
  const BranchPolicy branch = parse_branch_policy(args.branch_policy);
  const InfeasiblePolicy infeasible =
      parse_infeasible_policy(args.infeasible_policy);
  const SigmaDeltaPosterior post =
      propagate(args.nu, args.sigma_tau, prior, args.samples, args.seed,
                branch, infeasible);
  const PosteriorSummary summary = summarize(post, args.quantiles);

  env["inputs"] = {{"nu", args.nu},
                   {"sigma_tau", args.sigma_tau},
                   {"prior", args.prior},
                   {"samples", args.samples},
                   {"branch_policy", args.branch_policy},
                   {"infeasible_policy", args.infeasible_policy},
                   {"quantiles", args.quantiles}};
  if (!args.dump_samples.empty()) {
    env["inputs"]["dump_samples"] = args.dump_samples;
    std::string csv = "rho,branch,sigma_delta,weight\n";
    for (const PosteriorSample& s : post.samples) {
      csv += format_double(s.rho);
      csv += ',';
      csv += to_string(s.branch);
      csv += ',';
      csv += format_double(s.sigma_delta);
      csv += ',';
      csv += format_double(s.weight);
      csv += '\n';
    }
    write_text_file(args.dump_samples, csv);
  }

  ordered_json quantiles = ordered_json::array();
  for (const auto& [level, value] : summary.quantiles) {
    quantiles.push_back({{"level", level}, {"value", value}});
  }
  env["results"] = {{"mean", summary.mean},
                    {"sd", summary.sd},
                    {"quantiles", std::move(quantiles)},
                    {"prob_zero", summary.prob_zero},
                    {"infeasible_mass", summary.infeasible_mass},
                    {"n_samples", summary.n_samples}};
  env["seed"] = args.seed;
  emit(std::move(env));
}

void cmd_simulate(const SimulateArgs& args) {
  ordered_json env = new_envelope("simulate");
  ToyModelConfig cfg;
  cfg.rho = args.rho;
  cfg.mu_tau = args.mu_tau;
  cfg.sigma_tau = args.sigma_tau;
  cfg.mu_delta = args.mu_delta;
  cfg.sigma_delta = args.sigma_delta;
  cfg.n_units = args.n;
  cfg.n_treated = args.n_treated.value_or(args.n / 2);
  cfg.seed = args.seed;
  cfg.sd_delta_denominator_offset = args.sd_delta_offset;

  const SimulationAggregate agg =
      run_simulation(cfg, args.replicates, args.parallelism);

  // parallelism is an execution knob, not an input: the aggregate is
  // identical at every level, and omitting it keeps the envelope
  // byte-identical across levels too.
  env["inputs"] = {{"n", args.n},
                   {"n_treated", cfg.n_treated},
                   {"replicates", args.replicates},
                   {"rho", args.rho},
                   {"sigma_tau", args.sigma_tau},
                   {"sigma_delta", args.sigma_delta},
                   {"mu_tau", args.mu_tau},
                   {"mu_delta", args.mu_delta},
                   {"sd_delta_offset", args.sd_delta_offset}};
  if (!args.dump_replicates.empty()) {
    env["inputs"]["dump_replicates"] = args.dump_replicates;
    std::string csv = "replicate,vr,sd_delta\n";
    for (std::size_t i = 0; i < agg.per_replicate.size(); ++i) {
      csv += std::to_string(i);
      csv += ',';
      csv += format_double(agg.per_replicate[i].vr);
      csv += ',';
      csv += format_double(agg.per_replicate[i].sd_delta);
      csv += '\n';
    }
    write_text_file(args.dump_replicates, csv);
  }

  env["results"] = {{"replicates", agg.replicates},
                    {"mean_vr", agg.mean_vr},
                    {"sd_vr", agg.sd_vr},
                    {"mean_sd_delta", agg.mean_sd_delta},
                    {"sd_sd_delta", agg.sd_sd_delta}};
  env["seed"] = args.seed;
  emit(std::move(env));
}

}  // namespace vrteh::cli
