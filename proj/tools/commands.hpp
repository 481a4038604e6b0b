#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vrteh::cli {

// Flag combinations the parser cannot rule out on its own (mutually
// exclusive groups, malformed prior text, ...). Mapped to exit code 2.
class usage_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EstimateArgs {
  std::optional<double> sd1;
  std::optional<long long> n1;
  std::optional<double> sd0;
  std::optional<long long> n0;
  std::string data_path;
  double ci_level = 0.95;
};

struct SolveArgs {
  double nu = 1.0;
  double sigma_tau = 1.0;
  std::optional<double> rho;
};

struct RegionArgs {
  std::string kind;  // classify | nu-curve | rho-curve | band
  double r_min = -1.0;
  double r_max = 3.0;
  double rho_min = -1.0;
  double rho_max = 1.0;
  double teh_min = 0.0;
  double teh_max = 3.0;
  std::optional<double> rho;      // nu-curve
  std::optional<double> nu;       // rho-curve
  std::optional<double> nu_low;   // band
  std::optional<double> nu_high;  // band
  long long points = 201;
  std::string out;
};

struct BayesArgs {
  double nu = 1.0;
  double sigma_tau = 1.0;
  std::string prior;  // point:X | uniform:A,B | discrete:FILE
  long long samples = 100000;
  std::uint64_t seed = 1;
  std::string branch_policy = "equal_weight";
  std::string infeasible_policy = "reject";
  std::vector<double> quantiles = {0.05, 0.25, 0.5, 0.75, 0.95};
  std::string dump_samples;
};

struct SimulateArgs {
  long long n = 10000;
  std::optional<long long> n_treated;  // defaults to n / 2
  long long replicates = 1000;
  double rho = -0.5;
  double sigma_tau = 1.0;
  double sigma_delta = 1.0;
  double mu_tau = 0.0;
  double mu_delta = 0.0;
  int sd_delta_offset = 0;
  std::uint64_t seed = 1;
  int parallelism = 1;
  std::string dump_replicates;
};

// Each command validates its flag combination, runs the library call, writes
// any requested files, and prints one structured envelope to standard
// output. Errors propagate as usage_error / domain_error / io_error for the
// dispatcher to map onto exit codes.
void cmd_estimate(const EstimateArgs& args);
void cmd_solve(const SolveArgs& args);
void cmd_region(const RegionArgs& args);
void cmd_bayes(const BayesArgs& args);
void cmd_simulate(const SimulateArgs& args);

}  // namespace vrteh::cli
