#include "vrteh/simulation.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

#include "vrteh/errors.hpp"
#include "vrteh/estimation.hpp"

namespace vrteh {

void validate(const ToyModelConfig& cfg) {
  if (!std::isfinite(cfg.rho) || cfg.rho < -1.0 || cfg.rho > 1.0) {
    throw domain_error("toy model: rho must lie in [-1, 1]");
  }
  if (!std::isfinite(cfg.mu_tau) || !std::isfinite(cfg.mu_delta)) {
    throw domain_error("toy model: means must be finite");
  }
  if (!std::isfinite(cfg.sigma_tau) || cfg.sigma_tau < 0.0) {
    throw domain_error("toy model: sigma_tau must be nonnegative and finite");
  }
  if (!std::isfinite(cfg.sigma_delta) || cfg.sigma_delta < 0.0) {
    throw domain_error("toy model: sigma_delta must be nonnegative and finite");
  }
  if (cfg.n_units < 4) {
    throw domain_error("toy model: n_units must be at least 4");
  }
  if (cfg.n_treated <= 0 || cfg.n_treated >= cfg.n_units) {
    throw domain_error("toy model: need 0 < n_treated < n_units");
  }
  if (cfg.sd_delta_denominator_offset != 0 &&
      cfg.sd_delta_denominator_offset != 1) {
    throw domain_error("toy model: sd_delta_denominator_offset must be 0 or 1");
  }
}

PotentialOutcomes draw_potential_outcomes(const ToyModelConfig& cfg,
                                          RandomStream& stream) {
  validate(cfg);
  const std::size_t n = static_cast<std::size_t>(cfg.n_units);
  const double cross = std::sqrt((1.0 - cfg.rho) * (1.0 + cfg.rho));

  PotentialOutcomes out;
  out.y0.resize(n);
  out.y1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = stream.normal();
    const double z2 = stream.normal();
    const double tau = cfg.mu_tau + cfg.sigma_tau * z1;
    const double delta =
        cfg.mu_delta + cfg.sigma_delta * (cfg.rho * z1 + cross * z2);
    out.y0[i] = tau;
    out.y1[i] = tau + delta;
  }
  return out;
}

std::vector<std::uint8_t> assign_treatment(std::int64_t n_units,
                                           std::int64_t n_treated,
                                           RandomStream& stream) {
  if (n_units < 2 || n_treated <= 0 || n_treated >= n_units) {
    throw domain_error("assign_treatment: need 0 < n_treated < n_units");
  }
  const std::size_t n = static_cast<std::size_t>(n_units);
  const std::size_t k = static_cast<std::size_t>(n_treated);

  std::vector<std::size_t> index(n);
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(
                stream.bounded(static_cast<std::uint64_t>(n - i)));
    std::swap(index[i], index[j]);
    mask[index[i]] = 1;
  }
  return mask;
}

ReplicateResult run_replicate(const ToyModelConfig& cfg,
                              RandomStream& stream) {
  validate(cfg);
  const PotentialOutcomes pop = draw_potential_outcomes(cfg, stream);
  const std::vector<std::uint8_t> treated =
      assign_treatment(cfg.n_units, cfg.n_treated, stream);

  const std::size_t n = pop.y0.size();
  std::vector<double> treat_obs;
  std::vector<double> ctrl_obs;
  treat_obs.reserve(static_cast<std::size_t>(cfg.n_treated));
  ctrl_obs.reserve(n - static_cast<std::size_t>(cfg.n_treated));
  std::vector<double> deltas(n);
  for (std::size_t i = 0; i < n; ++i) {
    deltas[i] = pop.y1[i] - pop.y0[i];
    if (treated[i]) {
      treat_obs.push_back(pop.y1[i]);
    } else {
      ctrl_obs.push_back(pop.y0[i]);
    }
  }

  if (treat_obs.size() < 2 || ctrl_obs.size() < 2) {
    throw domain_error("replicate needs at least 2 units in each arm");
  }
  const double sd_treat = sample_sd(treat_obs, 1);
  const double sd_ctrl = sample_sd(ctrl_obs, 1);
  if (sd_treat == 0.0 || sd_ctrl == 0.0) {
    throw domain_error("replicate produced a constant arm");
  }

  ReplicateResult res;
  res.vr = sd_treat / sd_ctrl;
  res.sd_delta = sample_sd(deltas, cfg.sd_delta_denominator_offset);
  return res;
}

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sd_or_zero(const std::vector<double>& v) {
  return v.size() < 2 ? 0.0 : sample_sd(v, 1);
}

}  // namespace

SimulationAggregate run_simulation(const ToyModelConfig& cfg,
                                   std::int64_t replicates, int parallelism) {
  validate(cfg);
  if (replicates < 1) {
    throw domain_error("run_simulation: replicates must be at least 1");
  }
  if (parallelism < 1) {
    throw domain_error("run_simulation: parallelism must be at least 1");
  }

  const std::size_t n = static_cast<std::size_t>(replicates);
  std::vector<ReplicateResult> slots(n);
  std::vector<std::string> errors(n);
  std::vector<std::uint8_t> failed(n, 0);

  const RandomStream master(cfg.seed);
  std::atomic<std::int64_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= replicates) return;
      RandomStream stream =
          master.substream(static_cast<std::uint64_t>(i));
      const std::size_t slot = static_cast<std::size_t>(i);
      try {
        slots[slot] = run_replicate(cfg, stream);
      } catch (const std::exception& e) {
        failed[slot] = 1;
        errors[slot] = e.what();
      }
    }
  };

  const int threads =
      static_cast<int>(std::min<std::int64_t>(parallelism, replicates));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (failed[i]) {
      throw domain_error("replicate " + std::to_string(i) + ": " + errors[i]);
    }
  }

  std::vector<double> vr(n);
  std::vector<double> sd_delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    vr[i] = slots[i].vr;
    sd_delta[i] = slots[i].sd_delta;
  }

  SimulationAggregate agg;
  agg.replicates = replicates;
  agg.mean_vr = mean_of(vr);
  agg.sd_vr = sd_or_zero(vr);
  agg.mean_sd_delta = mean_of(sd_delta);
  agg.sd_sd_delta = sd_or_zero(sd_delta);
  agg.per_replicate = std::move(slots);
  return agg;
}

}  // namespace vrteh
