#include "vrteh/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "vrteh/errors.hpp"
#include "vrteh/rng.hpp"

namespace vrteh {
namespace {

void check_rho(double rho, const char* what) {
  if (!std::isfinite(rho) || rho < -1.0 || rho > 1.0) {
    throw domain_error(std::string(what) + " must lie in [-1, 1]");
  }
}

// Compensated accumulator for weighted sums.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

RhoPrior RhoPrior::point_mass(double rho) {
  check_rho(rho, "point-mass rho");
  RhoPrior p;
  p.kind = Kind::point;
  p.value = rho;
  return p;
}

RhoPrior RhoPrior::uniform(double a, double b) {
  check_rho(a, "uniform prior lower edge");
  check_rho(b, "uniform prior upper edge");
  if (!(a < b)) {
    throw domain_error("uniform prior needs a < b");
  }
  RhoPrior p;
  p.kind = Kind::uniform;
  p.a = a;
  p.b = b;
  return p;
}

RhoPrior RhoPrior::discrete(std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty()) {
    throw domain_error("discrete prior needs at least one atom");
  }
  for (const auto& [rho, weight] : atoms) {
    check_rho(rho, "discrete prior atom");
    if (!std::isfinite(weight) || weight <= 0.0) {
      throw domain_error("discrete prior weights must be positive and finite");
    }
  }
  RhoPrior p;
  p.kind = Kind::discrete;
  p.atoms = std::move(atoms);
  return p;
}

const char* to_string(BranchPolicy p) {
  switch (p) {
    case BranchPolicy::equal_weight: return "equal_weight";
    case BranchPolicy::min_only: return "min_only";
    case BranchPolicy::max_only: return "max_only";
  }
  throw domain_error("unknown branch policy");
}

const char* to_string(InfeasiblePolicy p) {
  switch (p) {
    case InfeasiblePolicy::reject: return "reject";
    case InfeasiblePolicy::error_if_all: return "error_if_all";
  }
  throw domain_error("unknown infeasible policy");
}

SigmaDeltaPosterior propagate(double nu, double sigma_tau,
                              const RhoPrior& prior, std::int64_t n_samples,
                              std::uint64_t seed, BranchPolicy branch_policy,
                              InfeasiblePolicy infeasible_policy) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw domain_error("nu must be nonnegative and finite");
  }
  if (!std::isfinite(sigma_tau) || sigma_tau <= 0.0) {
    throw domain_error("sigma_tau must be positive and finite");
  }

  SigmaDeltaPosterior post;
  post.branch_policy = branch_policy;
  post.infeasible_policy = infeasible_policy;

  // Raw (unnormalized) weights accumulate separately for retained samples
  // and dropped mass, so atom enumeration keeps both exact.
  double kept_raw = 0.0;
  double dropped_raw = 0.0;

  const auto take = [&](double rho, double weight) {
    const SolutionSet set = solve_sigma_delta({nu, sigma_tau, rho});
    if (!set.feasible) {
      dropped_raw += weight;
      return;
    }
    if (set.solutions.size() == 2 &&
        branch_policy == BranchPolicy::equal_weight) {
      const double half = 0.5 * weight;
      for (const BranchSolution& s : set.solutions) {
        post.samples.push_back({s.sigma_delta, rho, s.branch, half});
        kept_raw += half;
      }
      return;
    }
    const BranchSolution& s = branch_policy == BranchPolicy::max_only
                                  ? set.solutions.back()
                                  : set.solutions.front();
    post.samples.push_back({s.sigma_delta, rho, s.branch, weight});
    kept_raw += weight;
  };

  switch (prior.kind) {
    case RhoPrior::Kind::point:
      take(prior.value, 1.0);
      break;
    case RhoPrior::Kind::discrete:
      for (const auto& [rho, weight] : prior.atoms) take(rho, weight);
      break;
    case RhoPrior::Kind::uniform: {
      if (n_samples < 1) {
        throw domain_error("uniform prior needs n_samples >= 1");
      }
      constexpr std::int64_t kChunk = 8192;
      RandomStream master(seed);
      for (std::int64_t start = 0; start < n_samples; start += kChunk) {
        RandomStream stream = master.substream(
            static_cast<std::uint64_t>(start / kChunk));
        const std::int64_t stop = std::min(n_samples, start + kChunk);
        for (std::int64_t j = start; j < stop; ++j) {
          take(stream.uniform(prior.a, prior.b), 1.0);
        }
      }
      break;
    }
  }

  if (post.samples.empty()) {
    throw domain_error("all prior mass is infeasible for the given nu");
  }

  post.infeasible_mass = dropped_raw / (kept_raw + dropped_raw);
  for (PosteriorSample& s : post.samples) s.weight /= kept_raw;
  return post;
}

PosteriorSummary summarize(const SigmaDeltaPosterior& post,
                           std::span<const double> quantiles) {
  if (post.samples.empty()) {
    throw domain_error("posterior has no samples");
  }
  for (double q : quantiles) {
    if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
      throw domain_error("quantile levels must lie in [0, 1]");
    }
  }

  PosteriorSummary out;
  out.infeasible_mass = post.infeasible_mass;
  out.n_samples = post.samples.size();

  KahanSum mean_sum;
  KahanSum zero_sum;
  for (const PosteriorSample& s : post.samples) {
    mean_sum.add(s.weight * s.sigma_delta);
    if (s.sigma_delta == 0.0) zero_sum.add(s.weight);
  }
  out.mean = mean_sum.sum;
  out.prob_zero = zero_sum.sum;

  KahanSum var_sum;
  for (const PosteriorSample& s : post.samples) {
    const double d = s.sigma_delta - out.mean;
    var_sum.add(s.weight * d * d);
  }
  out.sd = std::sqrt(std::max(0.0, var_sum.sum));

  if (!quantiles.empty()) {
    std::vector<std::pair<double, double>> ordered;
    ordered.reserve(post.samples.size());
    for (const PosteriorSample& s : post.samples) {
      ordered.emplace_back(s.sigma_delta, s.weight);
    }
    std::sort(ordered.begin(), ordered.end());

    out.quantiles.reserve(quantiles.size());
    for (double q : quantiles) {
      // Lower rule: smallest sample whose cumulative weight reaches q. The
      // slack keeps a level that lands exactly on a cumulative boundary from
      // flipping to the next sample through summation rounding.
      KahanSum cum;
      double value = ordered.back().first;
      for (const auto& [x, w] : ordered) {
        cum.add(w);
        if (cum.sum >= q - 1e-9) {
          value = x;
          break;
        }
      }
      out.quantiles.emplace_back(q, value);
    }
  }
  return out;
}

}  // namespace vrteh
