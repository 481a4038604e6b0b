#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "vrteh/bayes.hpp"
#include "vrteh/errors.hpp"

using namespace vrteh;

TEST_SUITE("bayes") {

TEST_CASE("prior validation") {
  CHECK_THROWS_AS(RhoPrior::point_mass(1.5), domain_error);
  CHECK_THROWS_AS(RhoPrior::point_mass(std::nan("")), domain_error);
  CHECK_THROWS_AS(RhoPrior::uniform(0.0, 0.0), domain_error);
  CHECK_THROWS_AS(RhoPrior::uniform(0.5, -0.5), domain_error);
  CHECK_THROWS_AS(RhoPrior::uniform(-2.0, 1.0), domain_error);
  CHECK_THROWS_AS(RhoPrior::discrete({}), domain_error);
  CHECK_THROWS_AS(RhoPrior::discrete({{0.0, -1.0}}), domain_error);
  CHECK_THROWS_AS(RhoPrior::discrete({{0.0, 0.0}}), domain_error);
  CHECK_THROWS_AS(RhoPrior::discrete({{1.2, 1.0}}), domain_error);
  CHECK_NOTHROW(RhoPrior::point_mass(-1.0));
  CHECK_NOTHROW(RhoPrior::uniform(-1.0, 1.0));
}

TEST_CASE("point prior reproduces the deterministic solver") {
  const double nu = std::sqrt(2.0);
  const SigmaDeltaPosterior post =
      propagate(nu, 1.0, RhoPrior::point_mass(0.0), 1, 99);
  REQUIRE(post.samples.size() == 1);
  const SolutionSet set = solve_sigma_delta({nu, 1.0, 0.0});
  CHECK(post.samples[0].sigma_delta == set.solutions[0].sigma_delta);
  CHECK(post.samples[0].rho == 0.0);
  CHECK(post.samples[0].weight == 1.0);
  CHECK(post.infeasible_mass == 0.0);
}

TEST_CASE("point prior in the dual region honors the branch policy") {
  const RhoPrior prior = RhoPrior::point_mass(-0.5);

  const SigmaDeltaPosterior both =
      propagate(1.0, 1.0, prior, 1, 0, BranchPolicy::equal_weight);
  REQUIRE(both.samples.size() == 2);
  CHECK(both.samples[0].sigma_delta == 0.0);
  CHECK(both.samples[0].branch == Branch::minus);
  CHECK(both.samples[0].weight == 0.5);
  CHECK(both.samples[1].sigma_delta == 1.0);
  CHECK(both.samples[1].branch == Branch::plus);
  CHECK(both.samples[1].weight == 0.5);

  const SigmaDeltaPosterior lo =
      propagate(1.0, 1.0, prior, 1, 0, BranchPolicy::min_only);
  REQUIRE(lo.samples.size() == 1);
  CHECK(lo.samples[0].sigma_delta == 0.0);
  CHECK(lo.samples[0].weight == 1.0);

  const SigmaDeltaPosterior hi =
      propagate(1.0, 1.0, prior, 1, 0, BranchPolicy::max_only);
  REQUIRE(hi.samples.size() == 1);
  CHECK(hi.samples[0].sigma_delta == 1.0);
}

TEST_CASE("fully infeasible prior is an error under both policies") {
  const RhoPrior prior = RhoPrior::point_mass(0.9);
  CHECK_THROWS_AS(propagate(0.5, 1.0, prior, 1, 0, BranchPolicy::equal_weight,
                            InfeasiblePolicy::reject),
                  domain_error);
  CHECK_THROWS_AS(propagate(0.5, 1.0, prior, 1, 0, BranchPolicy::equal_weight,
                            InfeasiblePolicy::error_if_all),
                  domain_error);
  // A uniform prior whose whole support is infeasible fails the same way.
  CHECK_THROWS_AS(
      propagate(0.5, 1.0, RhoPrior::uniform(0.1, 0.9), 1000, 3),
      domain_error);
}

TEST_CASE("discrete priors are enumerated exactly") {
  const RhoPrior prior =
      RhoPrior::discrete({{-0.5, 2.0}, {0.25, 1.0}, {0.8, 1.0}});
  const SigmaDeltaPosterior post = propagate(0.9, 1.0, prior, 1, 0);
  CHECK(post.infeasible_mass == 0.5);
  REQUIRE(post.samples.size() == 2);
  CHECK(post.samples[0].sigma_delta ==
        doctest::Approx(0.2550510257216822).epsilon(1e-15));
  CHECK(post.samples[0].branch == Branch::minus);
  CHECK(post.samples[0].weight == 0.5);
  CHECK(post.samples[1].sigma_delta ==
        doctest::Approx(0.7449489742783178).epsilon(1e-15));
  CHECK(post.samples[1].branch == Branch::plus);
  CHECK(post.samples[1].weight == 0.5);
  CHECK(post.samples[0].rho == -0.5);

  // n_samples plays no role for atom enumeration.
  const SigmaDeltaPosterior again = propagate(0.9, 1.0, prior, 1000000, 77);
  REQUIRE(again.samples.size() == post.samples.size());
  for (std::size_t i = 0; i < post.samples.size(); ++i) {
    CHECK(again.samples[i].sigma_delta == post.samples[i].sigma_delta);
    CHECK(again.samples[i].weight == post.samples[i].weight);
  }
}

TEST_CASE("uniform prior posterior matches the quadrature oracle") {
  // nu=1 with rho ~ uniform(-1,0): every draw is dual with roots
  // {0, -2 rho}, so the equal-weight posterior mean is E[-rho] = 0.5 and
  // exactly half the mass sits at zero.
  const std::int64_t n = 100000;
  const SigmaDeltaPosterior post =
      propagate(1.0, 1.0, RhoPrior::uniform(-1.0, 0.0), n, 7);
  CHECK(post.infeasible_mass == 0.0);
  CHECK(post.samples.size() == 2 * static_cast<std::size_t>(n));

  const std::vector<double> qs{0.25, 0.5, 0.9};
  const PosteriorSummary s = summarize(post, qs);
  const double se = (1.0 / std::sqrt(12.0)) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(s.mean - 0.5) < 3.0 * se);
  CHECK(s.prob_zero == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(s.quantiles[0].second == 0.0);  // cumulative zero mass is 0.5
  CHECK(s.quantiles[1].second == 0.0);
  CHECK(s.quantiles[2].second > 0.0);
  CHECK(s.n_samples == post.samples.size());
}

TEST_CASE("uniform prior with partially infeasible support") {
  // nu=0.8: feasible exactly when rho <= -0.6, so uniform(-1,1) keeps one
  // fifth of its mass and the posterior mean is E[-rho | kept] = 0.8.
  const std::int64_t n = 200000;
  const SigmaDeltaPosterior post =
      propagate(0.8, 1.0, RhoPrior::uniform(-1.0, 1.0), n, 11);
  const double mass_se = std::sqrt(0.8 * 0.2 / static_cast<double>(n));
  CHECK(std::abs(post.infeasible_mass - 0.8) < 4.0 * mass_se);

  const PosteriorSummary s = summarize(post, {});
  const double kept = static_cast<double>(n) * 0.2;
  const double mean_se = std::sqrt(0.4 * 0.4 / 12.0) / std::sqrt(kept);
  CHECK(std::abs(s.mean - 0.8) < 4.0 * mean_se);
  CHECK(s.infeasible_mass == post.infeasible_mass);
}

TEST_CASE("posterior weights are normalized") {
  const SigmaDeltaPosterior post =
      propagate(0.9, 1.0, RhoPrior::uniform(-1.0, 0.0), 50000, 5);
  double total = 0.0;
  for (const PosteriorSample& s : post.samples) {
    CHECK(s.weight > 0.0);
    total += s.weight;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("determinism and substream chunking") {
  const RhoPrior prior = RhoPrior::uniform(-1.0, 0.0);
  const SigmaDeltaPosterior a = propagate(1.0, 1.0, prior, 20000, 42);
  const SigmaDeltaPosterior b = propagate(1.0, 1.0, prior, 20000, 42);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].sigma_delta == b.samples[i].sigma_delta);
    CHECK(a.samples[i].rho == b.samples[i].rho);
    CHECK(a.samples[i].weight == b.samples[i].weight);
  }

  const SigmaDeltaPosterior c = propagate(1.0, 1.0, prior, 20000, 43);
  CHECK(c.samples[0].rho != a.samples[0].rho);

  // Draw j comes from chunk j / 8192 regardless of n_samples, so a longer
  // run extends a shorter one draw for draw (weights differ only by the
  // normalizing constant).
  const SigmaDeltaPosterior head = propagate(1.0, 1.0, prior, 8192, 42);
  for (std::size_t i = 0; i < 200; ++i) {
    CHECK(head.samples[i].rho == a.samples[i].rho);
    CHECK(head.samples[i].sigma_delta == a.samples[i].sigma_delta);
  }
}

TEST_CASE("branch policies are monotone per draw") {
  const RhoPrior prior = RhoPrior::uniform(-1.0, 0.0);
  const double nu = 0.9;
  const SigmaDeltaPosterior lo =
      propagate(nu, 1.0, prior, 5000, 13, BranchPolicy::min_only);
  const SigmaDeltaPosterior mid =
      propagate(nu, 1.0, prior, 5000, 13, BranchPolicy::equal_weight);
  const SigmaDeltaPosterior hi =
      propagate(nu, 1.0, prior, 5000, 13, BranchPolicy::max_only);
  REQUIRE(lo.samples.size() == hi.samples.size());
  REQUIRE(mid.samples.size() == 2 * lo.samples.size());
  for (std::size_t k = 0; k < lo.samples.size(); ++k) {
    CHECK(lo.samples[k].sigma_delta <= hi.samples[k].sigma_delta);
    CHECK(mid.samples[2 * k].sigma_delta == lo.samples[k].sigma_delta);
    CHECK(mid.samples[2 * k + 1].sigma_delta == hi.samples[k].sigma_delta);
  }
  CHECK(lo.infeasible_mass == hi.infeasible_mass);
}

TEST_CASE("summary of a hand-built posterior") {
  SigmaDeltaPosterior post;
  post.samples = {{1.0, -0.5, Branch::minus, 0.25},
                  {2.0, -0.5, Branch::plus, 0.25},
                  {3.0, -0.4, Branch::plus, 0.5}};
  const std::vector<double> qs{0.0, 0.25, 0.251, 0.5, 1.0};
  const PosteriorSummary s = summarize(post, qs);
  CHECK(s.mean == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(s.sd == doctest::Approx(0.82915619758884996).epsilon(1e-14));
  CHECK(s.prob_zero == 0.0);
  CHECK(s.quantiles[0].second == 1.0);
  CHECK(s.quantiles[1].second == 1.0);  // boundary resolves downward
  CHECK(s.quantiles[2].second == 2.0);
  CHECK(s.quantiles[3].second == 2.0);
  CHECK(s.quantiles[4].second == 3.0);

  CHECK_THROWS_AS(summarize(post, std::vector<double>{1.5}), domain_error);
  CHECK_THROWS_AS(summarize(post, std::vector<double>{-0.1}), domain_error);
  CHECK_THROWS_AS(summarize(SigmaDeltaPosterior{}, qs), domain_error);
}

TEST_CASE("degenerate point summary") {
  const SigmaDeltaPosterior post =
      propagate(std::sqrt(2.0), 1.0, RhoPrior::point_mass(0.0), 1, 0);
  const std::vector<double> qs{0.1, 0.5, 0.9};
  const PosteriorSummary s = summarize(post, qs);
  CHECK(s.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.sd == 0.0);
  for (const auto& [q, v] : s.quantiles) {
    CHECK(v == s.mean);
  }
  CHECK(s.prob_zero == 0.0);
}

TEST_CASE("policy names") {
  CHECK(std::string(to_string(BranchPolicy::equal_weight)) == "equal_weight");
  CHECK(std::string(to_string(BranchPolicy::min_only)) == "min_only");
  CHECK(std::string(to_string(BranchPolicy::max_only)) == "max_only");
  CHECK(std::string(to_string(InfeasiblePolicy::reject)) == "reject");
  CHECK(std::string(to_string(InfeasiblePolicy::error_if_all)) ==
        "error_if_all");
}

}  // TEST_SUITE
