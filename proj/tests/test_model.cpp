#include <doctest.h>

#include <cmath>

#include "vrteh/errors.hpp"
#include "vrteh/model.hpp"
#include "vrteh/rng.hpp"

using namespace vrteh;

TEST_SUITE("model") {

TEST_CASE("endpoint score evaluates the decomposition") {
  CHECK(endpoint_score({0.0, 0.0, 5.0}, 0) == 0.0);
  CHECK(endpoint_score({2.0, 3.0, 5.0}, 1) == 10.0);
  CHECK(endpoint_score({7.0, 0.0, 0.0}, 1) == 7.0);
  CHECK_THROWS_AS(endpoint_score({0.0, 0.0, 0.0}, 2), domain_error);
  CHECK_THROWS_AS(endpoint_score({0.0, 0.0, 0.0}, -1), domain_error);
}

TEST_CASE("response is endpoint minus baseline") {
  CHECK(response_from_scores(10.0, 2.0) == 8.0);
  for (double x : {-3.5, 0.0, 1e12}) {
    CHECK(response_from_scores(x, x) == 0.0);
  }
}

TEST_CASE("responses never depend on the baseline") {
  RandomStream stream(99);
  for (int i = 0; i < 200; ++i) {
    UnitPotentialOutcomes u{stream.normal(), stream.normal(), stream.normal()};
    for (int arm : {0, 1}) {
      const double response =
          response_from_scores(endpoint_score(u, arm), u.alpha);
      UnitPotentialOutcomes shifted{u.alpha + 17.25, u.tau, u.delta};
      const double shifted_response =
          response_from_scores(endpoint_score(shifted, arm), shifted.alpha);
      // Exact in real arithmetic; the baseline cancellation leaves last-bit
      // noise in floating point.
      CHECK(response == doctest::Approx(shifted_response).epsilon(1e-12));
      CHECK(response == doctest::Approx(u.tau + arm * u.delta).epsilon(1e-12));
    }
  }
}

TEST_CASE("variance gap closed form") {
  CHECK(variance_gap({1.0, 1.0, -0.5}) == 0.0);
  CHECK(variance_gap({1.0, 0.0, 0.3}) == 0.0);
  CHECK(variance_gap({2.0, 1.0, 0.0}) == 1.0);
}

TEST_CASE("variance gap vanishes without heterogeneity") {
  for (double sigma_tau : {0.1, 1.0, 7.5}) {
    for (double rho : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      CHECK(variance_gap({sigma_tau, 0.0, rho}) == 0.0);
    }
  }
}

TEST_CASE("variance gap is bounded below by minus sigma_tau squared") {
  RandomStream stream(7);
  for (int i = 0; i < 2000; ++i) {
    const double sigma_tau = stream.uniform(0.1, 10.0);
    const double sigma_delta = stream.uniform(0.0, 10.0);
    const double rho = stream.uniform(-1.0, 1.0);
    const double gap = variance_gap({sigma_tau, sigma_delta, rho});
    CHECK(gap >= -sigma_tau * sigma_tau - 1e-9 * sigma_tau * sigma_tau);
  }
  // Equality holds exactly at sigma_delta = sigma_tau, rho = -1.
  CHECK(variance_gap({3.0, 3.0, -1.0}) == -9.0);
}

TEST_CASE("moment validation") {
  CHECK_NOTHROW(validate(PopulationMoments{1.0, 0.0, 1.0}));
  CHECK_NOTHROW(validate(PopulationMoments{0.5, 2.0, -1.0}));
  CHECK_THROWS_AS(validate(PopulationMoments{0.0, 1.0, 0.0}), domain_error);
  CHECK_THROWS_AS(validate(PopulationMoments{-1.0, 1.0, 0.0}), domain_error);
  CHECK_THROWS_AS(validate(PopulationMoments{1.0, -0.1, 0.0}), domain_error);
  CHECK_THROWS_AS(validate(PopulationMoments{1.0, 1.0, 1.5}), domain_error);
  CHECK_THROWS_AS(validate(PopulationMoments{1.0, 1.0, std::nan("")}),
                  domain_error);
}

}  // TEST_SUITE
