#include "doctest.h"
#include "mosp/transition.hpp"

using namespace mosp;

TEST_CASE("transition time matches the piecewise model") {
  CHECK(transition_time(0.0) == doctest::Approx(35.0 / 3.0).epsilon(1e-12));
  CHECK(transition_time(5.0) == doctest::Approx(35.0 / 3.0).epsilon(1e-12));
  CHECK(transition_time(10.0) == doctest::Approx(35.0 / 3.0).epsilon(1e-12));
  CHECK(transition_time(30.0) == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(transition_time(60.0) == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(transition_time(90.0) == doctest::Approx(52.0).epsilon(1e-12));
  CHECK(transition_time(100.0) == doctest::Approx(166.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("transition time is continuous at every breakpoint") {
  for (const double b : {10.0, 30.0, 60.0, 90.0}) {
    const double left = transition_time(b);
    const double right = transition_time(b + 1e-12);
    CHECK(std::abs(left - right) < 1e-9);
  }
}

TEST_CASE("transition time is nondecreasing") {
  double prev = transition_time(0.0);
  for (double d = 0.0; d <= 400.0; d += 0.25) {
    const double cur = transition_time(d);
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("transition time rejects negative input") {
  CHECK_THROWS_AS(transition_time(-1.0), std::invalid_argument);
}

TEST_CASE("attitude delta is the absolute component sum") {
  CHECK(attitude_delta_deg({0, 0, 0}, {0, 0, 0}) == 0.0);
  CHECK(attitude_delta_deg({10, -5, 0}, {0, 0, 0}) == doctest::Approx(15.0));
  const AttitudeTriple a{3.5, -2.0, 11.0};
  const AttitudeTriple b{-1.0, 4.0, -7.5};
  CHECK(attitude_delta_deg(a, b) == attitude_delta_deg(b, a));
}
