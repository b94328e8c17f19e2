#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dynreg/analysis.hpp"
#include "dynreg/schedule.hpp"
#include "dynreg/sequence.hpp"

using namespace dynreg;

TEST_CASE("closed-form walk expectation reproduces hand values") {
  // E|S_2| = (2/4) * C(2,1) = 1 and E|S_4| = (4/16) * C(4,2) = 3/2.
  CHECK(walk_expectation_closed_form(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(walk_expectation_closed_form(4) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::abs(walk_expectation_closed_form(100) - 7.958923738717876) <= 1e-13);

  CHECK_THROWS_WITH_AS(walk_expectation_closed_form(0),
                       "closed form requires a positive even horizon",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(walk_expectation_closed_form(3),
                       "closed form requires a positive even horizon",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(walk_expectation_closed_form(-2),
                       "closed form requires a positive even horizon",
                       std::invalid_argument);
}

TEST_CASE("enumeration and closed form agree on small horizons") {
  CHECK(walk_expectation_enumeration(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(walk_expectation_enumeration(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(walk_expectation_enumeration(3) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(walk_expectation_enumeration(4) == doctest::Approx(1.5).epsilon(1e-15));
  for (int horizon = 2; horizon <= 24; horizon += 2) {
    CHECK(std::abs(walk_expectation_enumeration(horizon) -
                   walk_expectation_closed_form(horizon)) <= 1e-12);
  }
  CHECK_THROWS_WITH_AS(walk_expectation_enumeration(0), "horizon must be positive",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(walk_expectation_enumeration(25),
                       "enumeration limited to horizon <= 24", std::invalid_argument);
}

TEST_CASE("the walk expectation satisfies its recurrence across the evaluation seam") {
  // E|S_{T+2}| = E|S_T| * (T+1)/T for even T, provable from the binomial form;
  // holding across T = 60 confirms the two evaluation strategies splice cleanly.
  for (int horizon = 2; horizon <= 200; horizon += 2) {
    const double left = walk_expectation_closed_form(horizon + 2);
    const double right = walk_expectation_closed_form(horizon) *
                         (static_cast<double>(horizon) + 1.0) /
                         static_cast<double>(horizon);
    CHECK(std::abs(left - right) <= 1e-12 * std::max(1.0, std::abs(right)));
  }
}

TEST_CASE("the walk expectation dominates the square-root floor") {
  for (int horizon = 2; horizon <= 1000; horizon += 2)
    CHECK(walk_expectation_closed_form(horizon) >=
          std::sqrt(static_cast<double>(horizon) / 2.0));
  for (int horizon = 3; horizon <= 23; horizon += 2)
    CHECK(walk_expectation_enumeration(horizon) >=
          std::sqrt(static_cast<double>(horizon) / 2.0) - 1.0);
}

TEST_CASE("central binomial ratio keeps its lower bound") {
  CHECK(central_binomial_ratio(1) == doctest::Approx(0.5).epsilon(1e-12));
  for (int n = 2; n <= 500; ++n) {
    const double ratio = central_binomial_ratio(n);
    CHECK(ratio >= 1.0 / (2.0 * std::sqrt(static_cast<double>(n))));
    CHECK(ratio <= 1.0);
  }
  CHECK_THROWS_WITH_AS(central_binomial_ratio(0), "n must be positive",
                       std::invalid_argument);
}

TEST_CASE("the power-series partial sum stays below its integral bound") {
  SUBCASE("hand values") {
    const SeriesBoundCheck flat = series_bound_check(0.0, 5);
    CHECK(flat.lhs == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(flat.rhs == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(flat.ok);

    const SeriesBoundCheck half = series_bound_check(0.5, 4);
    CHECK(half.lhs == doctest::Approx(2.7844570503761733).epsilon(1e-12));
    CHECK(half.rhs == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(half.ok);

    CHECK(series_bound_check(0.9, 1).ok);
  }
  SUBCASE("invalid exponents") {
    CHECK_THROWS_WITH_AS(series_bound_check(1.0, 10), "invalid exponent",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(series_bound_check(-0.1, 10), "invalid exponent",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(series_bound_check(0.5, 0), "horizon must be positive",
                         std::invalid_argument);
  }
  SUBCASE("subsampled grid") {
    for (const double gamma : {0.0, 0.3, 0.5, 0.7, 0.9})
      for (const int horizon : {1, 10, 100, 1000, 10000}) {
        const SeriesBoundCheck check = series_bound_check(gamma, horizon);
        CHECK(check.ok);
        CHECK(check.lhs <= check.rhs + 1e-12);
      }
  }
  SUBCASE("incremental sweep over every horizon up to ten thousand") {
    for (const double gamma : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      double partial = 0.0;
      for (int t = 1; t <= 10000; ++t) {
        partial += std::pow(static_cast<double>(t), -gamma);
        const double integral_bound =
            std::pow(static_cast<double>(t), 1.0 - gamma) / (1.0 - gamma);
        REQUIRE(partial <= integral_bound + 1e-9);
      }
    }
  }
}

TEST_CASE("the sampled walk mean sits in its confidence band") {
  SUBCASE("tiny horizons have exact references") {
    const WalkBoundCheck two = l1_walk_lower_bound_check(1, 2, 2000, 99);
    REQUIRE(two.exact_mean.has_value());
    CHECK(*two.exact_mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(two.seeds == 2000);
    CHECK(std::abs(two.empirical_mean - 1.0) <= 5.0 * two.std_error);
    CHECK(two.ok);

    const WalkBoundCheck triple = l1_walk_lower_bound_check(3, 2, 2000, 7);
    REQUIRE(triple.exact_mean.has_value());
    CHECK(*triple.exact_mean == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("the long horizon matches the closed form") {
    const WalkBoundCheck check = l1_walk_lower_bound_check(1, 100, 4000, 2026);
    REQUIRE(check.exact_mean.has_value());
    CHECK(*check.exact_mean == doctest::Approx(7.958923738717876).epsilon(1e-12));
    CHECK(std::abs(check.empirical_mean - *check.exact_mean) <= 5.0 * check.std_error);
    // The reported floor holds at every parity: d * (sqrt(T/2) - 1).
    CHECK(check.floor == doctest::Approx(std::sqrt(50.0) - 1.0).epsilon(1e-12));
    CHECK(check.ok);
  }
  SUBCASE("odd horizons only check the floor") {
    const WalkBoundCheck check = l1_walk_lower_bound_check(1, 99, 2000, 5);
    CHECK_FALSE(check.exact_mean.has_value());
    CHECK(check.ok);
  }
  SUBCASE("guards") {
    CHECK_THROWS_WITH_AS(l1_walk_lower_bound_check(1, 10, 999, 1),
                         "walk check needs dimension >= 1, horizon >= 1, seeds >= 1000",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(l1_walk_lower_bound_check(0, 10, 2000, 1),
                         "walk check needs dimension >= 1, horizon >= 1, seeds >= 1000",
                         std::invalid_argument);
  }
}

TEST_CASE("the regret guarantee from a schedule matches hand evaluation") {
  SUBCASE("constant steps with a still comparator") {
    // R/(2 eta) + (G/2) T eta with R = 1, G = 1, eta = 1/10, T = 100.
    const Schedule schedule = Schedule::constant(0.1, 100);
    const double bound = pog_regret_bound(schedule, make_dynamics_budget(0.0, 0.0), 1.0,
                                          1.0, 0.0, 0.0);
    CHECK(bound == doctest::Approx(5.0 + 5.0).epsilon(1e-12));
  }
  SUBCASE("tuned flat schedule recovers the same number") {
    const Schedule schedule = make_dynamics_tuned_schedule(0.0, 0.0, 0.0, 1.0, 1.0, 100);
    const double bound = pog_regret_bound(schedule, make_dynamics_budget(0.0, 0.0), 1.0,
                                          1.0, 0.0, 0.0);
    CHECK(bound == doctest::Approx(10.0).epsilon(1e-9));
  }
  SUBCASE("regularizer endpoints shift the bound additively") {
    const Schedule schedule = Schedule::constant(0.1, 100);
    const double base = pog_regret_bound(schedule, make_dynamics_budget(0.0, 0.0), 1.0,
                                         1.0, 0.0, 0.0);
    const double shifted = pog_regret_bound(schedule, make_dynamics_budget(0.0, 0.0), 1.0,
                                            1.0, 0.7, 0.2);
    CHECK(shifted == doctest::Approx(base + 0.5).epsilon(1e-12));
  }
  SUBCASE("a nonpositive step is rejected") {
    CHECK_THROWS_WITH_AS(Schedule::constant(0.0, 10), "step size must be positive",
                         std::invalid_argument);
  }
}

TEST_CASE("the closed-form guarantee matches its displayed expression") {
  SUBCASE("hand value at the flat tuning") {
    // sqrt(2 * 1 * 0 + ...) terms: with D = 0, R = G = 1, T = 100, gamma = 0,
    // the expression is sqrt(100 / 4) = 5.
    const double bound = pog_regret_bound_closed_form(0.0, make_dynamics_budget(0.0, 0.0),
                                                      1.0, 1.0, 100, 0.0, 0.0);
    CHECK(bound == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("identity against a manual evaluation") {
    for (const double gamma : {0.25, 0.5, 0.75})
      for (const double beta : {0.0, 0.25})
        for (const double d_beta : {0.0, 1.0, 6.0})
          for (const int horizon : {10, 1000}) {
            if (beta > gamma) continue;
            const double r = 4.0, g = 9.0, h1 = 0.3, hT = 0.1;
            const double manual =
                std::sqrt(2.0 * g * std::sqrt(r) * d_beta *
                          std::pow(static_cast<double>(horizon), 1.0 - beta) /
                          (1.0 - gamma)) +
                std::sqrt(g * r * static_cast<double>(horizon) / (4.0 * (1.0 - gamma))) +
                h1 - hT;
            const double reported = pog_regret_bound_closed_form(
                gamma, make_dynamics_budget(beta, d_beta), r, g, horizon, h1, hT);
            CHECK(reported == doctest::Approx(manual).epsilon(1e-12));
          }
  }
  SUBCASE("exponent validation") {
    CHECK_THROWS_WITH_AS(pog_regret_bound_closed_form(
                             0.2, make_dynamics_budget(0.5, 1.0), 1.0, 1.0, 10, 0.0, 0.0),
                         "invalid exponent", std::invalid_argument);
    CHECK_THROWS_WITH_AS(pog_regret_bound_closed_form(
                             1.0, make_dynamics_budget(0.0, 1.0), 1.0, 1.0, 10, 0.0, 0.0),
                         "invalid exponent", std::invalid_argument);
  }
}

TEST_CASE("the exact-scan guarantee implies a provable closed form") {
  // With B := sqrt(R) D T^{gamma-beta} + R T^gamma / 2 the tuned schedule gives
  // exact-scan <= sqrt(G (2 sqrt(R) D T^{1-beta} + R T) / (1-gamma)), and
  // splitting the square root term-by-term yields the displayed shape with the
  // second term's denominator at (1-gamma) instead of 4(1-gamma).  The scan
  // must sit below that relaxed expression on a broad parameter grid.
  for (const double gamma : {0.0, 0.25, 0.5, 0.75, 0.9})
    for (const double beta : {0.0, 0.25, 0.5}) {
      if (beta > gamma) continue;
      for (const double d_beta : {0.0, 1.0, 7.0})
        for (const double r : {1.0, 4.0})
          for (const double g : {1.0, 9.0})
            for (const int horizon : {1, 10, 100, 1000}) {
              const Schedule schedule =
                  make_dynamics_tuned_schedule(gamma, beta, d_beta, r, g, horizon);
              const double h1 = 0.3, hT = 0.1;
              const double scan = pog_regret_bound(
                  schedule, make_dynamics_budget(beta, d_beta), r, g, h1, hT);
              const double relaxed =
                  std::sqrt(2.0 * g * std::sqrt(r) * d_beta *
                            std::pow(static_cast<double>(horizon), 1.0 - beta) /
                            (1.0 - gamma)) +
                  std::sqrt(g * r * static_cast<double>(horizon) / (1.0 - gamma)) + h1 -
                  hT;
              REQUIRE(scan <= relaxed + 1e-9 * std::max(1.0, std::abs(relaxed)));
            }
    }
}

TEST_CASE("the adversarial floor matches hand evaluation") {
  CHECK(adversarial_regret_floor(make_dynamics_budget(0.0, 0.0), 100) ==
        doctest::Approx(10.0).epsilon(1e-12));
  CHECK(adversarial_regret_floor(make_dynamics_budget(0.0, 4.0), 100) ==
        doctest::Approx(30.0).epsilon(1e-12));
  CHECK(adversarial_regret_floor(make_dynamics_budget(0.5, 10.0), 100) ==
        doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("shift budgets convert to path budgets through the diameter") {
  CHECK(shift_to_path_budget(make_shift_budget(0), 4.0) == 0.0);
  CHECK(shift_to_path_budget(make_shift_budget(3), 4.0) ==
        doctest::Approx(6.0).epsilon(1e-12));
  CHECK(shift_to_path_budget(make_shift_budget(1), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the log-log slope recovers exact power laws") {
  SUBCASE("pure power law") {
    std::vector<std::pair<double, double>> points;
    for (const double t : {8.0, 64.0, 512.0, 4096.0})
      points.emplace_back(t, 3.0 * std::pow(t, 0.62));
    CHECK(log_log_slope(points) == doctest::Approx(0.62).epsilon(1e-12));
  }
  SUBCASE("nonpositive values are skipped") {
    std::vector<std::pair<double, double>> points{{8.0, 2.0}, {16.0, -1.0}, {32.0, 4.0}};
    CHECK(log_log_slope(points) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("degenerate inputs are rejected") {
    std::vector<std::pair<double, double>> one{{8.0, 2.0}};
    CHECK_THROWS_WITH_AS(log_log_slope(one), "slope needs at least two positive points",
                         std::invalid_argument);
    std::vector<std::pair<double, double>> bad{{8.0, -2.0}, {16.0, -4.0}};
    CHECK_THROWS_WITH_AS(log_log_slope(bad), "slope needs at least two positive points",
                         std::invalid_argument);
  }
}
