#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "dynreg/domain.hpp"
#include "dynreg/prox.hpp"
#include "dynreg/rng.hpp"
#include "test_util.hpp"

using namespace dynreg;
using dynreg::test::dvec;
using dynreg::test::random_feasible_point;

namespace {

double prox_objective(const Regularizer& reg, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& x_prime, double step) {
  return reg.value(x) + (x - x_prime).squaredNorm() / (2.0 * step);
}

}  // namespace

TEST_CASE("regularizer values and subgradients") {
  const Regularizer zero = Regularizer::zero();
  const Regularizer l1 = Regularizer::l1(0.5);
  const Regularizer indicator = Regularizer::indicator_of_domain();

  CHECK(zero.kind() == RegularizerKind::Zero);
  CHECK(l1.kind() == RegularizerKind::L1);
  CHECK(l1.weight() == 0.5);
  CHECK(indicator.kind() == RegularizerKind::IndicatorOfDomain);

  CHECK(zero.value(dvec({3.0, -4.0})) == 0.0);
  CHECK(indicator.value(dvec({3.0, -4.0})) == 0.0);
  CHECK(l1.value(dvec({1.0, -2.0})) == doctest::Approx(1.5).epsilon(1e-15));

  CHECK(zero.subgradient(dvec({1.0, 2.0})) == dvec({0.0, 0.0}));
  CHECK(l1.subgradient(dvec({1.0, -2.0})) == dvec({0.5, -0.5}));
  // Zero element of the subdifferential at the kink.
  CHECK(l1.subgradient(dvec({0.0}))[0] == 0.0);

  CHECK(l1 == Regularizer::l1(0.5));
  CHECK_FALSE(l1 == Regularizer::l1(0.25));
  CHECK_FALSE(l1 == zero);

  CHECK_THROWS_WITH_AS(Regularizer::l1(-1.0), "l1 weight must be nonnegative",
                       std::invalid_argument);
}

TEST_CASE("prox of the zero regularizer is projection") {
  const DomainSpec box = make_box_domain(dvec({-10.0}), dvec({10.0}), 1.0);
  CHECK(prox(Regularizer::zero(), box, dvec({2.0}), 1.0) == dvec({2.0}));

  const DomainSpec ball = make_ball_domain(dvec({0.0, 0.0}), 1.0, 1.0);
  const Eigen::VectorXd p = prox(Regularizer::zero(), ball, dvec({3.0, 4.0}), 0.5);
  CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-14));

  // The indicator regularizer behaves identically.
  CHECK(prox(Regularizer::indicator_of_domain(), ball, dvec({3.0, 4.0}), 2.0) ==
        project(ball, dvec({3.0, 4.0})));
}

TEST_CASE("l1 prox on a box soft-thresholds then clamps") {
  const DomainSpec box = make_box_domain(dvec({-10.0}), dvec({10.0}), 1.0);
  CHECK(prox(Regularizer::l1(0.5), box, dvec({2.0}), 1.0)[0] ==
        doctest::Approx(1.5).epsilon(1e-14));
  CHECK(prox(Regularizer::l1(5.0), box, dvec({2.0}), 1.0)[0] == 0.0);
  CHECK(prox(Regularizer::l1(0.5), box, dvec({-2.0}), 1.0)[0] ==
        doctest::Approx(-1.5).epsilon(1e-14));

  // Grid cross-check at a non-unit step.
  const double step = 0.7;
  const Regularizer reg = Regularizer::l1(0.5);
  const Eigen::VectorXd p = prox(reg, box, dvec({2.0}), step);
  double best = 1e300;
  double arg = 0.0;
  for (double x = -3.0; x <= 3.0; x += 1e-4) {
    const double value = prox_objective(reg, dvec({x}), dvec({2.0}), step);
    if (value < best) {
      best = value;
      arg = x;
    }
  }
  CHECK(std::abs(p[0] - arg) <= 2e-4);
  CHECK(p[0] == doctest::Approx(2.0 - 0.35).epsilon(1e-12));
}

TEST_CASE("l1 prox on a ball is optimal against random feasible probes") {
  const DomainSpec ball = make_ball_domain(dvec({0.0, 0.0}), 1.0, 1.0);
  const Regularizer reg = Regularizer::l1(0.3);
  const double step = 0.5;
  for (const auto& x_prime : {dvec({3.0, -0.2}), dvec({0.1, -0.05}), dvec({-0.9, 0.9})}) {
    const Eigen::VectorXd p = prox(reg, ball, x_prime, step);
    CHECK(membership_residual(ball, p) <= 1e-9);
    const double attained = prox_objective(reg, p, x_prime, step);
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd z = random_feasible_point(ball, 77, static_cast<std::uint64_t>(k));
      CHECK(attained <= prox_objective(reg, z, x_prime, step) + 1e-7);
    }
  }
}

TEST_CASE("prox is nonexpansive for every regularizer kind") {
  const DomainSpec ball = make_ball_domain(dvec({0.0, 0.0, 0.0}), 1.0, 1.0);
  const DomainSpec box = make_box_domain(dvec({-1.0, -1.0, -1.0}), dvec({1.0, 1.0, 1.0}), 1.0);
  const Regularizer kinds[] = {Regularizer::zero(), Regularizer::l1(0.4),
                               Regularizer::indicator_of_domain()};
  for (const DomainSpec& domain : {ball, box}) {
    for (const Regularizer& reg : kinds) {
      for (int k = 0; k < 50; ++k) {
        Eigen::VectorXd a(3), b(3);
        for (int i = 0; i < 3; ++i) {
          a[i] = 6.0 * uniform01(11, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i)) -
                 3.0;
          b[i] = 6.0 * uniform01(12, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i)) -
                 3.0;
        }
        const double lhs = (prox(reg, domain, a, 0.8) - prox(reg, domain, b, 0.8)).norm();
        CHECK(lhs <= (a - b).norm() + 1e-12);
      }
    }
  }
}

TEST_CASE("prox approaches projection as the step vanishes") {
  const DomainSpec ball = make_ball_domain(dvec({0.0, 0.0}), 1.0, 1.0);
  const DomainSpec box = make_box_domain(dvec({-1.0, -1.0}), dvec({1.0, 1.0}), 1.0);
  for (const DomainSpec& domain : {ball, box}) {
    for (const auto& x_prime : {dvec({2.0, -1.5}), dvec({0.2, 0.1})}) {
      const Eigen::VectorXd p = prox(Regularizer::l1(0.7), domain, x_prime, 1e-12);
      CHECK((p - project(domain, x_prime)).norm() <= 1e-6);
    }
  }
}

TEST_CASE("prox validates its inputs") {
  const DomainSpec box = make_box_domain(dvec({-1.0}), dvec({1.0}), 1.0);
  CHECK_THROWS_WITH_AS(prox(Regularizer::zero(), box, dvec({0.0}), 0.0), "nonpositive step",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(prox(Regularizer::zero(), box, dvec({0.0}), -1.0), "nonpositive step",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(prox(Regularizer::zero(), box, dvec({0.0, 1.0}), 1.0),
                       "point dimension mismatch", std::invalid_argument);
}
