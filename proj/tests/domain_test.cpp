#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "dynreg/domain.hpp"
#include "dynreg/prox.hpp"
#include "test_util.hpp"

using namespace dynreg;
using dynreg::test::dvec;

TEST_CASE("ball factory computes the squared diameter exactly") {
  const DomainSpec ball = make_ball_domain(dvec({0.0, 0.0}), 1.0, 9.0);
  CHECK(ball.kind == DomainKind::EuclideanBall);
  CHECK(ball.dimension == 2);
  CHECK(ball.radius == 1.0);
  CHECK(ball.diameter_sq_bound == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(ball.subgrad_sq_bound == 9.0);
  CHECK(ball.center_point() == dvec({0.0, 0.0}));

  const DomainSpec shifted = make_ball_domain(dvec({2.0}), 0.25, 1.0);
  CHECK(shifted.diameter_sq_bound == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(shifted.center_point()[0] == 2.0);
}

TEST_CASE("box factory computes the squared diameter exactly") {
  const DomainSpec box = make_box_domain(dvec({0.0, 0.0}), dvec({1.0, 2.0}), 4.0);
  CHECK(box.kind == DomainKind::Box);
  CHECK(box.dimension == 2);
  CHECK(box.diameter_sq_bound == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(box.center_point() == dvec({0.5, 1.0}));
}

TEST_CASE("domain factories validate their inputs") {
  CHECK_THROWS_WITH_AS(make_ball_domain(dvec({0.0}), 0.0, 1.0), "ball radius must be positive",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_ball_domain(dvec({0.0}), -1.0, 1.0), "ball radius must be positive",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_ball_domain(Eigen::VectorXd(), 1.0, 1.0),
                       "domain dimension must be positive", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_ball_domain(dvec({0.0}), 1.0, 0.0),
                       "subgradient bound must be positive", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_box_domain(Eigen::VectorXd(), Eigen::VectorXd(), 1.0),
                       "domain dimension must be positive", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_box_domain(dvec({0.0}), dvec({1.0, 2.0}), 1.0),
                       "box bounds must have equal size", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_box_domain(dvec({0.0, 1.0}), dvec({1.0, 1.0}), 1.0),
                       "box upper bound must exceed lower bound", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_box_domain(dvec({0.0}), dvec({1.0}), -2.0),
                       "subgradient bound must be positive", std::invalid_argument);
}

TEST_CASE("projection onto the unit ball") {
  const DomainSpec ball = make_ball_domain(dvec({0.0, 0.0}), 1.0, 1.0);

  SUBCASE("interior points are fixed") {
    const Eigen::VectorXd p = project(ball, dvec({0.3, 0.4}));
    CHECK(p == dvec({0.3, 0.4}));
  }
  SUBCASE("exterior points scale radially") {
    const Eigen::VectorXd p = project(ball, dvec({3.0, 4.0}));
    CHECK(p[0] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-14));
    // Colinearity with the input direction.
    CHECK(p[1] * 3.0 == doctest::Approx(p[0] * 4.0).epsilon(1e-14));
  }
}

TEST_CASE("projection onto a box clamps componentwise") {
  const DomainSpec box = make_box_domain(dvec({0.0, 0.0}), dvec({1.0, 1.0}), 1.0);
  CHECK(project(box, dvec({-1.0, 2.0})) == dvec({0.0, 1.0}));
  CHECK(project(box, dvec({0.25, 0.75})) == dvec({0.25, 0.75}));
}

TEST_CASE("membership residual measures the distance to the domain") {
  const DomainSpec ball = make_ball_domain(dvec({0.0, 0.0}), 1.0, 1.0);
  CHECK(membership_residual(ball, dvec({0.3, 0.4})) == 0.0);
  CHECK(membership_residual(ball, dvec({3.0, 4.0})) == doctest::Approx(4.0).epsilon(1e-14));

  const DomainSpec box = make_box_domain(dvec({0.0}), dvec({1.0}), 1.0);
  CHECK(membership_residual(box, dvec({1.5})) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("projection rejects dimension mismatches") {
  const DomainSpec ball = make_ball_domain(dvec({0.0, 0.0}), 1.0, 1.0);
  CHECK_THROWS_WITH_AS(project(ball, dvec({1.0})), "point dimension mismatch",
                       std::invalid_argument);
}
