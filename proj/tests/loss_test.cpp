#include <doctest.h>

#include <cmath>

#include <Eigen/Core>

#include "dynreg/loss.hpp"
#include "test_util.hpp"

using namespace dynreg;
using dynreg::test::dvec;

TEST_CASE("linear losses expose value, subgradient, and their coefficient") {
  const Eigen::VectorXd v = dvec({1.0, -2.0});
  const LossFunction loss = make_linear_loss(v, Regularizer::zero());

  CHECK(loss.smooth_value(dvec({3.0, 1.0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(loss.subgradient(dvec({3.0, 1.0})) == v);
  REQUIRE(loss.linear_coefficient().has_value());
  CHECK(*loss.linear_coefficient() == v);
  CHECK(loss.regularizer() == Regularizer::zero());
}

TEST_CASE("composite value adds the regularizer on top of the smooth part") {
  const LossFunction loss = make_linear_loss(dvec({2.0}), Regularizer::l1(0.5));
  // F(x) + H(x) = 2*3 + 0.5*|3|.
  CHECK(loss.value(dvec({3.0})) == doctest::Approx(7.5).epsilon(1e-15));
  CHECK(loss.smooth_value(dvec({3.0})) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("affine-quadratic losses evaluate and differentiate by hand") {
  // F(x) = <a, x> + (c/2) * ||x - anchor||^2 with a=1, c=2, anchor=0.5.
  const LossFunction loss =
      make_affine_quadratic_loss(dvec({1.0}), 2.0, dvec({0.5}), Regularizer::zero());
  CHECK(loss.smooth_value(dvec({2.0})) == doctest::Approx(2.0 + 2.25).epsilon(1e-15));
  CHECK(loss.subgradient(dvec({2.0}))[0] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_FALSE(loss.linear_coefficient().has_value());

  // Zero curvature degenerates to the affine part.
  const LossFunction flat =
      make_affine_quadratic_loss(dvec({1.0, 1.0}), 0.0, dvec({0.0, 0.0}), Regularizer::zero());
  CHECK(flat.smooth_value(dvec({0.25, 0.75})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(flat.subgradient(dvec({0.25, 0.75})) == dvec({1.0, 1.0}));
}

TEST_CASE("absolute-value losses pick the zero subgradient at the kink") {
  const LossFunction loss = make_abs_loss(2, Regularizer::zero());
  CHECK(loss.smooth_value(dvec({1.0, -2.0})) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(loss.subgradient(dvec({1.0, -2.0})) == dvec({1.0, -1.0}));
  CHECK(loss.subgradient(dvec({0.0, 0.5})) == dvec({0.0, 1.0}));
  CHECK_FALSE(loss.linear_coefficient().has_value());
}

TEST_CASE("hand-built losses keep their oracles pure") {
  const LossFunction loss = make_linear_loss(dvec({0.5, 0.5}), Regularizer::l1(0.1));
  const Eigen::VectorXd x = dvec({1.0, -1.0});
  const double first = loss.value(x);
  const double second = loss.value(x);
  CHECK(first == second);
  CHECK(loss.subgradient(x) == loss.subgradient(x));
}
