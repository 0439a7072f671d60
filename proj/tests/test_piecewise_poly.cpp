#include <cmath>

#include "doctest.h"
#include "ksw/piecewise_poly.hpp"

using namespace ksw;

namespace {

// two pieces: x^2 on [0,1), 1 + 2(x-1) on [1,2)
PiecewisePoly<double> quadratic_ramp() {
  VecX<double> knots(3);
  knots << 0, 1, 2;
  MatX<double> coeffs(2, 3);
  coeffs << 0, 0, 1, 1, 2, 0;
  return PiecewisePoly<double>(knots, coeffs, 0.0, 3.0);
}

}  // namespace

TEST_CASE("evaluation and outer constants") {
  auto pp = quadratic_ramp();
  CHECK(pp(-5.0) == 0.0);
  CHECK(pp(5.0) == 3.0);
  CHECK(pp(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pp(1.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(pp.derivative(0.5, 1) == doctest::Approx(1.0));
  CHECK(pp.derivative(0.5, 2) == doctest::Approx(2.0));
  CHECK(pp.derivative(-1.0, 1) == 0.0);
}

TEST_CASE("left and right limits at a breakpoint") {
  auto pp = quadratic_ramp();
  // first derivative: 2x from the left (limit 2), constant 2 from the right
  CHECK(pp.derivative_left(1.0, 1) == doctest::Approx(2.0));
  CHECK(pp.derivative_right(1.0, 1) == doctest::Approx(2.0));
  // second derivative jumps from 2 to 0
  CHECK(pp.derivative_left(1.0, 2) == doctest::Approx(2.0));
  CHECK(pp.derivative_right(1.0, 2) == 0.0);
  CHECK(pp.derivative_left(0.0, 0) == 0.0);
  CHECK(pp.derivative_right(0.0, 0) == 0.0);
}

TEST_CASE("constructor validation") {
  VecX<double> knots(2);
  knots << 1, 1;
  MatX<double> coeffs(1, 2);
  coeffs << 0, 1;
  CHECK_THROWS_AS(PiecewisePoly<double>(knots, coeffs, 0, 0), std::invalid_argument);
  VecX<double> ok(2);
  ok << 0, 1;
  MatX<double> nans(1, 2);
  nans << 0, std::nan("");
  CHECK_THROWS_AS(PiecewisePoly<double>(ok, nans, 0, 0), std::invalid_argument);
}

TEST_CASE("sup norm of derivatives") {
  auto pp = quadratic_ramp();
  CHECK(sup_norm_derivative(pp, 0) == doctest::Approx(3.0));
  CHECK(sup_norm_derivative(pp, 1) == doctest::Approx(2.0));
  CHECK(sup_norm_derivative(pp, 2) == doctest::Approx(2.0));

  // interior extremum: x(1-x) on [0,1] peaks at 1/4
  VecX<double> knots(2);
  knots << 0, 1;
  MatX<double> coeffs(1, 3);
  coeffs << 0, 1, -1;
  PiecewisePoly<double> hump(knots, coeffs, 0, 0);
  CHECK(sup_norm_derivative(hump, 0) == doctest::Approx(0.25).epsilon(1e-12));
}
