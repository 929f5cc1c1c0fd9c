#include <doctest.h>

#include <cmath>

#include "wpvol/quadrature.hpp"

using namespace wpvol;

TEST_CASE("reciprocal over [4, 16] is ln 4") {
  const QuadResult r = integrate([](double f) { return 1.0 / f; }, 4.0, 16.0, 1e-12);
  CHECK(std::abs(r.value - std::log(4.0)) < 1e-10);
  CHECK(r.error < 1e-10);
  CHECK(r.evaluations > 0);
}

TEST_CASE("polynomials are exact") {
  CHECK(integrate([](double x) { return x; }, 0.0, 1.0, 1e-12).value == doctest::Approx(0.5));
  CHECK(integrate([](double x) { return x * x * x; }, -1.0, 2.0, 1e-12).value ==
        doctest::Approx(3.75));
}

TEST_CASE("empty and reversed intervals") {
  CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0, 1e-9).value == 0.0);
  CHECK(integrate([](double) { return 1.0; }, 2.0, 1.0, 1e-9).value == 0.0);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0), PreconditionError);
}

TEST_CASE("exhausted recursion depth throws") {
  auto wild = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
  CHECK_THROWS_AS(integrate(wild, 0.0, 1.0, 1e-12, 4), QuadratureError);
}

TEST_CASE("iterated integral over a triangle") {
  // int_0^1 int_0^x x y dy dx = 1/8
  const QuadResult r = integrate2d([](double x, double y) { return x * y; }, 0.0, 1.0,
                                   [](double) { return 0.0; }, [](double x) { return x; }, 1e-10);
  CHECK(r.value == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("sharp peak is resolved") {
  const double w = 1e-3;
  const QuadResult r = integrate([w](double x) { return w / (x * x + w * w); }, -1.0, 1.0, 1e-9);
  CHECK(r.value == doctest::Approx(2.0 * std::atan(1.0 / w)).epsilon(1e-8));
}
