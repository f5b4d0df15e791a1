#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "bstar/errors.hpp"
#include "bstar/quadrature.hpp"

using namespace bstar;

TEST_CASE("smooth finite integrals") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return x * x; }, -1.0, 2.0).value == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("endpoint singularities") {
  QuadratureOptions opt;
  opt.left_singular = true;
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt).value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(integrate([](double x) { return std::log(x); }, 0.0, 1.0, opt).value == doctest::Approx(-1.0).epsilon(1e-10));
  opt.right_singular = true;
  auto f = [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); };
  CHECK(integrate(f, 0.0, 1.0, opt).value == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("semi-infinite integrals") {
  CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, 0.0).value ==
        doctest::Approx(M_PI / 2).epsilon(1e-10));
  CHECK(integrate_semi_infinite([](double x) { return std::pow(x, -3.0); }, 1.0).value == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(integrate_semi_infinite([](double) { return 0.0; }, 0.0).value == 0.0);
  CHECK(integrate_semi_infinite([](double x) { return std::pow(x, -3.5); }, 1e6).value ==
        doctest::Approx(std::pow(1e6, -2.5) / 2.5).epsilon(1e-9));
}

TEST_CASE("contour integrals") {
  using C = std::complex<double>;
  auto f = [](C z) { return std::exp(z); };
  const auto ray = integrate_path(f, {PathSegment{C(-INFINITY, 0.0), C(0.0, 0.0)}});
  CHECK(ray.value.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ray.value.imag()) < 1e-14);
  const auto leg = integrate_path(f, {PathSegment{C(0.0, 0.0), C(0.0, M_PI)}});
  CHECK(leg.value.real() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(leg.value.imag()) < 1e-12);
}

TEST_CASE("error estimates and counters") {
  const auto r = integrate([](double x) { return std::cos(x); }, 0.0, 1.0);
  CHECK(r.abs_error >= 0.0);
  CHECK(r.abs_error < 1e-10);
  CHECK(r.evaluations >= 15);
}

TEST_CASE("failures are typed") {
  CHECK_THROWS_AS(integrate([](double) { return NAN; }, 0.0, 1.0), QuadratureError);
  QuadratureOptions opt;
  opt.max_subdivisions = 5;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, opt), QuadratureError);
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 1.0), DomainError);
  try {
    integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, opt);
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.best_estimate));
    CHECK(e.error_estimate > 0.0);
  }
}
