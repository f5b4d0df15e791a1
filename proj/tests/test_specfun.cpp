#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bstar/errors.hpp"
#include "bstar/specfun.hpp"

using namespace bstar;

TEST_CASE("normalizing constants") {
  CHECK(c_tilde(2, 1.5) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
  CHECK(c_tilde(1, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
  CHECK(std::exp(log_c_tilde(3, 2.0)) == doctest::Approx(c_tilde(3, 2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(c_tilde(2, 1.0), DomainError);
  CHECK_THROWS_AS(c_tilde(0, 1.0), DomainError);
}

TEST_CASE("sphere and ball") {
  CHECK(sphere_surface(1) == doctest::Approx(2.0));
  CHECK(sphere_surface(2) == doctest::Approx(2.0 * kPi));
  CHECK(sphere_surface(3) == doctest::Approx(4.0 * kPi));
  CHECK(ball_volume(0) == doctest::Approx(1.0));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));
  for (int d = 1; d <= 8; ++d) CHECK(sphere_surface(d) == doctest::Approx(d * ball_volume(d)).epsilon(1e-13));
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(10, 0) == 1.0);
  CHECK(binomial(3, 5) == 0.0);
  CHECK(binomial(4, -1) == 0.0);
  CHECK(binomial(30, 15) == 155117520.0);
}

TEST_CASE("bessel K frozen values") {
  CHECK(bessel_k(0.0, 1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-12));
  CHECK(bessel_k(1.0, 1.0) == doctest::Approx(0.6019072301972346).epsilon(1e-12));
  CHECK(bessel_k(0.5, 2.0) == doctest::Approx(std::sqrt(kPi / 4.0) * std::exp(-2.0)).epsilon(1e-14));
  CHECK(bessel_k(2.5, 3.0) == doctest::Approx(0.0840606319741174).epsilon(1e-12));
  CHECK(bessel_k_scaled(1.5, 800.0) == doctest::Approx(std::sqrt(kPi / 1600.0) * (1.0 + 1.0 / 800.0)).epsilon(1e-13));
}

TEST_CASE("bessel K half-integer recurrence agrees with quadrature") {
  for (double nu : {0.5, 1.5, 2.5, 4.5}) {
    for (double z : {0.3, 2.0, 10.0}) {
      CHECK(bessel_k(nu, z) == doctest::Approx(bessel_k_quadrature(nu, z)).epsilon(1e-10));
    }
  }
}

TEST_CASE("bessel K general order agrees with quadrature") {
  for (double nu : {0.0, 0.3, 1.7, 3.2}) {
    for (double z : {0.3, 2.0, 40.0}) CHECK(bessel_k(nu, z) == doctest::Approx(bessel_k_quadrature(nu, z)).epsilon(1e-10));
  }
  CHECK(bessel_k_scaled(0.3, 600.0) == doctest::Approx(std::sqrt(kPi / 1200.0)).epsilon(1e-3));
}

TEST_CASE("bessel K three-term recurrence") {
  for (double nu : {0.3, 1.7}) {
    for (double z : {0.5, 4.0}) {
      const double lhs = bessel_k(nu + 1.0, z);
      const double rhs = bessel_k(nu - 1.0 < 0 ? 1.0 - nu : nu - 1.0, z) + 2.0 * nu / z * bessel_k(nu, z);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("bessel K domain and overflow") {
  CHECK_THROWS_AS(bessel_k(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(200.5, 1e-3), std::overflow_error);
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == Rational(1));
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK(bernoulli(30) == Rational(8615841276005LL, 14322));
  CHECK_THROWS_AS(bernoulli(3), DomainError);
  CHECK_THROWS_AS(bernoulli(66), BoundExceeded);
  CHECK_NOTHROW(bernoulli(66, 80));
}

TEST_CASE("Q polynomials") {
  CHECK(q_poly(0).degree() == 0);
  CHECK(q_poly(1).coeffs == std::vector<Rational>{Rational(1)});
  const auto q3 = q_poly(3);
  CHECK(q3.coeff(0) == 1);
  CHECK(q3.coeff(2) == 4);
  const auto q4 = q_poly(4);
  CHECK(q4.coeff(2) == 10);
  CHECK(q4.coeff(4) == 9);
  CHECK(q4.coeff(7) == 0);
}

TEST_CASE("A coefficients frozen values") {
  CHECK(a_coeff(2, 1) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(a_coeff(3, 3) == doctest::Approx(8.0 / kPi).epsilon(1e-14));
  CHECK(a_coeff(3, 4) == 0.0);
  CHECK(a_coeff(3, -1) == 0.0);
}

TEST_CASE("A coefficients boundary rows") {
  for (int n = 0; n <= 10; ++n) {
    CHECK(a_coeff(n, 0) == doctest::Approx(1.0).epsilon(1e-12));
    const double f = std::tgamma(n + 1.0) / std::tgamma(0.5 * n + 1.0);
    CHECK(a_coeff(n, n) == doctest::Approx(std::ldexp(f * f, -n)).epsilon(1e-12));
  }
}

TEST_CASE("Blaschke-Petkantschin constant") {
  CHECK(bp_const(3, 1) == 1.0);
  CHECK(bp_const(2, 2) == doctest::Approx(sphere_surface(2) / sphere_surface(1)));
  CHECK_THROWS_AS(bp_const(2, 4), DomainError);
}
