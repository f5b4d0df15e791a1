#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace bstar {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Gamma(beta) / (pi^{d/2} Gamma(beta - d/2)), the normalizing constant of the beta' law.
double c_tilde(int d, double beta);
double log_c_tilde(int d, double beta);

double sphere_surface(int d);  // omega_d
double ball_volume(int d);     // kappa_d

double binomial(int n, int k);  // zero outside 0 <= k <= n
double log_gamma_ratio(double a, double b);  // log Gamma(a) - log Gamma(b), a,b > 0

// Modified Bessel function of the second kind.
double bessel_k(double nu, double z);
// e^z K_nu(z); the scaled form stays finite for large z.
double bessel_k_scaled(double nu, double z);
double bessel_k_quadrature(double nu, double z);
bool is_half_integer(double nu);

struct RationalPoly {
  std::vector<Rational> coeffs;  // coeffs[j] multiplies x^j

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Rational coeff(int j) const {
    return (j >= 0 && j < static_cast<int>(coeffs.size())) ? coeffs[j] : Rational(0);
  }
};

// Q_n(x) = (1+(n-1)^2 x^2)(1+(n-3)^2 x^2)..., Q_0 = Q_1 = 1.
RationalPoly q_poly(int n);

inline constexpr int kBernoulliBound = 64;
Rational bernoulli(int m, int bound = kBernoulliBound);

double a_coeff(int n, int k);

// Blaschke-Petkantschin constant B(d,k).
double bp_const(int d, int k);

}  // namespace bstar
