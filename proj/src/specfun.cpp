#include "bstar/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "bstar/errors.hpp"
#include "bstar/quadrature.hpp"

namespace bstar {

double log_c_tilde(int d, double beta) {
  if (d < 1) throw DomainError("c_tilde: d >= 1 required");
  if (!(beta > 0.5 * d)) {
    throw DomainError("c_tilde: beta > d/2 required (beta=" + std::to_string(beta) +
                      ", d=" + std::to_string(d) + ")");
  }
  return std::lgamma(beta) - 0.5 * d * std::log(kPi) - std::lgamma(beta - 0.5 * d);
}

double c_tilde(int d, double beta) { return std::exp(log_c_tilde(d, beta)); }

double sphere_surface(int d) {
  if (d < 1) throw DomainError("sphere_surface: d >= 1 required");
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

double ball_volume(int d) {
  if (d < 0) throw DomainError("ball_volume: d >= 0 required");
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return std::round(r);
}

double log_gamma_ratio(double a, double b) { return std::lgamma(a) - std::lgamma(b); }

bool is_half_integer(double nu) {
  return std::abs(nu - std::round(nu - 0.5) - 0.5) < 1e-12;
}

namespace {

double bessel_k_half_scaled(double nu, double z) {
  const int steps = static_cast<int>(std::round(nu - 0.5));
  double k_prev = std::sqrt(kPi / (2.0 * z));  // K_{-1/2}
  double k = k_prev;                            // K_{1/2}
  double order = 0.5;
  for (int s = 0; s < steps; ++s) {
    const double next = k_prev + (2.0 * order / z) * k;
    k_prev = k;
    k = next;
    order += 1.0;
  }
  return k;
}

double bessel_k_quad_scaled(double nu, double z) {
  auto f = [nu, z](double t) {
    const double sh = std::sinh(0.5 * t);
    const double base = -2.0 * z * sh * sh;
    return 0.5 * (std::exp(nu * t + base) + std::exp(-nu * t + base));
  };
  return integrate_semi_infinite(f, 0.0, QuadratureOptions{}.with_rel_tol(1e-13)).value;
}

void check_bessel_args(double nu, double z) {
  if (!(nu >= 0.0)) throw DomainError("bessel_k: nu >= 0 required");
  if (!(z > 0.0)) throw DomainError("bessel_k: z > 0 required");
}

}  // namespace

double bessel_k_scaled(double nu, double z) {
  check_bessel_args(nu, z);
  if (is_half_integer(nu)) return bessel_k_half_scaled(nu, z);
  if (z < 500.0) return std::cyl_bessel_k(nu, z) * std::exp(z);
  return bessel_k_quad_scaled(nu, z);
}

double bessel_k(double nu, double z) {
  const double v = bessel_k_scaled(nu, z) * std::exp(-z);
  if (!std::isfinite(v)) throw std::overflow_error("bessel_k: result not representable");
  return v;
}

double bessel_k_quadrature(double nu, double z) {
  check_bessel_args(nu, z);
  const double v = bessel_k_quad_scaled(nu, z) * std::exp(-z);
  if (!std::isfinite(v)) throw std::overflow_error("bessel_k: result not representable");
  return v;
}

RationalPoly q_poly(int n) {
  if (n < 0) throw DomainError("q_poly: n >= 0 required");
  RationalPoly q;
  q.coeffs = {Rational(1)};
  for (int j = n - 1; j > 0; j -= 2) {
    std::vector<Rational> next(q.coeffs.size() + 2, Rational(0));
    const Rational sq(static_cast<long long>(j) * j);
    for (std::size_t i = 0; i < q.coeffs.size(); ++i) {
      next[i] += q.coeffs[i];
      next[i + 2] += q.coeffs[i] * sq;
    }
    q.coeffs = std::move(next);
  }
  return q;
}

Rational bernoulli(int m, int bound) {
  if (m < 0) throw DomainError("bernoulli: m >= 0 required");
  if (m % 2 != 0 && m != 1) throw DomainError("bernoulli: even index expected");
  if (m > bound) {
    throw BoundExceeded("bernoulli: index " + std::to_string(m) + " exceeds bound " +
                        std::to_string(bound));
  }
  static std::mutex mtx;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mtx);
  while (static_cast<int>(cache.size()) <= m) {
    const int n = static_cast<int>(cache.size());
    Rational s(0);
    Rational c(1);  // C(n+1, k)
    for (int k = 0; k < n; ++k) {
      s += c * cache[k];
      c = c * (n + 1 - k) / (k + 1);
    }
    cache.push_back(-s / (n + 1));
  }
  return cache[m];
}

namespace {

// Finite sum of rational multiples of powers of pi.
using PiSeries = std::map<int, Rational>;

long double evaluate(const PiSeries& s) {
  long double v = 0.0L;
  const long double pi = 3.141592653589793238462643383279502884L;
  for (const auto& [e, r] : s) {
    v += r.convert_to<long double>() * std::pow(pi, static_cast<long double>(e));
  }
  return v;
}

Rational factorial(int n) {
  Rational f(1);
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

Rational pow2(int e) {
  Rational r(1);
  for (int j = 0; j < e; ++j) r *= 2;
  return r;
}

double a_coeff_uncached(int n, int k) {
  const RationalPoly q = q_poly(n);
  if (k % 2 == 0) return q.coeff(k).convert_to<double>();
  PiSeries s;
  if (n % 2 == 1) s[-1] += 2 * q.coeff(k - 1);  // (2/pi) x from coth(pi/(2x))
  for (int m = 1; k + 2 * m - 1 <= q.degree(); ++m) {
    const Rational qc = q.coeff(k + 2 * m - 1);
    if (qc == 0) continue;
    const Rational b = bernoulli(2 * m);
    Rational series = pow2(2 * m) * b / factorial(2 * m);
    if (n % 2 == 0) series *= pow2(2 * m) - 1;
    s[2 * m - 1] += series * qc / pow2(2 * m - 1);
  }
  return static_cast<double>(evaluate(s));
}

}  // namespace

double a_coeff(int n, int k) {
  if (n < 0) throw DomainError("a_coeff: n >= 0 required");
  if (k < 0 || n < k) return 0.0;
  static std::mutex mtx;
  static std::map<std::pair<int, int>, double> table;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = table.find({n, k});
    if (it != table.end()) return it->second;
  }
  const double v = a_coeff_uncached(n, k);
  std::lock_guard<std::mutex> lock(mtx);
  table.emplace(std::make_pair(n, k), v);
  return v;
}

double bp_const(int d, int k) {
  if (d < 1 || k < 1 || k > d + 1) throw DomainError("bp_const: 1 <= k <= d+1 required");
  if (k == 1) return 1.0;
  double v = std::pow(std::tgamma(static_cast<double>(k)), d - k + 1);
  for (int j = d - k + 2; j <= d; ++j) v *= sphere_surface(j);
  for (int j = 1; j <= k - 1; ++j) v /= sphere_surface(j);
  return v;
}

}  // namespace bstar
