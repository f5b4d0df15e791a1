#include "bstar/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "bstar/errors.hpp"
#include "bstar/quadrature.hpp"
#include "bstar/specfun.hpp"

namespace bstar {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

bool near(double a, double b, double tol = kCriticalTol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

double log_sinh(double w) {
  if (w > 20.0) return w - std::log(2.0) + std::log1p(-std::exp(-2.0 * w));
  return std::log(std::sinh(w));
}

double log_cosh(double w) { return w - std::log(2.0) + std::log1p(std::exp(-2.0 * w)); }

double log_factorial(int n) { return std::lgamma(n + 1.0); }

constexpr double kInnerTol = 1e-13;
constexpr double kOuterTol = 1e-11;

}  // namespace

BetaStarParams::BetaStarParams(int d_, double alpha_, double beta_) : d(d_), alpha(alpha_), beta(beta_) {
  if (d < 1) throw ParameterError("d >= 1 required (d=" + std::to_string(d) + ")");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha > 0 required (alpha=" + fmt(alpha) + ")");
  if (!(beta > 0.5 * d) || !std::isfinite(beta)) {
    throw ParameterError("beta > d/2 required (beta=" + fmt(beta) + ", d/2=" + fmt(0.5 * d) + ")");
  }
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::PolytopeAS: return "PolytopeAS";
    case Phase::NotPolytopeWithPositiveProb: return "NotPolytopeWithPositiveProb";
    case Phase::DoublyCriticalOpen: return "DoublyCriticalOpen";
    case Phase::DoublyCriticalPolygonAS: return "DoublyCriticalPolygonAS";
  }
  return "?";
}

std::string to_string(FRoute r) {
  switch (r) {
    case FRoute::Auto: return "Auto";
    case FRoute::GeneralQuadrature: return "GeneralQuadrature";
    case FRoute::ClosedFormHalf: return "ClosedFormHalf";
    case FRoute::ClosedFormBessel: return "ClosedFormBessel";
  }
  return "?";
}

double alpha_crit(int d) { return (d - 1) * kPi; }

double lambda_crit(int d) {
  if (d < 2) throw DomainError("lambda_crit: d >= 2 required");
  return (d - 1.0) * (d - 1.0) * std::sqrt(kPi) * std::tgamma(0.5 * (d - 1)) / std::tgamma(0.5 * d);
}

bool is_critical_beta(int d, double beta) { return near(beta, 0.5 * (d + 1)); }

Phase phase_classify(const BetaStarParams& p) {
  if (p.d == 1) return p.beta >= 1.0 ? Phase::PolytopeAS : Phase::NotPolytopeWithPositiveProb;
  if (is_critical_beta(p.d, p.beta)) {
    const double ac = alpha_crit(p.d);
    if (near(p.alpha, ac)) return p.d == 2 ? Phase::DoublyCriticalPolygonAS : Phase::DoublyCriticalOpen;
    return p.alpha > ac ? Phase::PolytopeAS : Phase::NotPolytopeWithPositiveProb;
  }
  return p.beta > 0.5 * (p.d + 1) ? Phase::PolytopeAS : Phase::NotPolytopeWithPositiveProb;
}

double h_integral(double lambda, double w) {
  if (!(lambda > 0.0)) throw DomainError("h_integral: lambda > 0 required");
  if (w <= 0.0) return 0.0;
  if (near(lambda, 1.0)) return w / kPi;
  if (near(lambda, 2.0)) {
    const double s = std::sinh(0.5 * w);
    return s * s;
  }
  if (near(lambda, 3.0)) return (0.5 * std::sinh(2.0 * w) - w) / kPi;
  if (lambda > 1.0 && (lambda - 1.0) * w > 700.0) return INFINITY;
  const double c = c_tilde(1, 0.5 * (lambda + 1.0));
  auto f = [lambda](double t) { return std::exp((lambda - 1.0) * log_sinh(t)); };
  QuadratureOptions opt;
  opt.rel_tol = kInnerTol;
  opt.left_singular = lambda < 1.0;
  return c * integrate(f, 0.0, w, opt).value;
}

namespace {

double effective_lambda(double lambda) { return near(lambda, 1.0) ? 1.0 : lambda; }

void check_i_star(double alpha, int m, double lambda) {
  if (m < 1) throw ParameterError("m >= 1 required");
  if (!(alpha > 0.0)) throw ParameterError("alpha > 0 required");
  if (lambda < 1.0 && !near(lambda, 1.0)) throw ParameterError("lambda >= 1 required (lambda=" + fmt(lambda) + ")");
  if (near(lambda, 1.0) && !(alpha > (m - 1) * kPi)) {
    throw ParameterError("alpha > (m-1)pi required at lambda=1 (alpha=" + fmt(alpha) +
                         ", (m-1)pi=" + fmt((m - 1) * kPi) + ")");
  }
}

}  // namespace

double i_star(double alpha, int m, double lambda) {
  check_i_star(alpha, m, lambda);
  lambda = effective_lambda(lambda);
  const double log_ca = log_c_tilde(1, 0.5 * (lambda * m + 1.0));
  const double pw = lambda * m - 1.0;
  auto f = [=](double w) {
    const double lg = log_ca + (pw == 0.0 ? 0.0 : pw * log_sinh(w)) - alpha * h_integral(lambda, w);
    return std::exp(lg);
  };
  return integrate_semi_infinite(f, 0.0, QuadratureOptions{}.with_rel_tol(kOuterTol)).value;
}

double i_star_direct(double alpha, int m, double lambda) {
  check_i_star(alpha, m, lambda);
  const double ca = c_tilde(1, 0.5 * (lambda * m + 1.0));
  const double cb = c_tilde(1, 0.5 * (lambda + 1.0));
  auto tail = [=](double y) {
    // t = 1 + (y-1) e^s
    const double ly = std::log(y - 1.0), p = 0.5 * (lambda + 1.0);
    auto g = [=](double s) {
      const double le = ly + s;
      const double l2 = le > 0.0 ? le + std::log1p(2.0 * std::exp(-le)) : std::log(2.0 + std::exp(le));
      return std::exp((1.0 - p) * le - p * l2);
    };
    return cb * integrate_semi_infinite(g, 0.0, QuadratureOptions{}.with_rel_tol(1e-12)).value;
  };
  auto f = [=](double y) {
    if (!(y > 1.0)) return 0.0;
    const double e = alpha * tail(y);
    if (e > 700.0) return 0.0;
    return ca * std::pow(y * y - 1.0, -0.5 * (lambda * m + 1.0)) * std::exp(-e);
  };
  QuadratureOptions opt;
  opt.rel_tol = 1e-8;
  opt.left_singular = true;
  return integrate_semi_infinite(f, 1.0, opt).value;
}

double ext_angle_sum(double alpha, int m, double lambda) {
  const double is = i_star(alpha, m, lambda);
  return std::exp(m * std::log(alpha) - log_factorial(m)) * is;
}

double ext_angle_sum_lambda1(double alpha, int m) {
  check_i_star(alpha, m, 1.0);
  const double x = alpha / (2.0 * kPi);
  const double lg = m * std::log(alpha) + std::lgamma(0.5 * (m + 1)) - std::log(static_cast<double>(m)) -
                    m * std::log(2.0) - 0.5 * std::log(kPi) - std::lgamma(0.5 * m) +
                    std::lgamma(x - 0.5 * (m - 1)) - std::lgamma(x + 0.5 * (m + 1));
  return std::exp(lg);
}

double ext_angle_sum_lambda2(double alpha, int m) {
  check_i_star(alpha, m, 2.0);
  return std::sqrt(alpha / kPi) * binomial(2 * m - 1, m) * bessel_k_scaled(m - 0.5, 0.5 * alpha);
}

double j_tilde_sum(int m, int l, double beta) {
  if (m < 1 || l < 1) throw ParameterError("j_tilde_sum: m >= 1 and l >= 1 required");
  if (m < l) return 0.0;
  if (m == 1) return 1.0;
  const double lambda = 2.0 * beta - m + 1.0;
  if (!(lambda > 0.0)) {
    throw ParameterError("j_tilde_sum: beta > (m-1)/2 required (beta=" + fmt(beta) + ", m=" + std::to_string(m) + ")");
  }
  if (!(lambda * m > 1.0)) throw ParameterError("j_tilde_sum: lambda*m > 1 required, lambda = 2beta-m+1");

  static std::mutex mtx;
  static std::map<std::tuple<int, int, double>, double> cache;
  const auto key = std::make_tuple(m, l, beta);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  using C = std::complex<double>;
  const double ca = c_tilde(1, 0.5 * lambda * m);
  const double cb = c_tilde(1, 0.5 * (lambda + 1.0));
  auto kernel = [=](C theta) { return cb * std::pow(std::cosh(theta), -lambda); };
  const C base =
      integrate_path(kernel, {PathSegment{C(-INFINITY, 0.0), C(0.0, 0.0)}}, kInnerTol).value;
  const int power = m - l;

  // Vertical leg 0 -> i*phi: cosh(it) = cos t, written in s = pi/2 - t = e^y so the
  // endpoint blow-up at phi -> pi/2 becomes a smooth exponential in y.
  auto vertical = [&](double delta) {
    auto g = [&](double y) {
      const double s = std::exp(y);
      return s * std::pow(std::sin(s), -lambda);
    };
    return C(0.0, cb * integrate(g, std::log(delta), std::log(0.5 * kPi), kInnerTol).value);
  };
  // delta = pi/2 - phi, so cos(phi) = sin(delta); integrand at -phi is the conjugate.
  auto outer = [&](double delta) {
    C inner = base;
    if (power > 0 && delta < 0.5 * kPi) inner += vertical(delta);
    C pw(1.0, 0.0);
    for (int j = 0; j < power; ++j) pw *= inner;
    return ca * std::pow(std::sin(delta), lambda * m - 2.0) * pw.real();
  };
  QuadratureOptions opt;
  opt.rel_tol = kOuterTol;
  opt.left_singular = true;
  const double v = binomial(m, l) * 2.0 * integrate(outer, 0.0, 0.5 * kPi, opt).value;

  std::lock_guard<std::mutex> lock(mtx);
  cache.emplace(key, v);
  return v;
}

double ExpectedFVector::euler_sum() const {
  double s = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) s += (k % 2 == 0 ? 1.0 : -1.0) * values[k];
  return s;
}

namespace {

void check_f_vector_params(const BetaStarParams& p) {
  const double b0 = 0.5 * (p.d + 1);
  if (is_critical_beta(p.d, p.beta)) {
    if (!(p.alpha > alpha_crit(p.d)) || near(p.alpha, alpha_crit(p.d))) {
      throw ParameterError("alpha > (d-1)pi required at beta=(d+1)/2 (alpha=" + fmt(p.alpha) +
                           ", (d-1)pi=" + fmt(alpha_crit(p.d)) + ")");
    }
    return;
  }
  if (p.beta < b0) {
    throw ParameterError("beta >= (d+1)/2 required for the expected f-vector (beta=" + fmt(p.beta) +
                         ", (d+1)/2=" + fmt(b0) + ")");
  }
}

double lambda_of(const BetaStarParams& p) {
  return is_critical_beta(p.d, p.beta) ? 1.0 : 2.0 * p.beta - p.d;
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::abs(b[i]));
  return m;
}

}  // namespace

ExpectedFVector expected_f_vector_quadrature(const BetaStarParams& p) {
  check_f_vector_params(p);
  const int d = p.d;
  const double lambda = lambda_of(p);
  std::map<int, double> ext;
  for (int m = d; m >= 1; m -= 2) ext[m] = (m == 1) ? 1.0 : ext_angle_sum(p.alpha, m, lambda);
  ExpectedFVector out;
  out.route = FRoute::GeneralQuadrature;
  out.values.assign(d, 0.0);
  for (int k = 0; k < d; ++k) {
    double f = 0.0;
    for (int s = 0; s <= (d - k - 1) / 2; ++s) {
      const int m = d - 2 * s;
      f += 2.0 * ext[m] * j_tilde_sum(m, k + 1, p.beta - s - 0.5);
    }
    out.values[k] = f;
  }
  return out;
}

ExpectedFVector expected_f_vector_closed_half(const BetaStarParams& p) {
  check_f_vector_params(p);
  if (!is_critical_beta(p.d, p.beta)) throw ParameterError("closed form requires beta = (d+1)/2");
  const int d = p.d;
  const double x = p.alpha / (2.0 * kPi);
  ExpectedFVector out;
  out.route = FRoute::ClosedFormHalf;
  out.values.assign(d, 0.0);
  for (int l = 1; l <= d; ++l) {
    double sum = 0.0;
    for (int m = l; m <= d; ++m) {
      if ((d - m) % 2 != 0) continue;
      const double a = a_coeff(m, l) - (m >= 2 ? a_coeff(m - 2, l) : 0.0);
      if (a == 0.0) continue;
      const double lg = m * std::log(x) + std::lgamma(x - 0.5 * (m - 1)) - std::lgamma(x + 0.5 * (m + 1));
      sum += std::exp(lg) * a;
    }
    out.values[l - 1] = std::exp(l * std::log(kPi) - log_factorial(l)) * sum;
  }
  return out;
}

ExpectedFVector expected_f_vector_closed_bessel(const BetaStarParams& p) {
  check_f_vector_params(p);
  if (!near(p.beta, 0.5 * (p.d + 2))) throw ParameterError("closed form requires beta = (d+2)/2");
  const int d = p.d;
  const double pref = std::sqrt(p.alpha / kPi);
  ExpectedFVector out;
  out.route = FRoute::ClosedFormBessel;
  out.values.assign(d, 0.0);
  for (int l = 1; l <= d; ++l) {
    double sum = 0.0;
    for (int m = l; m <= d; ++m) {
      if ((d - m) % 2 != 0) continue;
      const double c = binomial(m, l) * binomial(m + l, l) - binomial(m - 2, l) * binomial(m + l - 2, l);
      sum += bessel_k_scaled(m - 0.5, 0.5 * p.alpha) * c;
    }
    out.values[l - 1] = pref * sum;
  }
  return out;
}

ExpectedFVector expected_f_vector(const BetaStarParams& p, const FVectorOptions& opt) {
  FRoute route = opt.route;
  if (route == FRoute::Auto) {
    if (is_critical_beta(p.d, p.beta)) route = FRoute::ClosedFormHalf;
    else if (near(p.beta, 0.5 * (p.d + 2))) route = FRoute::ClosedFormBessel;
    else route = FRoute::GeneralQuadrature;
  }
  ExpectedFVector out;
  switch (route) {
    case FRoute::ClosedFormHalf: out = expected_f_vector_closed_half(p); break;
    case FRoute::ClosedFormBessel: out = expected_f_vector_closed_bessel(p); break;
    default: out = expected_f_vector_quadrature(p); break;
  }
  if (opt.cross_check && out.route != FRoute::GeneralQuadrature) {
    const ExpectedFVector q = expected_f_vector_quadrature(p);
    out.route_discrepancy = max_rel_diff(out.values, q.values);
    out.route_verified = *out.route_discrepancy <= opt.cross_check_tol;
  }
  return out;
}

double zero_cell_alpha(int d, double lambda, double beta) {
  if (!(lambda > 0.0)) throw ParameterError("lambda > 0 required");
  return lambda / (c_tilde(d, beta) * sphere_surface(d));
}

double voronoi_alpha(int d, double lambda) {
  if (!(lambda > 0.0)) throw ParameterError("lambda > 0 required");
  return std::pow(2.0, d) * lambda / c_tilde(d, d);
}

ExpectedFVector expected_f_vector_zero_cell(int d, double lambda, double beta, const FVectorOptions& opt) {
  ExpectedFVector f = expected_f_vector(BetaStarParams(d, zero_cell_alpha(d, lambda, beta), beta), opt);
  std::reverse(f.values.begin(), f.values.end());
  return f;
}

ExpectedFVector expected_f_vector_voronoi(int d, double lambda, const FVectorOptions& opt) {
  ExpectedFVector f = expected_f_vector(BetaStarParams(d, voronoi_alpha(d, lambda), d), opt);
  std::reverse(f.values.begin(), f.values.end());
  return f;
}

double non_absorption_p(int d, double alpha, double beta, double h) {
  if (!(h > 1.0)) throw DomainError("non_absorption_p: h > 1 required");
  if (!(beta > 0.5 * d)) throw DomainError("non_absorption_p: beta > d/2 required");
  if (std::isinf(h)) return 1.0;
  const double lambda = is_critical_beta(d, beta) ? 1.0 : 2.0 * beta - d;
  return std::exp(-alpha * h_integral(lambda, std::atanh(1.0 / h)));
}

double s_const(int d, double beta, double b) {
  if (d == 1) return 1.0;
  const double g1 = d * (beta - 0.5 * (d - 1)) - 0.5 * (d - 1) * (b + 1.0);
  const double g2 = d * (beta - 0.5 * (d + b));
  const double g3 = beta - 0.5 * (d + b);
  const double g4 = beta - 0.5 * (d - 1);
  if (!(g1 > 0 && g2 > 0 && g3 > 0 && g4 > 0)) throw InfiniteExpectation("s_const: Gamma arguments must be positive");
  double lg = -d * log_c_tilde(d - 1, beta) - (b + 1.0) * std::lgamma(static_cast<double>(d)) +
              std::lgamma(g1) - std::lgamma(g2) + d * (std::lgamma(g3) - std::lgamma(g4));
  for (int i = 1; i <= d - 1; ++i) lg += std::lgamma(0.5 * (i + b + 1.0)) - std::lgamma(0.5 * i);
  return std::exp(lg);
}

void check_T_finite(int d, double alpha, double beta, double a, double b) {
  if (d < 1) throw ParameterError("d >= 1 required");
  if (!(alpha > 0.0)) throw ParameterError("alpha > 0 required");
  if (!(beta > 0.5 * d)) throw ParameterError("beta > d/2 required");
  if (a < 0.0 || b < 0.0) throw ParameterError("a >= 0 and b >= 0 required");
  if (d == 1) {
    if (beta < 1.0) throw InfiniteExpectation("d=1 requires beta >= 1");
    if (!(a < 2.0 * beta - 1.0)) throw InfiniteExpectation("d=1 requires a < 2beta-1 (a=" + fmt(a) + ")");
    return;
  }
  if (is_critical_beta(d, beta)) {
    if (!(b < 1.0)) throw InfiniteExpectation("beta=(d+1)/2 requires b < 1 (b=" + fmt(b) + ")");
    const double amax = 2.0 * d - (d - 1) * (b + 1.0) - 1.0;
    if (!(a < amax)) throw InfiniteExpectation("beta=(d+1)/2 requires a < 2d-(d-1)(b+1)-1 = " + fmt(amax));
    const double amin = kPi * (d - 1) * (1.0 - b);
    if (!(alpha > amin)) throw InfiniteExpectation("beta=(d+1)/2 requires alpha > pi(d-1)(1-b) = " + fmt(amin));
    return;
  }
  if (beta < 0.5 * (d + 1)) throw InfiniteExpectation("beta >= (d+1)/2 required (beta=" + fmt(beta) + ")");
  if (!(b < 2.0 * beta - d)) throw InfiniteExpectation("b < 2beta-d required (b=" + fmt(b) + ")");
  const double amax = d * (2.0 * beta - d + 1.0) - (d - 1) * (b + 1.0) - 1.0;
  if (!(a < amax)) throw InfiniteExpectation("a < d(2beta-d+1)-(d-1)(b+1)-1 = " + fmt(amax) + " required");
}

double expected_T(int d, double alpha, double beta, double a, double b) {
  check_T_finite(d, alpha, beta, a, b);
  const double lambda = is_critical_beta(d, beta) ? 1.0 : 2.0 * beta - d;
  const double gamma = d * (beta - 0.5 * (d - 1)) - 0.5 * (d - 1) * (b + 1.0);
  const double ps = 2.0 * gamma - a - 2.0;
  auto f = [=](double w) {
    return std::exp(-alpha * h_integral(lambda, w) + a * log_cosh(w) + ps * log_sinh(w));
  };
  QuadratureOptions opt;
  opt.rel_tol = kOuterTol;
  opt.left_singular = ps < 0.0;
  const double j = integrate_semi_infinite(f, 0.0, opt).value;
  const double lpref = d * std::log(c_tilde(d, beta) * alpha) - std::log(static_cast<double>(d)) +
                       std::log(sphere_surface(d)) + std::log(s_const(d, beta, b));
  return std::exp(lpref) * j;
}

double expected_intrinsic_volume(int d, double alpha, double beta, int k) {
  if (k < 1 || k > d) throw ParameterError("1 <= k <= d required");
  if (is_critical_beta(d, beta) || beta < 0.5 * (d + 1)) {
    throw InfiniteExpectation("intrinsic volumes require beta > (d+1)/2 (beta=" + fmt(beta) + ")");
  }
  const double bk = beta - 0.5 * (d - k);
  const double kub = binomial(d, k) * ball_volume(d) / (ball_volume(k) * ball_volume(d - k));
  return kub / k * expected_T(k, alpha, bk, 1.0, 1.0);
}

double i_star_infinity(int n, double lambda) {
  if (n < 1 || !(lambda > 0.0)) throw ParameterError("n >= 1 and lambda > 0 required");
  const double lg = (n - 1) * std::log(lambda) - std::log(static_cast<double>(n)) +
                    log_c_tilde(1, 0.5 * (lambda * n + 1.0)) - n * log_c_tilde(1, 0.5 * (lambda + 1.0));
  return std::exp(lg);
}

double i_star_correction(int n, double lambda) {
  if (n < 1 || !(lambda > 0.0)) throw ParameterError("n >= 1 and lambda > 0 required");
  if (n == 1) return 0.0;
  const double e = n + 2.0 / lambda;
  const double lg = e * std::log(lambda) + std::log(n - 1.0) + (0.5 * (n - 1) + 1.0 / lambda) * std::log(kPi) -
                    std::log(2.0 * (lambda + 2.0)) - log_factorial(n) + std::lgamma(0.5 * (lambda * n + 1.0)) +
                    std::lgamma(e) - std::lgamma(0.5 * lambda * n) +
                    e * (std::lgamma(0.5 * lambda) - std::lgamma(0.5 * (lambda + 1.0)));
  return std::exp(lg);
}

std::vector<double> f_vector_limit(int d, double beta) {
  if (beta < 0.5 * (d + 1) && !is_critical_beta(d, beta)) throw ParameterError("beta >= (d+1)/2 required");
  const double lambda = is_critical_beta(d, beta) ? 1.0 : 2.0 * beta - d;
  std::vector<double> f(d, 0.0);
  for (int k = 0; k < d; ++k) {
    for (int s = 0; s <= (d - k - 1) / 2; ++s) {
      const int m = d - 2 * s;
      f[k] += 2.0 * i_star_infinity(m, lambda) * j_tilde_sum(m, k + 1, beta - s - 0.5);
    }
  }
  return f;
}

MonotonicityScan monotonicity_scan(int d, double beta, int k, const std::vector<double>& alpha_grid) {
  if (k < 0 || k >= d) throw ParameterError("0 <= k < d required");
  for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] > alpha_grid[i - 1])) throw ParameterError("alpha grid must be strictly increasing");
  }
  MonotonicityScan out;
  for (double a : alpha_grid) out.values.push_back(expected_f_vector(BetaStarParams(d, a, beta)).values[k]);
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    if (!(out.values[i] < out.values[i - 1])) out.strictly_decreasing = false;
  }
  return out;
}

SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs >= 2 paired points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(std::abs(y[i]) > 0.0) || !std::isfinite(y[i])) {
      throw DomainError("slope undefined: non-positive or non-finite value in fit");
    }
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 1e-300)) throw DomainError("slope undefined: degenerate abscissae");
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.errors = y;
  return fit;
}

SlopeFit convergence_scan(int d, double beta, int k, const std::vector<double>& alpha_grid) {
  if (alpha_grid.size() < 4) throw ParameterError("convergence_scan needs >= 4 grid points");
  const double lim = f_vector_limit(d, beta).at(k);
  std::vector<double> err;
  for (double a : alpha_grid) err.push_back(expected_f_vector(BetaStarParams(d, a, beta)).values.at(k) - lim);
  return fit_loglog_slope(alpha_grid, err);
}

}  // namespace bstar
