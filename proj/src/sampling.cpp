#include "bstar/sampling.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>

#include "bstar/errors.hpp"
#include "bstar/quadrature.hpp"
#include "bstar/specfun.hpp"

namespace bstar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double integrand_tol() { return 1e-13; }

}  // namespace

MassInverter::MassInverter(double rate, Fn g, double upper, Fn primitive)
    : rate_(rate), g_(std::move(g)), upper_(upper), primitive_(std::move(primitive)) {}

double MassInverter::segment(double a, double b) const {
  if (b <= a) return 0.0;
  if (primitive_) return rate_ * (primitive_(b) - primitive_(a));
  return rate_ * integrate(g_, a, b, QuadratureOptions{}.with_rel_tol(integrand_tol())).value;
}

double MassInverter::mass(double u) const { return segment(0.0, u); }

double MassInverter::solve(double target) {
  if (!(target >= mass_)) throw DomainError("MassInverter: targets must be nondecreasing");
  double lo = u_, mlo = mass_;
  double hi = upper_;
  double u = lo + (target - mlo) / (rate_ * g_(lo));
  if (!(u > lo) || !(u < hi)) u = std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 1.0;
  double m = mlo;
  const double tol = 1e-13 * std::max(target, 1e-300);
  for (int it = 0; it < 200; ++it) {
    m = mlo + segment(lo, u);
    const double diff = m - target;
    if (std::abs(diff) <= tol) break;
    if (diff < 0.0) {
      lo = u;
      mlo = m;
    } else {
      hi = u;
    }
    double next = u - diff / (rate_ * g_(u));
    if (!(next > lo) || !(next < hi)) next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * u + 1.0;
    if (std::isfinite(hi) && hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      u = next;
      m = mlo + segment(lo, u);
      break;
    }
    u = next;
  }
  u_ = u;
  mass_ = std::min(m, target);
  return u;
}

RadialSampler::RadialSampler(int d, double scale, double beta, bool poisson)
    : d_(d), scale_(scale), beta_(beta), q_(2.0 * beta - d), poisson_(poisson) {
  if (d < 1) throw ParameterError("RadialSampler: d >= 1 required");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("RadialSampler: intensity > 0 required");
  if (!(beta > 0.5 * d)) throw ParameterError("RadialSampler: beta > d/2 required");
  if (poisson) return;
  const double q = q_;
  const double k = 0.5 * (d - 2);
  auto g = [q, k](double t) { return k == 0.0 ? 1.0 : std::pow(1.0 + std::pow(t, 2.0 / q), k); };
  MassInverter::Fn primitive;
  if (d % 2 == 0) {
    const int kk = (d - 2) / 2;
    primitive = [q, kk](double u) {
      if (u <= 0.0) return 0.0;
      double s = 0.0;
      for (int j = 0; j <= kk; ++j) {
        const double e = 2.0 * j / q + 1.0;
        s += binomial(kk, j) * std::pow(u, e) / e;
      }
      return s;
    };
  }
  inverter_.emplace(scale / q, g, kInf, primitive);
}

RadialSampler RadialSampler::beta_star(int d, double alpha, double beta) {
  if (!(alpha > 0.0)) throw ParameterError("RadialSampler: alpha > 0 required");
  return RadialSampler(d, alpha * c_tilde(d, beta) * sphere_surface(d), beta, false);
}

RadialSampler RadialSampler::poisson(int d, double mu, double beta) {
  if (!(mu > 0.0)) throw ParameterError("RadialSampler: mu > 0 required");
  return RadialSampler(d, mu * c_tilde(d, beta) * sphere_surface(d), beta, true);
}

double RadialSampler::radius_at(double target) {
  if (poisson_) return std::pow(scale_ / (q_ * target), 1.0 / q_);
  const double u = inverter_->solve(target);
  const double s = std::pow(u, 1.0 / q_);
  return std::sqrt(1.0 + 1.0 / (s * s));
}

double RadialSampler::peek(RngStream& rng) {
  if (!peeked_radius_) {
    const double t = target_ + rng.exponential();
    peeked_target_ = t;
    peeked_radius_ = radius_at(t);
  }
  return *peeked_radius_;
}

double RadialSampler::next(RngStream& rng) {
  const double r = peek(rng);
  target_ = *peeked_target_;
  peeked_target_.reset();
  peeked_radius_.reset();
  return r;
}

double RadialSampler::intensity(double r) const {
  if (poisson_) return r > 0.0 ? scale_ * std::pow(r, d_ - 1 - 2.0 * beta_) : 0.0;
  if (!(r > 1.0)) return 0.0;
  return scale_ * std::pow(r, d_ - 1) * std::pow(r * r - 1.0, -beta_);
}

double RadialSampler::tail(double r) const {
  if (poisson_) return scale_ / q_ * std::pow(r, -q_);
  if (!(r > 1.0)) return kInf;
  auto f = [this](double x) { return intensity(x); };
  const auto opt = QuadratureOptions{}.with_rel_tol(1e-12);
  return integrate(f, r, 2.0 * r, opt).value + integrate_semi_infinite(f, 2.0 * r, opt).value;
}

SimOutcome perfect_simulation(RadialSampler& radii, std::size_t n_max, RngStream& rng,
                              std::vector<Vector>* atoms) {
  const int d = radii.dim();
  IncrementalHull hull(d);
  SimOutcome out;
  for (std::size_t n = 0; n < n_max; ++n) {
    const double r = radii.next(rng);
    const Vector x = r * rng.direction(d);
    if (atoms) atoms->push_back(x);
    hull.insert(x);
    ++out.atoms;
    if (!hull.ready()) continue;
    const double inr = hull.min_offset();
    if (inr <= 0.0) continue;
    const double nxt = radii.peek(rng);
    if (inr > nxt) {
      out.polytope = hull.to_polytope();
      out.stop_radius = nxt;
      return out;
    }
  }
  return out;
}

SimOutcome sample_beta_star_polytope(const BetaStarParams& p, std::size_t n_max, RngStream& rng) {
  RadialSampler radii = RadialSampler::beta_star(p.d, p.alpha, p.beta);
  return perfect_simulation(radii, n_max, rng);
}

SimOutcome sample_zero_cell(int d, double lambda, double beta, std::size_t n_max, RngStream& rng) {
  const BetaStarParams p(d, zero_cell_alpha(d, lambda, beta), beta);
  SimOutcome out = sample_beta_star_polytope(p, n_max, rng);
  if (out.polytope) out.polytope = polar_dual(*out.polytope);
  return out;
}

SimOutcome sample_voronoi_typical_cell(int d, double lambda, std::size_t n_max, RngStream& rng) {
  const BetaStarParams p(d, voronoi_alpha(d, lambda), static_cast<double>(d));
  SimOutcome out = sample_beta_star_polytope(p, n_max, rng);
  if (out.polytope) out.polytope = polar_dual(*out.polytope);
  return out;
}

SimOutcome sample_poisson_polytope(int d, double mu, double beta, std::size_t n_max, RngStream& rng) {
  RadialSampler radii = RadialSampler::poisson(d, mu, beta);
  return perfect_simulation(radii, n_max, rng);
}

Matrix sample_beta_prime(int dim, double beta, std::size_t n, RngStream& rng) {
  if (dim < 1) throw ParameterError("sample_beta_prime: dim >= 1 required");
  if (!(beta > 0.5 * dim)) throw ParameterError("sample_beta_prime: beta > dim/2 required");
  const double a = 0.5 * dim, b = beta - 0.5 * dim;
  Matrix out(dim, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const double y = boost::math::ibeta_inv(a, b, u);
    const double r = y < 1.0 ? std::sqrt(y / (1.0 - y)) : kInf;
    out.col(static_cast<Eigen::Index>(i)) = r * rng.direction(dim);
  }
  return out;
}

std::vector<Vector> sample_hyperbolic_voronoi_points(int d, double lambda, double beta, double r_max,
                                                     RngStream& rng) {
  if (d < 1) throw ParameterError("hyperbolic points: d >= 1 required");
  if (!(lambda > 0.0)) throw ParameterError("hyperbolic points: lambda > 0 required");
  if (!(beta > std::max(0.5 * d, 1.0))) throw ParameterError("hyperbolic points: beta > max(d/2, 1) required");
  if (!(r_max > 0.0 && r_max < 1.0)) throw ParameterError("hyperbolic points: 0 < r_max < 1 required");
  const double q = 2.0 * beta - d;
  const double rate = std::ldexp(lambda, d) * sphere_surface(d) / q;
  auto g = [q, beta](double t) { return std::pow(1.0 - std::pow(t, 2.0 / q), -beta); };
  MassInverter inv(rate, g, 1.0);
  const double u_max = std::pow(r_max, q);
  const double m_max = inv.mass(u_max);
  std::vector<Vector> pts;
  double t = 0.0;
  while (true) {
    t += rng.exponential();
    if (t > m_max) break;
    const double rho = std::pow(inv.solve(t), 1.0 / q);
    pts.push_back(rho * rng.direction(d));
  }
  return pts;
}

Matrix direction_grid(int d, std::size_t n) {
  Matrix g(d, static_cast<Eigen::Index>(n));
  if (d == 1) {
    for (std::size_t i = 0; i < n; ++i) g(0, i) = i % 2 ? -1.0 : 1.0;
  } else if (d == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      g(0, i) = std::cos(a);
      g(1, i) = std::sin(a);
    }
  } else if (d == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(n);
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * static_cast<double>(i);
      g(0, i) = s * std::cos(a);
      g(1, i) = s * std::sin(a);
      g(2, i) = z;
    }
  } else {
    RngStream rng(0x5eedULL, static_cast<std::uint64_t>(d));
    for (std::size_t i = 0; i < n; ++i) g.col(i) = rng.direction(d);
  }
  return g;
}

CoverageResult cap_covering_experiment(int d, double lambda, double beta, std::size_t n_caps,
                                       RngStream& rng, std::size_t grid) {
  if (d < 2) throw ParameterError("cap_covering: d >= 2 required");
  if (grid == 0) throw ParameterError("cap_covering: grid >= 1 required");
  CoverageResult res;
  res.caps = n_caps;
  res.grid = grid;
  if (n_caps == 0) return res;
  const double alpha = lambda / (c_tilde(d, beta) * sphere_surface(d));
  RadialSampler radii = RadialSampler::beta_star(d, alpha, beta);
  std::vector<double> r(n_caps);
  Matrix u(d, static_cast<Eigen::Index>(n_caps));
  for (std::size_t i = 0; i < n_caps; ++i) {
    r[i] = 1.0 / radii.next(rng);
    u.col(i) = rng.direction(d);
  }
  std::size_t uncovered = 0;
  if (d == 2) {
    const double h = 2.0 * kPi / static_cast<double>(grid);
    const long long n = static_cast<long long>(grid);
    std::vector<int> diff(grid + 1, 0);
    auto mark = [&](long long a, long long b) {  // inclusive, may wrap
      if (b - a + 1 >= n) {
        diff[0] += 1;
        diff[grid] -= 1;
        return;
      }
      a = ((a % n) + n) % n;
      b = ((b % n) + n) % n;
      if (a <= b) {
        diff[a] += 1;
        diff[b + 1] -= 1;
      } else {
        diff[a] += 1;
        diff[grid] -= 1;
        diff[0] += 1;
        diff[b + 1] -= 1;
      }
    };
    for (std::size_t i = 0; i < n_caps; ++i) {
      const double phi = std::atan2(u(1, i), u(0, i));
      const double half = std::acos(std::clamp(r[i], -1.0, 1.0));
      // grid angle j has value (j + 1/2) h
      const long long a = static_cast<long long>(std::ceil((phi - half) / h - 0.5));
      const long long b = static_cast<long long>(std::floor((phi + half) / h - 0.5));
      if (b >= a) mark(a, b);
    }
    int run = 0;
    for (std::size_t j = 0; j < grid; ++j) {
      run += diff[j];
      if (run == 0) ++uncovered;
    }
  } else {
    const Matrix g = direction_grid(d, grid);
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      bool hit = false;
      for (std::size_t i = 0; i < n_caps && !hit; ++i) hit = g.col(j).dot(u.col(i)) >= r[i];
      if (!hit) ++uncovered;
    }
  }
  res.uncovered_fraction = static_cast<double>(uncovered) / static_cast<double>(grid);
  res.covered = uncovered == 0;
  return res;
}

}  // namespace bstar
