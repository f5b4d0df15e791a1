#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bstar/analytic.hpp"
#include "bstar/geometry.hpp"
#include "bstar/rng.hpp"

namespace bstar {

// Solves rate * int_0^u g = target for increasing targets, reusing the last root.
class MassInverter {
 public:
  using Fn = std::function<double(double)>;
  // primitive, when given, must satisfy primitive(0) = 0 and primitive' = g.
  MassInverter(double rate, Fn g, double upper, Fn primitive = {});

  double solve(double target);
  double mass(double u) const;  // rate * int_0^u g, independent of the state
  double position() const { return u_; }

 private:
  double segment(double a, double b) const;

  double rate_;
  Fn g_;
  double upper_;
  Fn primitive_;
  double u_ = 0.0;
  double mass_ = 0.0;
};

// Radii of the atoms of a rotation invariant Poisson process, emitted in decreasing order.
class RadialSampler {
 public:
  // psi(R) = alpha c_{d,beta} omega_d R^{d-1} (R^2-1)^{-beta}, R > 1.
  static RadialSampler beta_star(int d, double alpha, double beta);
  // psi(R) = mu c_{d,beta} omega_d R^{d-1-2beta}, R > 0.
  static RadialSampler poisson(int d, double mu, double beta);

  double next(RngStream& rng);
  double peek(RngStream& rng);
  // Psi at the last emitted radius.
  double cumulative() const { return target_; }

  double intensity(double r) const;
  // Psi(r) by direct quadrature of psi.
  double tail(double r) const;

  int dim() const { return d_; }
  double beta() const { return beta_; }
  bool is_poisson() const { return poisson_; }

 private:
  RadialSampler(int d, double scale, double beta, bool poisson);
  double radius_at(double target);

  int d_;
  double scale_;  // alpha c omega or mu c omega
  double beta_;
  double q_;
  bool poisson_;
  std::optional<MassInverter> inverter_;
  double target_ = 0.0;
  std::optional<double> peeked_target_;
  std::optional<double> peeked_radius_;
};

struct SimOutcome {
  std::optional<Polytope> polytope;  // empty when not terminated
  std::size_t atoms = 0;
  double stop_radius = 0.0;

  bool terminated() const { return polytope.has_value(); }
};

// Hull of the atoms R_n U_n, stopped once the inradius exceeds the next radius.
SimOutcome perfect_simulation(RadialSampler& radii, std::size_t n_max, RngStream& rng,
                              std::vector<Vector>* atoms = nullptr);

SimOutcome sample_beta_star_polytope(const BetaStarParams& p, std::size_t n_max, RngStream& rng);
SimOutcome sample_zero_cell(int d, double lambda, double beta, std::size_t n_max, RngStream& rng);
SimOutcome sample_voronoi_typical_cell(int d, double lambda, std::size_t n_max, RngStream& rng);
SimOutcome sample_poisson_polytope(int d, double mu, double beta, std::size_t n_max, RngStream& rng);

// Columns are i.i.d. points with density c (1+|x|^2)^{-beta}.
Matrix sample_beta_prime(int dim, double beta, std::size_t n, RngStream& rng);

// Poincare-ball points with intensity 2^d lambda |w|^{2beta-2d} (1-|w|^2)^{-beta}, |w| <= r_max.
std::vector<Vector> sample_hyperbolic_voronoi_points(int d, double lambda, double beta, double r_max,
                                                     RngStream& rng);

struct CoverageResult {
  bool covered = false;
  double uncovered_fraction = 1.0;
  std::size_t caps = 0;
  std::size_t grid = 0;
};

inline constexpr std::size_t kCoverageGrid = 100000;

CoverageResult cap_covering_experiment(int d, double lambda, double beta, std::size_t n_caps,
                                       RngStream& rng, std::size_t grid = kCoverageGrid);

// Deterministic near-uniform directions on the sphere.
Matrix direction_grid(int d, std::size_t n);

}  // namespace bstar
