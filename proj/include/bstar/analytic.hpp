#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bstar {

struct BetaStarParams {
  int d = 2;
  double alpha = 1.0;
  double beta = 2.0;

  BetaStarParams() = default;
  // Validates d >= 1, alpha > 0, beta > d/2.
  BetaStarParams(int d, double alpha, double beta);
};

enum class Phase { PolytopeAS, NotPolytopeWithPositiveProb, DoublyCriticalOpen, DoublyCriticalPolygonAS };
std::string to_string(Phase p);

double alpha_crit(int d);
double lambda_crit(int d);
Phase phase_classify(const BetaStarParams& p);

// Relative tolerance used to decide beta == (d+1)/2 and alpha == (d-1)pi.
inline constexpr double kCriticalTol = 1e-12;
bool is_critical_beta(int d, double beta);

// h_lambda(w) = c_{1,(lambda+1)/2} * int_0^w sinh(t)^{lambda-1} dt.
double h_integral(double lambda, double w);

double i_star(double alpha, int m, double lambda);
// Raw y-form of I*, kept for cross-checks.
double i_star_direct(double alpha, int m, double lambda);
double ext_angle_sum(double alpha, int m, double lambda);
double ext_angle_sum_lambda1(double alpha, int m);
double ext_angle_sum_lambda2(double alpha, int m);

double j_tilde_sum(int m, int l, double beta);

enum class FRoute { Auto, GeneralQuadrature, ClosedFormHalf, ClosedFormBessel };
std::string to_string(FRoute r);

struct ExpectedFVector {
  std::vector<double> values;  // index k = face dimension
  FRoute route = FRoute::GeneralQuadrature;
  // Set when a closed-form route was cross-checked against quadrature.
  std::optional<double> route_discrepancy;
  std::optional<bool> route_verified;

  double euler_sum() const;
};

struct FVectorOptions {
  FRoute route = FRoute::Auto;
  bool cross_check = false;
  double cross_check_tol = 1e-6;
};

ExpectedFVector expected_f_vector(const BetaStarParams& p, const FVectorOptions& opt = {});
ExpectedFVector expected_f_vector_closed_half(const BetaStarParams& p);
ExpectedFVector expected_f_vector_closed_bessel(const BetaStarParams& p);
ExpectedFVector expected_f_vector_quadrature(const BetaStarParams& p);

double zero_cell_alpha(int d, double lambda, double beta);
double voronoi_alpha(int d, double lambda);
ExpectedFVector expected_f_vector_zero_cell(int d, double lambda, double beta,
                                            const FVectorOptions& opt = {});
ExpectedFVector expected_f_vector_voronoi(int d, double lambda, const FVectorOptions& opt = {});

double non_absorption_p(int d, double alpha, double beta, double h);
double s_const(int d, double beta, double b);
// Throws InfiniteExpectation outside the finiteness region.
void check_T_finite(int d, double alpha, double beta, double a, double b);
double expected_T(int d, double alpha, double beta, double a, double b);
double expected_intrinsic_volume(int d, double alpha, double beta, int k);

double i_star_infinity(int m, double lambda);
double i_star_correction(int m, double lambda);
std::vector<double> f_vector_limit(int d, double beta);

struct MonotonicityScan {
  std::vector<double> values;
  bool strictly_decreasing = true;
};
MonotonicityScan monotonicity_scan(int d, double beta, int k, const std::vector<double>& alpha_grid);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> errors;
};
// Least-squares slope of log|y| against log x.
SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);
SlopeFit convergence_scan(int d, double beta, int k, const std::vector<double>& alpha_grid);

}  // namespace bstar
