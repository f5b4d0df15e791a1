#pragma once

#include <Eigen/Dense>

namespace bstar {

// Hyperboloid points are (x_0, x_1..x_d) with x_0^2 - |x'|^2 = 1, x_0 > 0.
Eigen::VectorXd gnomonic(const Eigen::VectorXd& x);       // to the Klein ball
Eigen::VectorXd stereographic(const Eigen::VectorXd& x);  // to the Poincare ball
Eigen::VectorXd poi_to_kl(const Eigen::VectorXd& w);
Eigen::VectorXd kl_to_poi(const Eigen::VectorXd& v);
Eigen::VectorXd hyperboloid_point(const Eigen::VectorXd& u, double theta);

double d_kl(const Eigen::VectorXd& v);   // distance from the origin, Klein model
double d_poi(const Eigen::VectorXd& w);  // distance from the origin, Poincare model
double d_hyp(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// v / sqrt(|v|^2 - 1) on |v| > 1.
Eigen::VectorXd de_sitter_involution(const Eigen::VectorXd& v);

}  // namespace bstar
