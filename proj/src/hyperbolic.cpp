#include "bstar/hyperbolic.hpp"

#include <cmath>

#include "bstar/errors.hpp"

namespace bstar {

namespace {

constexpr double kModelTol = 1e-9;

void check_hyperboloid(const Eigen::VectorXd& x) {
  if (x.size() < 2) throw DomainError("hyperboloid point needs d+1 >= 2 coordinates");
  const double b = x[0] * x[0] - x.tail(x.size() - 1).squaredNorm();
  if (!(x[0] > 0.0) || std::abs(b - 1.0) > kModelTol * std::max(1.0, x[0] * x[0])) {
    throw DomainError("point is not on the upper hyperboloid sheet");
  }
}

void check_ball(const Eigen::VectorXd& v, const char* what) {
  if (!(v.squaredNorm() < 1.0)) throw DomainError(std::string(what) + ": point outside the open unit ball");
}

}  // namespace

Eigen::VectorXd gnomonic(const Eigen::VectorXd& x) {
  check_hyperboloid(x);
  return x.tail(x.size() - 1) / x[0];
}

Eigen::VectorXd stereographic(const Eigen::VectorXd& x) {
  check_hyperboloid(x);
  return x.tail(x.size() - 1) / (1.0 + x[0]);
}

Eigen::VectorXd poi_to_kl(const Eigen::VectorXd& w) {
  check_ball(w, "poi_to_kl");
  return 2.0 * w / (1.0 + w.squaredNorm());
}

Eigen::VectorXd kl_to_poi(const Eigen::VectorXd& v) {
  check_ball(v, "kl_to_poi");
  return v / (1.0 + std::sqrt(1.0 - v.squaredNorm()));
}

Eigen::VectorXd hyperboloid_point(const Eigen::VectorXd& u, double theta) {
  Eigen::VectorXd x(u.size() + 1);
  x[0] = std::cosh(theta);
  x.tail(u.size()) = std::sinh(theta) * u.normalized();
  return x;
}

double d_kl(const Eigen::VectorXd& v) {
  check_ball(v, "d_kl");
  return std::atanh(v.norm());
}

double d_poi(const Eigen::VectorXd& w) {
  check_ball(w, "d_poi");
  return 2.0 * std::atanh(w.norm());
}

double d_hyp(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  check_hyperboloid(x);
  check_hyperboloid(y);
  const Eigen::Index n = x.size() - 1;
  const double b = x[0] * y[0] - x.tail(n).dot(y.tail(n));
  return std::acosh(std::max(b, 1.0));
}

Eigen::VectorXd de_sitter_involution(const Eigen::VectorXd& v) {
  const double n2 = v.squaredNorm();
  if (!(n2 > 1.0)) throw DomainError("de_sitter_involution: |v| > 1 required");
  return v / std::sqrt(n2 - 1.0);
}

}  // namespace bstar
