#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>

#include "bstar/analytic.hpp"
#include "bstar/harness.hpp"
#include "bstar/hyperbolic.hpp"
#include "bstar/sampling.hpp"
#include "bstar/specfun.hpp"
#include "bstar/stats.hpp"

using namespace bstar;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Line {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [fail: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Line&)>& body) {
  Line line;
  const auto t0 = Clock::now();
  try {
    body(line);
  } catch (const std::exception& e) {
    line.pass = false;
    line.note << " [exception: " << e.what() << "]";
  }
  if (!line.pass) ++failures;
  std::printf("criterion %2d: %s  %s (%.1fs)%s\n", id, line.pass ? "PASS" : "FAIL", title.c_str(), seconds_since(t0),
              line.note.str().c_str());
  std::fflush(stdout);
}

void check_reports(Line& line, const std::vector<VerificationReport>& reps) {
  for (const auto& r : reps) {
    line.note << " " << r.name << " z=" << std::round(r.z * 100) / 100;
    line.require(r.pass, r.name);
  }
}

long long euler_sum(const std::vector<long long>& f) {
  long long s = 0;
  for (std::size_t k = 0; k < f.size(); ++k) s += (k % 2 ? -1 : 1) * f[k];
  return s;
}

}  // namespace

int main() {
  const std::uint64_t seed = default_seed();
  HarnessOptions ho;
  ho.seed = seed;

  report(1, "closed-form f-vectors agree with quadrature", [](Line& line) {
    const auto t0 = Clock::now();
    FVectorOptions q;
    q.route = FRoute::GeneralQuadrature;
    double worst = 0.0;
    for (double a : {2.0 * kPi, 3.0 * kPi, 4.0 * kPi}) {
      const double ref = a * a * kPi * kPi / (2.0 * (a * a - kPi * kPi));
      worst = std::max(worst, rel(expected_f_vector(BetaStarParams(2, a, 1.5), q).values[0], ref));
    }
    for (double a : {4.0 * kPi, 5.0 * kPi}) {
      const double r = a * a * kPi * kPi / (a * a - 4.0 * kPi * kPi);
      const std::vector<double> g3{2.0 * r / 3.0 + 2.0, 2.0 * r, 4.0 * r / 3.0};
      const auto f3 = expected_f_vector(BetaStarParams(3, a, 2.0), q).values;
      for (int k = 0; k < 3; ++k) worst = std::max(worst, rel(f3[k], g3[k]));
      const double a2 = a * a, a4 = a2 * a2, p2 = kPi * kPi, p4 = p2 * p2;
      const double den = a4 - 10.0 * a2 * p2 + 9.0 * p4;
      const std::vector<double> g4{(40.0 * a4 * p2 - 36.0 * a2 * p4 - 3.0 * a4 * p4) / (8.0 * den),
                                   (10.0 * a4 * p2 - 9.0 * a2 * p4) / (2.0 * den), 3.0 * a4 * p4 / (4.0 * den),
                                   3.0 * a4 * p4 / (8.0 * den)};
      const auto f4 = expected_f_vector(BetaStarParams(4, a, 2.5), q).values;
      for (int k = 0; k < 4; ++k) worst = std::max(worst, rel(f4[k], g4[k]));
    }
    line.note << " max rel err " << worst;
    line.require(worst < 1e-6, "relative error");
    line.require(seconds_since(t0) < 10.0, "runtime");
  });

  report(2, "external angle sums match closed forms", [](Line& line) {
    double worst = 0.0, unit = 0.0;
    for (double a : {6.0 * kPi, 10.0 * kPi})
      for (int m = 1; m <= 4; ++m) worst = std::max(worst, rel(ext_angle_sum(a, m, 1.0), ext_angle_sum_lambda1(a, m)));
    for (double a : {1.0, 2.0, 5.0})
      for (int m = 1; m <= 4; ++m) worst = std::max(worst, rel(ext_angle_sum(a, m, 2.0), ext_angle_sum_lambda2(a, m)));
    for (double l : {1.0, 2.0, 3.0})
      for (double a : {2.0, 5.0, 20.0}) unit = std::max(unit, std::abs(ext_angle_sum(a, 1, l) - 1.0));
    line.note << " max rel err " << worst << ", m=1 err " << unit;
    line.require(worst < 1e-8, "closed forms");
    line.require(unit < 1e-9, "m=1");
  });

  report(3, "J tilde golden values", [](Line& line) {
    const double e = std::max({std::abs(j_tilde_sum(3, 1, 2.5) - 0.5), std::abs(j_tilde_sum(3, 2, 2.5) - 1.5),
                               std::abs(j_tilde_sum(4, 1, 3.5) - 27.0 / 143.0),
                               std::abs(j_tilde_sum(4, 2, 3.5) - 170.0 / 143.0)});
    line.note << " max err " << e;
    line.require(e < 1e-7, "golden values");
  });

  report(4, "A coefficients and the half-integer route", [](Line& line) {
    double ea = 0.0;
    for (int n = 0; n <= 10; ++n) {
      const double f = std::tgamma(n + 1.0) / std::tgamma(0.5 * n + 1.0);
      ea = std::max({ea, std::abs(a_coeff(n, 0) - 1.0), rel(a_coeff(n, n), std::ldexp(f * f, -n))});
    }
    double er = 0.0;
    for (int d = 2; d <= 4; ++d) {
      for (double a : {4.0 * kPi, 8.0 * kPi}) {
        const BetaStarParams p(d, a, 0.5 * (d + 1));
        const auto h = expected_f_vector_closed_half(p).values;
        const auto q = expected_f_vector_quadrature(p).values;
        for (int k = 0; k < d; ++k) er = std::max(er, rel(h[k], q[k]));
      }
    }
    line.note << " A err " << ea << ", route err " << er;
    line.require(ea < 1e-12, "A boundary rows");
    line.require(er < 1e-6, "route agreement");
  });

  report(5, "T(0,0) equals the facet number", [](Line& line) {
    double worst = 0.0;
    for (auto [d, b, a] : {std::tuple{2, 2.0, 10.0}, std::tuple{3, 2.0, 4.0 * kPi}, std::tuple{2, 3.0, 5.0}}) {
      const double f = expected_f_vector(BetaStarParams(d, a, b)).values[d - 1];
      worst = std::max(worst, rel(expected_T(d, a, b, 0.0, 0.0), f));
    }
    line.note << " max rel err " << worst;
    line.require(worst < 1e-6, "identity");
  });

  report(6, "Monte Carlo f-vectors and angle sums", [&](Line& line) {
    const auto t0 = Clock::now();
    const std::size_t n = 2000;
    check_reports(line, verify_f_vector(BetaStarParams(2, 20.0, 2.0), n, ho));
    check_reports(line, verify_f_vector_zero_cell(2, 2.0 * kPi, 1.5, n, ho));
    check_reports(line, verify_f_vector_voronoi(2, 1.0, n, ho));
    check_reports(line, verify_f_vector(BetaStarParams(3, 4.0 * kPi, 2.0), n, ho));
    for (double a : {10.0, 20.0}) check_reports(line, {verify_external_angles(BetaStarParams(2, a, 2.0), 1, n, ho)});
    line.require(seconds_since(t0) < 600.0, "runtime");
  });

  report(7, "hull properties and determinism", [&](Line& line) {
    std::size_t samples = 0, euler_bad = 0, dual_bad = 0, inr_bad = 0;
    for (int d = 2; d <= 4; ++d) {
      const BetaStarParams p(d, 2.0 * alpha_crit(d) + 1.0, 0.5 * (d + 1));
      for (std::uint64_t i = 0; i < 500; ++i) {
        RngStream rng(seed, 50000 + 1000 * d + i);
        const auto o = sample_beta_star_polytope(p, ho.n_max, rng);
        if (!o.terminated()) continue;
        ++samples;
        const auto f = f_vector(*o.polytope);
        if (euler_sum(f) != (d % 2 ? 2 : 0)) ++euler_bad;
        auto g = f_vector(polar_dual(*o.polytope));
        std::reverse(g.begin(), g.end());
        if (g != f) ++dual_bad;
        if (!(inradius(*o.polytope) > 1.0)) ++inr_bad;
      }
    }
    line.note << " samples " << samples << ", euler " << euler_bad << ", dual " << dual_bad << ", inradius " << inr_bad;
    line.require(samples >= 1400 && euler_bad == 0 && dual_bad == 0 && inr_bad == 0, "properties");
    auto fingerprint = [&](int threads) {
      HarnessOptions o = ho;
      o.threads = threads;
      std::ostringstream os;
      const auto batch = run_replicates(50, o, [&](RngStream& rng) -> std::optional<std::vector<double>> {
        const auto s = sample_beta_star_polytope(BetaStarParams(3, 15.0, 2.5), o.n_max, rng);
        return std::vector<double>(s.polytope->vertices.data(),
                                   s.polytope->vertices.data() + s.polytope->vertices.size());
      });
      for (const auto& r : batch.results) os.write(reinterpret_cast<const char*>(r->data()), r->size() * sizeof(double));
      return os.str();
    };
    const auto a = fingerprint(1), b = fingerprint(1), c = fingerprint(3);
    line.require(a == b && a == c, "determinism");
  });

  report(8, "distributional tests", [&](Line& line) {
    // Projection of the d=3 atoms onto the plane.
    const double alpha = 20.0, beta = 2.5, r0 = 1.2;
    const auto target = RadialSampler::beta_star(2, alpha, beta - 0.5);
    const double t0 = target.tail(r0);
    std::vector<double> norms;
    for (std::uint64_t rep = 0; norms.size() < 100000; ++rep) {
      auto radii = RadialSampler::beta_star(3, alpha, beta);
      RngStream rng(seed, 100000 + rep);
      for (double r = radii.next(rng); r > r0; r = radii.next(rng)) {
        const double y = (r * rng.direction(3)).head(2).norm();
        if (y > r0) norms.push_back(y);
      }
    }
    const auto proj = ks_test(norms, [&](double x) { return 1.0 - target.tail(x) / t0; });
    line.note << " projection p=" << proj.p_value << " (n=" << norms.size() << ")";
    line.require(proj.p_value > 0.001, "projection");

    // Order statistics of the perfect sampler radii.
    std::vector<std::vector<double>> order(3);
    for (std::uint64_t rep = 0; rep < 5000; ++rep) {
      auto radii = RadialSampler::beta_star(3, 4.0 * kPi, 2.0);
      RngStream rng(seed, 200000 + rep);
      for (int k = 0; k < 3; ++k) order[k].push_back(radii.tail(radii.next(rng)));
    }
    for (int k = 0; k < 3; ++k) {
      const double shape = k + 1.0;
      const auto r = ks_test(order[k], [shape](double x) { return boost::math::gamma_p(shape, x); });
      line.note << " R_" << k + 1 << " p=" << r.p_value;
      line.require(r.p_value > 0.001, "order statistic");
    }

    // Uniform points in the annulus 1 < |v| < 5 pushed through the de Sitter involution.
    for (int d : {2, 3}) {
      const auto law = RadialSampler::beta_star(d, 1.0, 0.5 * (d + 2));
      const double r_min = 5.0 / std::sqrt(24.0);
      const double tmin = law.tail(r_min);
      RngStream rng(seed, 300000 + d);
      std::vector<double> rs;
      for (int i = 0; i < 20000; ++i) {
        const double r = std::pow(1.0 + rng.uniform() * (std::pow(5.0, d) - 1.0), 1.0 / d);
        rs.push_back(de_sitter_involution(r * rng.direction(d)).norm());
      }
      const auto ds = ks_test(rs, [&](double x) { return 1.0 - law.tail(x) / tmin; });
      line.note << " de Sitter d=" << d << " p=" << ds.p_value;
      line.require(ds.p_value > 0.001, "de Sitter");
    }
  });

  report(9, "convergence slopes and monotonicity", [](Line& line) {
    for (auto [d, b] : {std::pair{2, 2.0}, std::pair{2, 1.5}}) {
      std::vector<double> grid;
      for (int j = 0; j < 4; ++j) grid.push_back(8.0 * kPi * std::pow(2.0, j));
      const auto r = verify_convergence(d, b, 0, grid);
      line.note << " slope(" << d << "," << b << ")=" << r.fit.slope;
      line.require(r.pass, "slope");
    }
    for (auto [d, b] : {std::pair{2, 2.0}, std::pair{3, 2.0}, std::pair{2, 1.5}}) {
      std::vector<double> grid;
      for (int j = 0; j < 8; ++j) grid.push_back(1.1 * alpha_crit(d) * std::pow(1.5, j) + 1.0);
      line.require(monotonicity_scan(d, b, 0, grid).strictly_decreasing, "monotonicity");
    }
  });

  report(10, "de Sitter angle identity", [&](Line& line) {
    check_reports(line, {efron_de_sitter_check(2, 2.0 * kPi, 10000, ho)});
  });

  report(11, "cap covering phase behaviour", [&](Line& line) {
    int uncovered_low = 0, covered_high = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      RngStream a(seed, 400000 + i), b(seed, 500000 + i);
      uncovered_low += !cap_covering_experiment(2, kPi / 3.0, 1.5, 10000, a).covered;
      covered_high += cap_covering_experiment(2, 3.0 * kPi, 1.5, 10000, b).covered;
    }
    line.note << " uncovered at pi/3: " << uncovered_low << "/100, covered at 3pi: " << covered_high << "/100";
    line.require(uncovered_low >= 10, "low intensity");
    line.require(covered_high >= 95, "high intensity");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
