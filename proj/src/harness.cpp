#include "bstar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bstar/errors.hpp"
#include "bstar/quadrature.hpp"
#include "bstar/sampling.hpp"
#include "bstar/specfun.hpp"
#include "bstar/stats.hpp"

namespace bstar {

std::vector<double> ReplicateBatch::column(std::size_t k) const {
  std::vector<double> c;
  for (const auto& r : results)
    if (r && k < r->size()) c.push_back((*r)[k]);
  return c;
}

ReplicateBatch run_replicates(std::size_t replicates, const HarnessOptions& opt, const ReplicateFn& fn) {
  ReplicateBatch batch;
  batch.results.resize(replicates);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mtx;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= replicates) return;
      try {
        RngStream rng(opt.seed, opt.stream_offset + i);
        batch.results[i] = fn(rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mtx);
        if (!error) error = std::current_exception();
        next = replicates;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(std::max<std::size_t>(replicates, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (const auto& r : batch.results)
    if (!r) ++batch.failures;
  return batch;
}

SampleRun make_sample_run(const std::string& statistic, const ParamList& params,
                          const ReplicateBatch& batch, std::size_t column, const HarnessOptions& opt) {
  SampleRun run;
  run.statistic = statistic;
  run.params = params;
  run.seed = opt.seed;
  run.failures = batch.failures;
  const std::vector<double> v = batch.column(column);
  run.replicates = v.size();
  if (v.size() < 2) {
    throw ParameterError("at least 2 successful replicates required for a standard error (got " +
                         std::to_string(v.size()) + ")");
  }
  const Summary s = summarize(v);
  run.mean = s.mean;
  run.std_error = s.std_error;
  return run;
}

namespace {

double z_score(double diff, double se, double scale) {
  if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(scale))) return 0.0;
  if (se <= 0.0) return diff > 0 ? INFINITY : -INFINITY;
  return diff / se;
}

void require_replicates(std::size_t n) {
  if (n < 2) throw ParameterError("replicates >= 2 required for a standard error");
}

std::string indexed(const std::string& base, int k) { return base + "_" + std::to_string(k); }

std::vector<VerificationReport> f_vector_reports(const std::string& name, const ParamList& params,
                                                 const std::vector<double>& analytic, std::size_t replicates,
                                                 const HarnessOptions& opt,
                                                 const std::function<SimOutcome(RngStream&)>& sample) {
  require_replicates(replicates);
  auto batch = run_replicates(replicates, opt, [&](RngStream& rng) -> std::optional<std::vector<double>> {
    SimOutcome o = sample(rng);
    if (!o.terminated()) return std::nullopt;
    std::vector<double> f;
    for (long long x : f_vector(*o.polytope)) f.push_back(static_cast<double>(x));
    return f;
  });
  std::vector<VerificationReport> out;
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    const SampleRun run = make_sample_run(indexed("f", static_cast<int>(k)), params, batch, k, opt);
    out.push_back(make_report(name + " " + indexed("f", static_cast<int>(k)), analytic[k], run, opt.z_max));
  }
  return out;
}

ParamList beta_star_params(const BetaStarParams& p) {
  return {{"d", p.d}, {"alpha", p.alpha}, {"beta", p.beta}};
}

}  // namespace

VerificationReport make_report(const std::string& name, double analytic, const SampleRun& run, double z_max) {
  VerificationReport r;
  r.name = name;
  r.analytic = analytic;
  r.empirical = run;
  r.z_max = z_max;
  r.z = z_score(run.mean - analytic, run.std_error, analytic);
  r.pass = std::abs(r.z) <= z_max;
  return r;
}

std::vector<VerificationReport> verify_f_vector(const BetaStarParams& p, std::size_t replicates,
                                                const HarnessOptions& opt) {
  const auto analytic = expected_f_vector(p).values;
  return f_vector_reports("beta_star", beta_star_params(p), analytic, replicates, opt,
                          [&](RngStream& rng) { return sample_beta_star_polytope(p, opt.n_max, rng); });
}

std::vector<VerificationReport> verify_f_vector_zero_cell(int d, double lambda, double beta,
                                                          std::size_t replicates, const HarnessOptions& opt) {
  const auto analytic = expected_f_vector_zero_cell(d, lambda, beta).values;
  return f_vector_reports("zero_cell", {{"d", d}, {"lambda", lambda}, {"beta", beta}}, analytic, replicates,
                          opt, [&](RngStream& rng) { return sample_zero_cell(d, lambda, beta, opt.n_max, rng); });
}

std::vector<VerificationReport> verify_f_vector_voronoi(int d, double lambda, std::size_t replicates,
                                                        const HarnessOptions& opt) {
  const auto analytic = expected_f_vector_voronoi(d, lambda).values;
  return f_vector_reports("voronoi", {{"d", d}, {"lambda", lambda}}, analytic, replicates, opt,
                          [&](RngStream& rng) { return sample_voronoi_typical_cell(d, lambda, opt.n_max, rng); });
}

VerificationReport verify_T(const BetaStarParams& p, double a, double b, std::size_t replicates,
                            const HarnessOptions& opt) {
  require_replicates(replicates);
  const double analytic = expected_T(p.d, p.alpha, p.beta, a, b);
  auto batch = run_replicates(replicates, opt, [&](RngStream& rng) -> std::optional<std::vector<double>> {
    SimOutcome o = sample_beta_star_polytope(p, opt.n_max, rng);
    if (!o.terminated()) return std::nullopt;
    return std::vector<double>{t_functional(*o.polytope, a, b)};
  });
  ParamList params = beta_star_params(p);
  params.emplace_back("a", a);
  params.emplace_back("b", b);
  return make_report("T", analytic, make_sample_run("T", params, batch, 0, opt), opt.z_max);
}

double intrinsic_volume_estimate(const Polytope& poly, int k, RngStream& rng, std::size_t directions) {
  const int d = poly.dim;
  if (k < 1 || k > d) throw ParameterError("intrinsic volume: 1 <= k <= d required");
  if (k == d) return volume(poly);
  if (k == 1) {
    double s = 0.0;
    if (d == 2) {
      const double shift = rng.uniform();
      for (std::size_t i = 0; i < directions; ++i) {
        const double a = 2.0 * kPi * (static_cast<double>(i) + shift) / static_cast<double>(directions);
        Vector u(2);
        u << std::cos(a), std::sin(a);
        s += support(poly, u);
      }
    } else {
      for (std::size_t i = 0; i < directions; ++i) s += support(poly, rng.direction(d));
    }
    const double mean_h = s / static_cast<double>(directions);
    return d * ball_volume(d) / ball_volume(d - 1) * mean_h;
  }
  if (k == d - 1) {
    double area = 0.0;
    for (std::size_t i = 0; i < poly.facets.size(); ++i) area += facet_volume(poly, i);
    return 0.5 * area;
  }
  throw DomainError("intrinsic volume estimate: k in {1, d-1, d} supported");
}

VerificationReport verify_intrinsic(const BetaStarParams& p, int k, std::size_t replicates,
                                    const HarnessOptions& opt) {
  require_replicates(replicates);
  const double analytic = expected_intrinsic_volume(p.d, p.alpha, p.beta, k);
  auto batch = run_replicates(replicates, opt, [&](RngStream& rng) -> std::optional<std::vector<double>> {
    SimOutcome o = sample_beta_star_polytope(p, opt.n_max, rng);
    if (!o.terminated()) return std::nullopt;
    return std::vector<double>{intrinsic_volume_estimate(*o.polytope, k, rng)};
  });
  ParamList params = beta_star_params(p);
  params.emplace_back("k", k);
  return make_report(indexed("V", k), analytic, make_sample_run(indexed("V", k), params, batch, 0, opt),
                     opt.z_max);
}

double external_angle_sum(const Polytope& poly, int k, std::size_t draws, RngStream& rng) {
  double s = 0.0;
  for (const auto& f : faces(poly, k)) s += external_angle_mc(poly, f, draws, rng);
  return s;
}

VerificationReport verify_external_angles(const BetaStarParams& p, int k, std::size_t replicates,
                                          const HarnessOptions& opt, std::size_t draws) {
  require_replicates(replicates);
  if (k < 0 || k >= p.d) throw ParameterError("external angles: 0 <= k < d required");
  const double lambda = is_critical_beta(p.d, p.beta) ? 1.0 : 2.0 * p.beta - p.d;
  const double analytic = ext_angle_sum(p.alpha, k + 1, lambda);
  auto batch = run_replicates(replicates, opt, [&](RngStream& rng) -> std::optional<std::vector<double>> {
    SimOutcome o = sample_beta_star_polytope(p, opt.n_max, rng);
    if (!o.terminated()) return std::nullopt;
    return std::vector<double>{external_angle_sum(*o.polytope, k, draws, rng)};
  });
  ParamList params = beta_star_params(p);
  params.emplace_back("k", k);
  return make_report(indexed("ext_angle_sum", k), analytic,
                     make_sample_run(indexed("ext_angle_sum", k), params, batch, 0, opt), opt.z_max);
}

double de_sitter_angle(const Polytope& poly, RngStream& rng, std::size_t directions) {
  const int d = poly.dim;
  const double beta = 0.5 * (d + 1);
  const double c = c_tilde(d, beta);
  if (inradius(poly) <= 1.0) throw DomainError("de_sitter_angle: inradius > 1 required");
  if (d == 2) {
    // Exact per edge: int cos(p) / sqrt(h^2 - cos^2 p) dp = asinh(sin p / sqrt(h^2 - 1)).
    double s = 0.0;
    for (const auto& f : poly.facets) {
      const double theta = std::atan2(f.normal[1], f.normal[0]);
      const double k = std::sqrt(f.offset * f.offset - 1.0);
      double part = 0.0;
      for (int j = 0; j < 2; ++j) {
        const Vector v = poly.vertex(f.vertices[j]);
        double phi = std::atan2(v[1], v[0]) - theta;
        phi = std::remainder(phi, 2.0 * kPi);
        part += (j ? 1.0 : -1.0) * std::asinh(std::sin(phi) / k);
      }
      s += std::abs(part);
    }
    return 0.5 * c * s;
  }
  auto g = [d](double rho) {
    const double top = std::atanh(1.0 / rho);
    return integrate([d](double t) { return std::pow(std::cosh(t), d - 1); }, 0.0, top, 1e-10).value;
  };
  double s = 0.0;
  for (std::size_t i = 0; i < directions; ++i) s += g(radial_distance(poly, rng.direction(d)));
  return 0.5 * c * sphere_surface(d) * s / static_cast<double>(directions);
}

VerificationReport efron_de_sitter_check(int d, double alpha, std::size_t replicates, const HarnessOptions& opt) {
  require_replicates(replicates);
  const BetaStarParams p(d, alpha, 0.5 * (d + 1));
  if (!(alpha > (d - 1) * kPi)) throw ParameterError("efron check: alpha > (d-1)pi required");
  const double analytic = expected_f_vector(p).values[0] / (2.0 * alpha);
  const ParamList params = beta_star_params(p);

  auto angles = run_replicates(replicates, opt, [&](RngStream& rng) -> std::optional<std::vector<double>> {
    SimOutcome o = sample_beta_star_polytope(p, opt.n_max, rng);
    if (!o.terminated()) return std::nullopt;
    return std::vector<double>{de_sitter_angle(*o.polytope, rng)};
  });
  HarnessOptions second = opt;
  second.stream_offset = opt.stream_offset + replicates;
  auto counts = run_replicates(replicates, second, [&](RngStream& rng) -> std::optional<std::vector<double>> {
    SimOutcome o = sample_beta_star_polytope(p, opt.n_max, rng);
    if (!o.terminated()) return std::nullopt;
    return std::vector<double>{o.polytope->num_vertices() / (2.0 * alpha)};
  });

  VerificationReport r;
  r.name = "efron_de_sitter";
  r.analytic = analytic;
  r.empirical = make_sample_run("de_sitter_angle", params, angles, 0, opt);
  r.reference = make_sample_run("f0_over_2alpha", params, counts, 0, second);
  r.z_max = opt.z_max;
  const double se = std::hypot(r.empirical.std_error, r.reference->std_error);
  r.z = z_score(r.empirical.mean - r.reference->mean, se, analytic);
  r.pass = std::abs(r.z) <= r.z_max;
  return r;
}

ConvergenceReport verify_convergence(int d, double beta, int k, const std::vector<double>& alpha_grid,
                                     double tolerance) {
  ConvergenceReport r;
  r.fit = convergence_scan(d, beta, k, alpha_grid);
  r.expected_slope = -2.0 / (2.0 * beta - d);
  r.tolerance = tolerance;
  r.pass = std::abs(r.fit.slope - r.expected_slope) <= tolerance;
  return r;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.pass; });
}

}  // namespace bstar
