#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "bstar/analytic.hpp"
#include "bstar/errors.hpp"
#include "bstar/geometry.hpp"
#include "bstar/harness.hpp"
#include "bstar/rng.hpp"
#include "bstar/sampling.hpp"
#include "bstar/specfun.hpp"
#include "config.hpp"

using nlohmann::json;
using namespace bstar;
using bstar::cli::RunConfig;

namespace {

enum Exit { kPass = 0, kVerifyFail = 1, kParamError = 2, kBudget = 3 };

double need(const std::optional<double>& v, const char* name) {
  if (!v) throw ParameterError(std::string("--") + name + " is required for this command");
  return *v;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

// Inradius about the origin, or 0 when the origin is not interior.
double min_facet_offset(const Polytope& p) {
  double m = INFINITY;
  for (const auto& f : p.facets) m = std::min(m, f.offset);
  return p.facets.empty() ? 0.0 : std::max(0.0, m);
}

FRoute parse_route(const std::string& r) {
  if (r == "quadrature") return FRoute::GeneralQuadrature;
  if (r == "half") return FRoute::ClosedFormHalf;
  if (r == "bessel") return FRoute::ClosedFormBessel;
  return FRoute::Auto;
}

json report_json(const VerificationReport& r) {
  json j{{"name", r.name},           {"analytic", r.analytic},
         {"mean", r.empirical.mean}, {"stderr", r.empirical.std_error},
         {"z", r.z},                 {"z_max", r.z_max},
         {"pass", r.pass},           {"replicates", r.empirical.replicates},
         {"failures", r.empirical.failures}};
  json p = json::object();
  for (const auto& [k, v] : r.empirical.params) p[k] = v;
  j["params"] = p;
  if (r.reference) {
    j["reference"] = {{"statistic", r.reference->statistic},
                      {"mean", r.reference->mean},
                      {"stderr", r.reference->std_error}};
  }
  return j;
}

void print_f_vector(std::ostream& os, const RunConfig& c, const std::string& label, const ExpectedFVector& f,
                    const json& extra) {
  if (c.json) {
    json j{{"provenance", cli::provenance(c)}, {"object", label}, {"f_vector", f.values},
           {"route", to_string(f.route)}, {"euler_sum", f.euler_sum()}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    os << j.dump(2) << "\n";
    return;
  }
  os << label << " route=" << to_string(f.route) << "\n";
  for (std::size_t k = 0; k < f.values.size(); ++k) os << "f_" << k << " " << num(f.values[k]) << "\n";
}

int cmd_analytic(const RunConfig& c) {
  Output out(c.out);
  std::ostream& os = out.os();
  FVectorOptions fo;
  fo.route = parse_route(c.route);
  const std::string& t = c.target;
  if (t == "f-vector") {
    const BetaStarParams p(c.d, need(c.alpha, "alpha"), need(c.beta, "beta"));
    print_f_vector(os, c, "beta_star", expected_f_vector(p, fo), {{"phase", to_string(phase_classify(p))}});
  } else if (t == "zero-cell") {
    const double lambda = need(c.lambda, "lambda");
    const double beta = c.beta.value_or(0.5 * (c.d + 1));
    print_f_vector(os, c, "zero_cell", expected_f_vector_zero_cell(c.d, lambda, beta, fo),
                   {{"alpha", zero_cell_alpha(c.d, lambda, beta)}});
  } else if (t == "voronoi") {
    const double lambda = need(c.lambda, "lambda");
    print_f_vector(os, c, "voronoi_typical_cell", expected_f_vector_voronoi(c.d, lambda, fo),
                   {{"alpha", voronoi_alpha(c.d, lambda)}});
  } else if (t == "phase") {
    const BetaStarParams p(c.d, need(c.alpha, "alpha"), need(c.beta, "beta"));
    const std::string ph = to_string(phase_classify(p));
    if (c.json) {
      os << json{{"provenance", cli::provenance(c)}, {"phase", ph}, {"alpha_crit", alpha_crit(c.d)}}.dump(2) << "\n";
    } else {
      os << ph << "\n";
    }
  } else if (t == "T") {
    const double v = expected_T(c.d, need(c.alpha, "alpha"), need(c.beta, "beta"), c.a, c.b);
    if (c.json) {
      os << json{{"provenance", cli::provenance(c)}, {"T", v}}.dump(2) << "\n";
    } else {
      os << "T_{" << num(c.a) << "," << num(c.b) << "} " << num(v) << "\n";
    }
  } else if (t == "intrinsic") {
    const double alpha = need(c.alpha, "alpha"), beta = need(c.beta, "beta");
    json vals = json::object();
    const int lo = c.k ? *c.k : 1, hi = c.k ? *c.k : c.d;
    for (int k = lo; k <= hi; ++k) vals["V_" + std::to_string(k)] = expected_intrinsic_volume(c.d, alpha, beta, k);
    if (c.json) {
      os << json{{"provenance", cli::provenance(c)}, {"intrinsic_volumes", vals}}.dump(2) << "\n";
    } else {
      for (auto it = vals.begin(); it != vals.end(); ++it) os << it.key() << " " << num(it.value()) << "\n";
    }
  } else if (t == "angles") {
    const BetaStarParams p(c.d, need(c.alpha, "alpha"), need(c.beta, "beta"));
    const double lambda = is_critical_beta(p.d, p.beta) ? 1.0 : 2.0 * p.beta - p.d;
    json ext = json::object(), jt = json::object();
    for (int m = 1; m <= p.d; ++m) ext["I*_" + std::to_string(m)] = ext_angle_sum(p.alpha, m, lambda);
    for (int s = 0; 2 * s < p.d; ++s) {
      const int m = p.d - 2 * s;
      for (int l = 1; l <= m; ++l) {
        jt["J_" + std::to_string(m) + "," + std::to_string(l)] = j_tilde_sum(m, l, p.beta - s - 0.5);
      }
    }
    if (c.json) {
      os << json{{"provenance", cli::provenance(c)}, {"lambda", lambda}, {"ext_angle_sums", ext}, {"j_tilde", jt}}.dump(2)
         << "\n";
    } else {
      for (auto it = ext.begin(); it != ext.end(); ++it) os << it.key() << " " << num(it.value()) << "\n";
      for (auto it = jt.begin(); it != jt.end(); ++it) os << it.key() << " " << num(it.value()) << "\n";
    }
  } else {
    throw ParameterError("unknown analytic target '" + t + "' (f-vector, zero-cell, voronoi, phase, T, intrinsic, angles)");
  }
  return kPass;
}

int simulate_polytopes(const RunConfig& c) {
  std::function<SimOutcome(RngStream&)> sample;
  const std::string& t = c.target;
  if (t == "polytope") {
    const BetaStarParams p(c.d, need(c.alpha, "alpha"), need(c.beta, "beta"));
    sample = [p, &c](RngStream& rng) { return sample_beta_star_polytope(p, c.n_max, rng); };
  } else if (t == "zero-cell") {
    const double lambda = need(c.lambda, "lambda"), beta = c.beta.value_or(0.5 * (c.d + 1));
    sample = [=, &c](RngStream& rng) { return sample_zero_cell(c.d, lambda, beta, c.n_max, rng); };
  } else if (t == "voronoi") {
    const double lambda = need(c.lambda, "lambda");
    sample = [=, &c](RngStream& rng) { return sample_voronoi_typical_cell(c.d, lambda, c.n_max, rng); };
  } else {
    const double mu = need(c.mu, "mu"), beta = need(c.beta, "beta");
    sample = [=, &c](RngStream& rng) { return sample_poisson_polytope(c.d, mu, beta, c.n_max, rng); };
  }
  HarnessOptions ho;
  ho.seed = c.seed;
  ho.threads = c.threads;
  std::vector<SimOutcome> outcomes(c.reps);
  run_replicates(c.reps, ho, [&](RngStream& rng) -> std::optional<std::vector<double>> {
    outcomes[rng.stream()] = sample(rng);
    return std::vector<double>{};
  });

  Output out(c.out);
  std::ostream& os = out.os();
  os << json{{"provenance", cli::provenance(c)}}.dump() << "\n";
  std::size_t failures = 0;
  const std::filesystem::path base = c.out.empty() ? std::filesystem::path(c.target) : std::filesystem::path(c.out);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SimOutcome& o = outcomes[i];
    json row{{"replicate", i}, {"seed", c.seed}, {"stream", i}, {"terminated", o.terminated()}, {"atoms", o.atoms}};
    if (o.terminated()) {
      const Polytope& p = *o.polytope;
      row["f_vector"] = f_vector(p);
      row["inradius"] = min_facet_offset(p);
      row["circumradius"] = circumradius(p);
      row["T"] = t_functional(p, c.a, c.b);
      if (c.off) {
        std::filesystem::path f = base;
        f.replace_extension();
        f += "_" + std::to_string(i) + ".off";
        std::ofstream off(f);
        write_off(off, p);
        row["off"] = f.string();
      }
    } else {
      ++failures;
    }
    os << row.dump() << "\n";
  }
  const double frac = c.reps ? static_cast<double>(failures) / static_cast<double>(c.reps) : 0.0;
  if (frac > c.budget) {
    std::cerr << "NotTerminated fraction " << frac << " exceeds budget " << c.budget << "\n";
    return kBudget;
  }
  return kPass;
}

int cmd_simulate(const RunConfig& c) {
  const std::string& t = c.target;
  if (t == "polytope" || t == "zero-cell" || t == "voronoi" || t == "poisson") return simulate_polytopes(c);
  Output out(c.out);
  std::ostream& os = out.os();
  if (t == "covering") {
    const double lambda = need(c.lambda, "lambda"), beta = c.beta.value_or(0.5 * (c.d + 1));
    HarnessOptions ho;
    ho.seed = c.seed;
    ho.threads = c.threads;
    auto batch = run_replicates(c.reps, ho, [&](RngStream& rng) -> std::optional<std::vector<double>> {
      const CoverageResult r = cap_covering_experiment(c.d, lambda, beta, c.caps, rng, c.grid);
      return std::vector<double>{r.covered ? 1.0 : 0.0, r.uncovered_fraction};
    });
    const auto covered = batch.column(0), frac = batch.column(1);
    double nc = 0.0, mf = 0.0;
    for (std::size_t i = 0; i < covered.size(); ++i) {
      nc += covered[i];
      mf += frac[i];
    }
    if (!frac.empty()) mf /= static_cast<double>(frac.size());
    if (c.json) {
      os << json{{"provenance", cli::provenance(c)}, {"runs", c.reps}, {"covered_runs", nc},
                 {"mean_uncovered_fraction", mf}}.dump(2) << "\n";
    } else {
      os << "d,lambda,beta,caps,grid,runs,covered_runs,mean_uncovered_fraction\n";
      os << c.d << "," << num(lambda) << "," << num(beta) << "," << c.caps << "," << c.grid << "," << c.reps << ","
         << nc << "," << num(mf) << "\n";
    }
    return kPass;
  }
  RngStream rng(c.seed, 0);
  Matrix pts;
  if (t == "beta-prime") {
    pts = sample_beta_prime(c.d, need(c.beta, "beta"), c.points, rng);
  } else if (t == "hyperbolic-points") {
    const auto v = sample_hyperbolic_voronoi_points(c.d, need(c.lambda, "lambda"), c.beta.value_or(c.d), c.r_max, rng);
    pts.resize(c.d, static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) pts.col(static_cast<Eigen::Index>(i)) = v[i];
  } else {
    throw ParameterError("unknown simulate target '" + t +
                         "' (polytope, zero-cell, voronoi, poisson, covering, beta-prime, hyperbolic-points)");
  }
  os << "# " << cli::provenance(c).dump() << "\n";
  for (int k = 0; k < c.d; ++k) os << (k ? "," : "") << "x" << k;
  os << "\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    for (int k = 0; k < c.d; ++k) os << (k ? "," : "") << pts(k, i);
    os << "\n";
  }
  return kPass;
}

void print_reports(std::ostream& os, const RunConfig& c, const std::vector<VerificationReport>& reports) {
  if (c.json) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    os << json{{"provenance", cli::provenance(c)}, {"reports", arr}}.dump(2) << "\n";
    return;
  }
  os << "# " << cli::provenance(c).dump() << "\n";
  os << "name,params,analytic,mean,stderr,z,pass,failures\n";
  for (const auto& r : reports) {
    std::string params;
    for (const auto& [k, v] : r.empirical.params) params += (params.empty() ? "" : ";") + k + "=" + num(v);
    os << r.name << "," << params << "," << num(r.analytic) << "," << num(r.empirical.mean) << ","
       << num(r.empirical.std_error) << "," << num(r.z) << "," << (r.pass ? "true" : "false") << ","
       << r.empirical.failures << "\n";
  }
}

int sweep(const RunConfig& c, std::ostream& os, bool monte_carlo) {
  const bool zero = c.preset == "figure5";
  if (!zero && c.preset != "figure6") throw ParameterError("unknown preset '" + c.preset + "' (figure5, figure6)");
  os << "# " << cli::provenance(c).dump() << "\n";
  os << "d,lambda,beta,analytic,euclidean,mean,stderr,z,pass\n";
  bool ok = true;
  for (int d = 2; d <= 4; ++d) {
    const double beta = zero ? 0.5 * (d + 1) : d;
    const auto limit = f_vector_limit(d, beta);
    const double euclid = limit.back();
    for (int j = 1; j <= 40; ++j) {
      const double lambda = zero ? lambda_crit(d) * (1.0 + 0.1 * j) : 0.125 * j;
      const auto f = zero ? expected_f_vector_zero_cell(d, lambda, beta) : expected_f_vector_voronoi(d, lambda);
      os << d << "," << num(lambda) << "," << num(beta) << "," << num(f.values[0]) << "," << num(euclid);
      if (monte_carlo) {
        HarnessOptions ho;
        ho.seed = c.seed;
        ho.threads = c.threads;
        ho.n_max = c.n_max;
        ho.z_max = c.z_max;
        const auto reps = zero ? verify_f_vector_zero_cell(d, lambda, beta, c.reps, ho)
                               : verify_f_vector_voronoi(d, lambda, c.reps, ho);
        const auto& r = reps.front();
        ok = ok && r.pass;
        os << "," << num(r.empirical.mean) << "," << num(r.empirical.std_error) << "," << num(r.z) << ","
           << (r.pass ? "true" : "false") << "\n";
      } else {
        os << ",,,,\n";
      }
    }
  }
  return ok ? kPass : kVerifyFail;
}

int cmd_verify(const RunConfig& c, bool monte_carlo_sweep) {
  Output out(c.out);
  std::ostream& os = out.os();
  HarnessOptions ho;
  ho.seed = c.seed;
  ho.threads = c.threads;
  ho.n_max = c.n_max;
  ho.z_max = c.z_max;
  const std::string& t = c.target;
  if (t == "sweep") return sweep(c, os, monte_carlo_sweep);
  if (t == "convergence") {
    const double alpha = need(c.alpha, "alpha"), beta = need(c.beta, "beta");
    std::vector<double> grid;
    for (int j = 0; j < 4; ++j) grid.push_back(alpha * std::pow(2.0, j));
    const auto r = verify_convergence(c.d, beta, c.k.value_or(0), grid);
    if (c.json) {
      os << json{{"provenance", cli::provenance(c)}, {"slope", r.fit.slope}, {"expected", r.expected_slope},
                 {"tolerance", r.tolerance}, {"pass", r.pass}}.dump(2) << "\n";
    } else {
      os << "slope,expected,tolerance,pass\n"
         << num(r.fit.slope) << "," << num(r.expected_slope) << "," << num(r.tolerance) << ","
         << (r.pass ? "true" : "false") << "\n";
    }
    return r.pass ? kPass : kVerifyFail;
  }
  std::vector<VerificationReport> reports;
  if (t == "f-vector") {
    reports = verify_f_vector(BetaStarParams(c.d, need(c.alpha, "alpha"), need(c.beta, "beta")), c.reps, ho);
  } else if (t == "zero-cell") {
    reports = verify_f_vector_zero_cell(c.d, need(c.lambda, "lambda"), c.beta.value_or(0.5 * (c.d + 1)), c.reps, ho);
  } else if (t == "voronoi") {
    reports = verify_f_vector_voronoi(c.d, need(c.lambda, "lambda"), c.reps, ho);
  } else if (t == "T") {
    reports.push_back(verify_T(BetaStarParams(c.d, need(c.alpha, "alpha"), need(c.beta, "beta")), c.a, c.b, c.reps, ho));
  } else if (t == "intrinsic") {
    const BetaStarParams p(c.d, need(c.alpha, "alpha"), need(c.beta, "beta"));
    reports.push_back(verify_intrinsic(p, c.k.value_or(1), c.reps, ho));
  } else if (t == "angles") {
    const BetaStarParams p(c.d, need(c.alpha, "alpha"), need(c.beta, "beta"));
    reports.push_back(verify_external_angles(p, c.k.value_or(c.d - 1), c.reps, ho, c.draws));
  } else if (t == "efron") {
    reports.push_back(efron_de_sitter_check(c.d, need(c.alpha, "alpha"), c.reps, ho));
  } else {
    throw ParameterError("unknown verify target '" + t +
                         "' (f-vector, zero-cell, voronoi, T, intrinsic, angles, efron, convergence, sweep)");
  }
  print_reports(os, c, reports);
  if (!all_pass(reports)) return kVerifyFail;
  for (const auto& r : reports) {
    const double total = static_cast<double>(r.empirical.replicates + r.empirical.failures);
    if (total > 0 && r.empirical.failures / total > c.budget) return kBudget;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected face numbers and perfect simulation of beta* polytopes and hyperbolic cells"};
  app.set_config("--config", "", "TOML or INI file with option values");
  app.require_subcommand(1);

  RunConfig c;
  c.seed = default_seed(c.seed);
  bool mc = false;
  app.add_option("--d", c.d, "Dimension")->capture_default_str();
  app.add_option_function<double>("--alpha", [&](const double& v) { c.alpha = v; }, "Intensity alpha");
  app.add_option_function<double>("--lambda", [&](const double& v) { c.lambda = v; }, "Tessellation intensity");
  app.add_option_function<double>("--mu", [&](const double& v) { c.mu = v; }, "Poisson polytope intensity");
  app.add_option_function<double>("--beta", [&](const double& v) { c.beta = v; }, "Shape parameter beta");
  app.add_option("--a", c.a, "T-functional exponent of the distance")->capture_default_str();
  app.add_option("--b", c.b, "T-functional exponent of the volume")->capture_default_str();
  app.add_option_function<int>("--k", [&](const int& v) { c.k = v; }, "Face or intrinsic-volume index");
  app.add_option("--reps", c.reps, "Replicates")->capture_default_str();
  app.add_option("--n-max", c.n_max, "Atom budget per replicate")->capture_default_str();
  app.add_option("--caps", c.caps, "Caps in the covering experiment")->capture_default_str();
  app.add_option("--grid", c.grid, "Directions in the covering grid")->capture_default_str();
  app.add_option("--draws", c.draws, "Gaussian draws per face for external angles")->capture_default_str();
  app.add_option("--points", c.points, "Points for sample dumps")->capture_default_str();
  app.add_option("--r-max", c.r_max, "Radius window for hyperbolic points")->capture_default_str();
  app.add_option("--seed", c.seed, "Master seed (default from BSTAR_SEED)")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  app.add_option("--z-max", c.z_max, "Pass threshold on |z|")->capture_default_str();
  app.add_option("--budget", c.budget, "Tolerated NotTerminated fraction")->capture_default_str();
  app.add_option("--route", c.route, "f-vector route: auto, quadrature, half, bessel")->capture_default_str();
  app.add_option("--preset", c.preset, "Sweep preset: figure5, figure6");
  app.add_option("--out", c.out, "Output file (stdout when empty)");
  app.add_flag("--off", c.off, "Write OFF files next to the output");
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_flag("--mc", mc, "Add Monte Carlo columns to sweeps");

  for (const char* name : {"analytic", "simulate", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("target", c.target, "What to compute")->required();
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? kPass : kParamError;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    cli::validate(c);
    if (c.command == "analytic") return cmd_analytic(c);
    if (c.command == "simulate") return cmd_simulate(c);
    return cmd_verify(c, mc);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kParamError;
  } catch (const InfiniteExpectation& e) {
    std::cerr << "infinite expectation: " << e.what() << "\n";
    return kParamError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kParamError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFail;
  }
}
