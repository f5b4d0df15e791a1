#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bstar/analytic.hpp"
#include "bstar/geometry.hpp"
#include "bstar/rng.hpp"

namespace bstar {

using ParamList = std::vector<std::pair<std::string, double>>;

struct SampleRun {
  std::string statistic;
  ParamList params;
  std::size_t replicates = 0;  // successful replicates
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  std::size_t failures = 0;  // NotTerminated count
};

struct VerificationReport {
  std::string name;
  double analytic = 0.0;
  SampleRun empirical;
  std::optional<SampleRun> reference;  // second empirical route, if any
  double z = 0.0;
  double z_max = 3.0;
  bool pass = false;
};

struct HarnessOptions {
  std::uint64_t seed = 20240601;
  std::uint64_t stream_offset = 0;
  std::size_t n_max = 1000000;
  int threads = 1;
  double z_max = 3.0;
};

// One replicate: statistics, or nullopt when the sampler did not terminate.
using ReplicateFn = std::function<std::optional<std::vector<double>>(RngStream&)>;

struct ReplicateBatch {
  std::vector<std::optional<std::vector<double>>> results;  // indexed by replicate
  std::size_t failures = 0;

  std::vector<double> column(std::size_t k) const;
};

// Replicate i draws from stream (seed, stream_offset + i); output order is fixed.
ReplicateBatch run_replicates(std::size_t replicates, const HarnessOptions& opt, const ReplicateFn& fn);

SampleRun make_sample_run(const std::string& statistic, const ParamList& params,
                          const ReplicateBatch& batch, std::size_t column, const HarnessOptions& opt);
VerificationReport make_report(const std::string& name, double analytic, const SampleRun& run, double z_max);

std::vector<VerificationReport> verify_f_vector(const BetaStarParams& p, std::size_t replicates,
                                                const HarnessOptions& opt = {});
std::vector<VerificationReport> verify_f_vector_zero_cell(int d, double lambda, double beta,
                                                          std::size_t replicates,
                                                          const HarnessOptions& opt = {});
std::vector<VerificationReport> verify_f_vector_voronoi(int d, double lambda, std::size_t replicates,
                                                        const HarnessOptions& opt = {});

VerificationReport verify_T(const BetaStarParams& p, double a, double b, std::size_t replicates,
                            const HarnessOptions& opt = {});
// Volume for k=d, half the surface area for k=d-1, support-function mean width for k=1.
double intrinsic_volume_estimate(const Polytope& poly, int k, RngStream& rng, std::size_t directions = 512);
VerificationReport verify_intrinsic(const BetaStarParams& p, int k, std::size_t replicates,
                                    const HarnessOptions& opt = {});

double external_angle_sum(const Polytope& poly, int k, std::size_t draws, RngStream& rng);
VerificationReport verify_external_angles(const BetaStarParams& p, int k, std::size_t replicates,
                                          const HarnessOptions& opt = {}, std::size_t draws = 10000);

// Half the beta* (alpha=1, beta=(d+1)/2) mass outside the polytope.
double de_sitter_angle(const Polytope& poly, RngStream& rng, std::size_t directions = 4096);
VerificationReport efron_de_sitter_check(int d, double alpha, std::size_t replicates,
                                         const HarnessOptions& opt = {});

struct ConvergenceReport {
  SlopeFit fit;
  double expected_slope = 0.0;
  double tolerance = 0.1;
  bool pass = false;
};
ConvergenceReport verify_convergence(int d, double beta, int k, const std::vector<double>& alpha_grid,
                                     double tolerance = 0.1);

bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace bstar
