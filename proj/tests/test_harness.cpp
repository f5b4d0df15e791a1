#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bstar/errors.hpp"
#include "bstar/harness.hpp"
#include "bstar/sampling.hpp"
#include "bstar/specfun.hpp"

using namespace bstar;

TEST_CASE("replicates are independent of the thread count") {
  HarnessOptions one, four;
  four.threads = 4;
  auto fn = [](RngStream& rng) -> std::optional<std::vector<double>> {
    if (rng.stream() == 3) return std::nullopt;
    return std::vector<double>{rng.uniform(), rng.normal()};
  };
  const auto a = run_replicates(20, one, fn);
  const auto b = run_replicates(20, four, fn);
  CHECK(a.failures == 1);
  CHECK(a.column(0) == b.column(0));
  CHECK(a.column(1).size() == 19);
  const auto run = make_sample_run("u", {{"x", 1.0}}, a, 0, one);
  CHECK(run.replicates == 19);
  CHECK(run.failures == 1);
  CHECK(run.seed == one.seed);
}

TEST_CASE("exceptions propagate out of replicates") {
  auto fn = [](RngStream&) -> std::optional<std::vector<double>> { throw DomainError("boom"); };
  CHECK_THROWS_AS(run_replicates(3, HarnessOptions{}, fn), DomainError);
}

TEST_CASE("too few successes") {
  auto fn = [](RngStream&) -> std::optional<std::vector<double>> { return std::nullopt; };
  const auto batch = run_replicates(5, HarnessOptions{}, fn);
  CHECK_THROWS_AS(make_sample_run("x", {}, batch, 0, HarnessOptions{}), ParameterError);
}

TEST_CASE("report z score") {
  SampleRun run;
  run.mean = 1.1;
  run.std_error = 0.05;
  const auto r = make_report("x", 1.0, run, 3.0);
  CHECK(r.z == doctest::Approx(2.0));
  CHECK(r.pass);
  run.std_error = 0.0;
  run.mean = 1.0;
  CHECK(make_report("x", 1.0, run, 3.0).pass);
  run.mean = 1.5;
  CHECK_FALSE(make_report("x", 1.0, run, 3.0).pass);
}

TEST_CASE("f-vector verification at the critical beta") {
  const auto reps = verify_f_vector(BetaStarParams(2, 20.0, 2.0), 400);
  REQUIRE(reps.size() == 2);
  CHECK(all_pass(reps));
  CHECK(reps[0].analytic == doctest::Approx(6.6));
  CHECK(all_pass(verify_f_vector_zero_cell(2, 2.0 * kPi, 1.5, 400)));
  CHECK(all_pass(verify_f_vector_voronoi(2, 1.0, 400)));
}

TEST_CASE("T functional and intrinsic volumes") {
  CHECK(verify_T(BetaStarParams(2, 5.0, 3.0), 1.0, 1.0, 400).pass);
  CHECK(verify_T(BetaStarParams(1, 1.0, 2.0), 1.0, 0.0, 400).pass);
  CHECK(verify_intrinsic(BetaStarParams(2, 5.0, 3.0), 1, 400).pass);
  CHECK(verify_intrinsic(BetaStarParams(3, 8.0, 3.0), 2, 200).pass);
}

TEST_CASE("intrinsic volume estimator on a square") {
  Matrix sq(2, 4);
  sq << 1, -1, 1, -1, 1, 1, -1, -1;
  const auto p = convex_hull(sq);
  RngStream rng(1, 0);
  CHECK(intrinsic_volume_estimate(p, 2, rng) == doctest::Approx(4.0));
  CHECK(intrinsic_volume_estimate(p, 1, rng, 4096) == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("external angle sums") {
  Matrix sq(2, 4);
  sq << 1, -1, 1, -1, 1, 1, -1, -1;
  RngStream rng(1, 0);
  const auto p = convex_hull(sq);
  CHECK(external_angle_sum(p, 0, 20000, rng) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(external_angle_sum(p, 1, 100, rng) == doctest::Approx(2.0));
  CHECK(verify_external_angles(BetaStarParams(2, 10.0, 2.0), 1, 200).pass);
}

TEST_CASE("de Sitter angle of a large polygon is small") {
  Matrix sq(2, 4);
  sq << 1, -1, 1, -1, 1, 1, -1, -1;
  RngStream rng(1, 0);
  const double small = de_sitter_angle(convex_hull(20.0 * sq), rng);
  const double large = de_sitter_angle(convex_hull(2.0 * sq), rng);
  CHECK(small < large);
  CHECK(small > 0.0);
}

TEST_CASE("convergence rate") {
  const auto r = verify_convergence(2, 2.0, 0, {25.0, 50.0, 100.0, 200.0});
  CHECK(r.expected_slope == doctest::Approx(-1.0));
  CHECK(r.pass);
}
