#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bstar/errors.hpp"
#include "bstar/geometry.hpp"
#include "bstar/specfun.hpp"

using namespace bstar;

namespace {

Matrix cube(int d, double s = 1.0) {
  const int n = 1 << d;
  Matrix m(d, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = (j >> i & 1) ? s : -s;
  return m;
}

Matrix cross_polytope(int d) {
  Matrix m = Matrix::Zero(d, 2 * d);
  for (int i = 0; i < d; ++i) {
    m(i, 2 * i) = 1.0;
    m(i, 2 * i + 1) = -1.0;
  }
  return m;
}

Matrix random_sphere_points(int d, int n, std::uint64_t stream) {
  RngStream rng(7, stream);
  Matrix m(d, n);
  for (int j = 0; j < n; ++j) m.col(j) = rng.direction(d) * (1.0 + rng.uniform());
  return m;
}

long long euler(const std::vector<long long>& f) {
  long long s = 0;
  for (std::size_t k = 0; k < f.size(); ++k) s += (k % 2 ? -1 : 1) * f[k];
  return s;
}

}  // namespace

TEST_CASE("cube face numbers and merged facets") {
  const auto p2 = convex_hull(cube(2));
  CHECK(f_vector(p2) == std::vector<long long>{4, 4});
  const auto p3 = convex_hull(cube(3));
  CHECK(f_vector(p3) == std::vector<long long>{8, 12, 6});
  CHECK_FALSE(p3.is_simplicial());
  const auto p4 = convex_hull(cube(4));
  CHECK(f_vector(p4) == std::vector<long long>{16, 32, 24, 8});
  HullOptions raw;
  raw.merge_coplanar = false;
  CHECK(convex_hull(cube(3), raw).facets.size() == 12);
}

TEST_CASE("volumes and T functional") {
  CHECK(volume(convex_hull(cube(3))) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(volume(convex_hull(cube(4, 0.5))) == doctest::Approx(1.0).epsilon(1e-12));
  const auto c = convex_hull(cross_polytope(3));
  CHECK(volume(c) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(t_functional(c, 0.0, 0.0) == doctest::Approx(8.0));
  const double h = 1.0 / std::sqrt(3.0);
  const double area = std::sqrt(3.0) / 2.0;
  CHECK(t_functional(c, 1.0, 1.0) == doctest::Approx(8.0 * h * area).epsilon(1e-12));
  CHECK(t_functional(convex_hull(cube(3)), 1.0, 1.0) == doctest::Approx(3.0 * 8.0).epsilon(1e-12));
  Matrix tri(2, 3);
  tri << 0, 1, 0, 0, 0, 1;
  CHECK(convex_volume(tri) == doctest::Approx(0.5));
}

TEST_CASE("radii, support and containment") {
  const auto c = convex_hull(cube(3));
  CHECK(inradius(c) == doctest::Approx(1.0));
  CHECK(circumradius(c) == doctest::Approx(std::sqrt(3.0)));
  Vector u = Vector::Ones(3).normalized();
  CHECK(support(c, u) == doctest::Approx(std::sqrt(3.0)));
  CHECK(radial_distance(c, u) == doctest::Approx(std::sqrt(3.0)));
  CHECK(contains(c, Vector::Zero(3)));
  CHECK_FALSE(contains(c, Vector::Constant(3, 1.1)));
  Matrix shifted = cube(2);
  shifted.array() += 3.0;
  CHECK_THROWS_AS(inradius(convex_hull(shifted)), OriginNotInterior);
}

TEST_CASE("polar dual of the cube is the cross polytope") {
  const auto c = convex_hull(cube(3));
  const auto dual = polar_dual(c);
  CHECK(f_vector(dual) == std::vector<long long>{6, 12, 8});
  CHECK(volume(dual) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(inradius(dual) * circumradius(c) == doctest::Approx(1.0));
}

TEST_CASE("random hulls satisfy Euler and duality") {
  for (int d = 2; d <= 5; ++d) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto p = convex_hull(random_sphere_points(d, 40, 100 * d + rep));
      const auto f = f_vector(p);
      CHECK(euler(f) == (d % 2 ? 2 : 0));
      const auto g = f_vector(polar_dual(p));
      std::vector<long long> rev(f.rbegin(), f.rend());
      CHECK(g == rev);
      CHECK(p.is_simplicial());
    }
  }
}

TEST_CASE("insertion order does not change the hull") {
  const Matrix pts = random_sphere_points(3, 60, 3);
  HullOptions a, b;
  a.shuffle_seed = 1;
  b.shuffle_seed = 2;
  const auto pa = convex_hull(pts, a), pb = convex_hull(pts, b);
  CHECK(f_vector(pa) == f_vector(pb));
  CHECK(volume(pa) == doctest::Approx(volume(pb)).epsilon(1e-12));
}

TEST_CASE("incremental hull") {
  IncrementalHull h(2);
  CHECK_FALSE(h.ready());
  h.insert(Vector::Unit(2, 0));
  h.insert(Vector::Unit(2, 1));
  h.insert(-Vector::Unit(2, 0));
  CHECK(h.ready());
  CHECK(h.min_offset() <= 0.0);
  CHECK(h.insert(-Vector::Unit(2, 1)));
  CHECK(h.min_offset() == doctest::Approx(std::sqrt(0.5)));
  CHECK_FALSE(h.insert(Vector::Constant(2, 0.1)));
  CHECK(f_vector(h.to_polytope()) == std::vector<long long>{4, 4});
}

TEST_CASE("degenerate inputs") {
  Matrix flat(3, 4);
  flat << 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0;
  CHECK_THROWS_AS(convex_hull(flat), DegenerateInput);
  CHECK_THROWS_AS(convex_hull(Matrix::Zero(2, 2)), DegenerateInput);
}

TEST_CASE("angles") {
  const auto c = convex_hull(cube(3));
  RngStream rng(1, 0);
  const auto edges = faces(c, 1);
  REQUIRE(edges.size() == 12);
  CHECK(external_angle_mc(c, edges[0], 1000, rng) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(external_angle_mc(c, {0}, 40000, rng) == doctest::Approx(0.125).epsilon(0.05));
  CHECK(external_angle_mc(c, c.facets[0].vertices, 10, rng) == 0.5);
  Matrix simplex(2, 3);
  simplex << 0, 1, 0, 0, 0, 1;
  CHECK(internal_angle_mc(simplex, {0}, 40000, rng) == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("OFF output") {
  std::ostringstream os;
  write_off(os, convex_hull(cube(3)));
  CHECK(os.str().rfind("OFF\n8 6 0", 0) == 0);
  std::ostringstream os4;
  write_off(os4, convex_hull(cube(4)));
  CHECK(os4.str().rfind("nOFF\n4", 0) == 0);
}
