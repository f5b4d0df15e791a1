#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bstar/rng.hpp"

namespace bstar {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using FaceKey = std::vector<int>;  // sorted vertex indices

inline constexpr double kGeomEps = 1e-9;
// Relative visibility tolerance of the incremental hull.
inline constexpr double kHullEps = 1e-13;
inline constexpr int kMaxDim = 8;

struct Facet {
  Vector normal;  // outward unit normal
  double offset = 0.0;
  FaceKey vertices;
};

struct Polytope {
  int dim = 0;
  Matrix vertices;  // one column per vertex
  std::vector<Facet> facets;

  int num_vertices() const { return static_cast<int>(vertices.cols()); }
  Vector vertex(int i) const { return vertices.col(i); }
  bool is_simplicial() const;
};

// Beneath-beyond hull over points arriving one at a time.
class IncrementalHull {
 public:
  explicit IncrementalHull(int dim, double eps = kHullEps);

  // Returns true when the hull changed.
  bool insert(const Vector& p);
  bool ready() const { return ready_; }
  int dim() const { return dim_; }
  std::size_t num_points() const { return pts_.size(); }
  std::size_t num_facets() const { return alive_.size(); }
  // Smallest facet offset; the inradius about the origin when positive.
  double min_offset() const;
  Polytope to_polytope(bool merge_coplanar = true) const;

 private:
  struct HFacet {
    std::vector<int> v;
    std::vector<int> nb;  // nb[i] lies across the ridge opposite v[i]
    Vector n;
    double off = 0.0;
    double scale = 1.0;  // largest vertex norm
  };

  void try_initialize();
  void build_simplex(const std::vector<int>& idx);
  void insert_index(int idx);
  HFacet make_facet(std::vector<int> v) const;

  int dim_;
  double eps_;
  double scale_ = 1.0;
  bool ready_ = false;
  std::vector<Vector> pts_;
  std::vector<int> pending_;
  Vector interior_;
  std::vector<HFacet> f_;
  std::vector<char> dead_;
  std::vector<int> alive_;
  mutable double min_off_cache_ = 0.0;
  mutable bool min_off_valid_ = false;
};

struct HullOptions {
  double eps = kHullEps;
  int max_dim = kMaxDim;
  bool shuffle = true;
  std::uint64_t shuffle_seed = 0;
  bool merge_coplanar = true;
};

Polytope convex_hull(const Matrix& points, const HullOptions& opt = {});
Polytope convex_hull(const std::vector<Vector>& points, const HullOptions& opt = {});

std::vector<FaceKey> faces(const Polytope& p, int k);
std::vector<long long> f_vector(const Polytope& p);

double facet_volume(const Polytope& p, std::size_t facet);
double volume(const Polytope& p);
// Volume of the convex hull of the columns, which span dimension rows().
double convex_volume(const Matrix& points);
double t_functional(const Polytope& p, double a, double b);

Polytope polar_dual(const Polytope& p);
double inradius(const Polytope& p);
double circumradius(const Polytope& p);
double support(const Polytope& p, const Vector& u);
// Distance from the origin to the boundary along the unit direction u.
double radial_distance(const Polytope& p, const Vector& u);
bool contains(const Polytope& p, const Vector& x, double eps = 0.0);

double external_angle_mc(const Polytope& p, const FaceKey& face, std::size_t trials, RngStream& rng);
// Internal angle of the simplex (columns) at the face.
double internal_angle_mc(const Matrix& simplex, const FaceKey& face, std::size_t trials,
                         RngStream& rng);

void write_off(std::ostream& os, const Polytope& p);

}  // namespace bstar
