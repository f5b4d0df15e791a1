#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include "bstar/errors.hpp"
#include "bstar/geometry.hpp"

namespace bstar {

namespace {

constexpr double kPi = 3.14159265358979323846;

FaceKey intersect(const FaceKey& a, const FaceKey& b) {
  FaceKey r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool subset_of(const FaceKey& a, const FaceKey& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void subsets(const FaceKey& s, int size, std::set<FaceKey>& out) {
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  const int n = static_cast<int>(s.size());
  if (size > n) return;
  while (true) {
    FaceKey k(size);
    for (int i = 0; i < size; ++i) k[i] = s[idx[i]];
    out.insert(std::move(k));
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double simplex_volume(const Matrix& pts) {
  // pts: columns p0..pk in ambient space.
  const int k = static_cast<int>(pts.cols()) - 1;
  if (k == 0) return 1.0;
  Matrix e(pts.rows(), k);
  for (int i = 0; i < k; ++i) e.col(i) = pts.col(i + 1) - pts.col(0);
  const double g = (e.transpose() * e).determinant();
  return std::sqrt(std::max(g, 0.0)) / factorial(k);
}

// Orthonormal basis of the orthogonal complement of the span of the columns.
Matrix complement_basis(const Matrix& span, int d, int rank) {
  if (rank == 0) return Matrix::Identity(d, d);
  Eigen::HouseholderQR<Matrix> qr(span);
  Matrix q = qr.householderQ();
  return q.rightCols(d - rank);
}

int affine_rank(const Matrix& pts, Matrix* basis) {
  const int d = static_cast<int>(pts.rows());
  if (pts.cols() <= 1) {
    if (basis) *basis = Matrix(d, 0);
    return 0;
  }
  Matrix e(d, pts.cols() - 1);
  for (Eigen::Index i = 1; i < pts.cols(); ++i) e.col(i - 1) = pts.col(i) - pts.col(0);
  Eigen::ColPivHouseholderQR<Matrix> qr(e);
  qr.setThreshold(1e-9);
  const int r = static_cast<int>(qr.rank());
  if (basis) {
    Matrix q = qr.householderQ();
    *basis = q.leftCols(r);
  }
  return r;
}

Matrix face_points(const Polytope& p, const FaceKey& face) {
  Matrix m(p.dim, static_cast<Eigen::Index>(face.size()));
  for (std::size_t i = 0; i < face.size(); ++i) m.col(i) = p.vertices.col(face[i]);
  return m;
}

}  // namespace

bool Polytope::is_simplicial() const {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const Facet& f) { return static_cast<int>(f.vertices.size()) == dim; });
}

std::vector<FaceKey> faces(const Polytope& p, int k) {
  const int d = p.dim;
  if (k < 0 || k >= d) throw ParameterError("faces: 0 <= k < d required");
  std::vector<FaceKey> level;
  for (const auto& f : p.facets) level.push_back(f.vertices);
  if (k == d - 1) return level;
  if (k == 0) {
    std::vector<FaceKey> v;
    for (int i = 0; i < p.num_vertices(); ++i) v.push_back({i});
    return v;
  }
  if (p.is_simplicial()) {
    std::set<FaceKey> s;
    for (const auto& f : p.facets) subsets(f.vertices, k + 1, s);
    return {s.begin(), s.end()};
  }
  for (int j = d - 1; j > k; --j) {
    std::set<FaceKey> next;
    for (const auto& face : level) {
      std::vector<FaceKey> cand;
      for (const auto& g : p.facets) {
        FaceKey c = intersect(face, g.vertices);
        if (c.empty() || c.size() == face.size()) continue;
        cand.push_back(std::move(c));
      }
      for (std::size_t a = 0; a < cand.size(); ++a) {
        bool maximal = true;
        for (std::size_t b = 0; b < cand.size() && maximal; ++b) {
          if (cand[b].size() > cand[a].size() && subset_of(cand[a], cand[b])) maximal = false;
        }
        if (maximal) next.insert(cand[a]);
      }
    }
    level.assign(next.begin(), next.end());
  }
  return level;
}

std::vector<long long> f_vector(const Polytope& p) {
  std::vector<long long> f(p.dim, 0);
  f[0] = p.num_vertices();
  for (int k = 1; k < p.dim; ++k) f[k] = static_cast<long long>(faces(p, k).size());
  return f;
}

double convex_volume(const Matrix& points) {
  const int d = static_cast<int>(points.rows());
  if (d == 0) return 1.0;
  if (d == 1) return points.maxCoeff() - points.minCoeff();
  HullOptions opt;
  opt.shuffle = false;
  opt.merge_coplanar = false;
  const Polytope h = convex_hull(points, opt);
  const Vector c = h.vertices.rowwise().mean();
  double v = 0.0;
  for (const auto& f : h.facets) {
    v += (f.offset - f.normal.dot(c)) * simplex_volume(face_points(h, f.vertices));
  }
  return v / d;
}

double facet_volume(const Polytope& p, std::size_t facet) {
  const auto& f = p.facets.at(facet);
  const Matrix pts = face_points(p, f.vertices);
  if (static_cast<int>(f.vertices.size()) == p.dim) return simplex_volume(pts);
  const Matrix b = complement_basis(f.normal, p.dim, 1);
  Matrix local(p.dim - 1, pts.cols());
  for (Eigen::Index i = 0; i < pts.cols(); ++i) local.col(i) = b.transpose() * (pts.col(i) - pts.col(0));
  return convex_volume(local);
}

double volume(const Polytope& p) {
  const Vector c = p.vertices.rowwise().mean();
  double v = 0.0;
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    v += (p.facets[i].offset - p.facets[i].normal.dot(c)) * facet_volume(p, i);
  }
  return v / p.dim;
}

double t_functional(const Polytope& p, double a, double b) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    const double h = p.facets[i].offset;
    const double hv = a == 0.0 ? 1.0 : std::pow(h, a);
    const double vv = b == 0.0 ? 1.0 : std::pow(facet_volume(p, i), b);
    s += hv * vv;
  }
  return s;
}

double inradius(const Polytope& p) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : p.facets) m = std::min(m, f.offset);
  if (!(m > 0.0)) throw OriginNotInterior("inradius: origin is not interior");
  return m;
}

double circumradius(const Polytope& p) { return p.vertices.colwise().norm().maxCoeff(); }

double support(const Polytope& p, const Vector& u) { return (u.transpose() * p.vertices).maxCoeff(); }

double radial_distance(const Polytope& p, const Vector& u) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : p.facets) {
    const double c = f.normal.dot(u);
    if (c > 0.0) r = std::min(r, f.offset / c);
  }
  return r;
}

bool contains(const Polytope& p, const Vector& x, double eps) {
  return std::all_of(p.facets.begin(), p.facets.end(),
                     [&](const Facet& f) { return f.normal.dot(x) <= f.offset + eps; });
}

Polytope polar_dual(const Polytope& p) {
  const double tol = 1e-12 * std::max(1.0, circumradius(p));
  for (const auto& f : p.facets) {
    if (!(f.offset > tol)) throw OriginNotInterior("polar_dual: origin is not interior");
  }
  Polytope q;
  q.dim = p.dim;
  q.vertices.resize(p.dim, static_cast<Eigen::Index>(p.facets.size()));
  std::vector<FaceKey> incident(p.num_vertices());
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    q.vertices.col(i) = p.facets[i].normal / p.facets[i].offset;
    for (int v : p.facets[i].vertices) incident[v].push_back(static_cast<int>(i));
  }
  for (int v = 0; v < p.num_vertices(); ++v) {
    if (incident[v].empty()) continue;
    const Vector x = p.vertices.col(v);
    const double n = x.norm();
    Facet f;
    f.normal = x / n;
    f.offset = 1.0 / n;
    f.vertices = incident[v];
    q.facets.push_back(std::move(f));
  }
  return q;
}

double external_angle_mc(const Polytope& p, const FaceKey& face, std::size_t trials, RngStream& rng) {
  if (face.empty()) throw ParameterError("external_angle: empty face");
  std::vector<const Facet*> inc;
  for (const auto& f : p.facets)
    if (subset_of(face, f.vertices)) inc.push_back(&f);
  if (inc.empty()) throw DomainError("external_angle: not a face of the polytope");
  Matrix basis;
  const int k = affine_rank(face_points(p, face), &basis);
  const int codim = p.dim - k;
  if (codim == 1) return 0.5;
  if (codim == 2 && inc.size() == 2) {
    const double c = std::clamp(inc[0]->normal.dot(inc[1]->normal), -1.0, 1.0);
    return std::acos(c) / (2.0 * kPi);
  }
  if (trials == 0) throw ParameterError("external_angle: trials >= 1 required");
  const Vector y = p.vertices.col(face[0]);
  const Matrix rel = p.vertices.colwise() - y;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Vector g = rng.gaussian(p.dim);
    if (k > 0) g -= basis * (basis.transpose() * g);
    if ((g.transpose() * rel).maxCoeff() <= 1e-12 * g.norm()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double internal_angle_mc(const Matrix& simplex, const FaceKey& face, std::size_t trials,
                         RngStream& rng) {
  const int d = static_cast<int>(simplex.rows());
  const int m = static_cast<int>(simplex.cols());
  if (m != d + 1) throw ParameterError("internal_angle: expected d+1 vertices");
  if (face.empty() || static_cast<int>(face.size()) > m) throw ParameterError("internal_angle: bad face");
  if (static_cast<int>(face.size()) == m) return 1.0;
  if (trials == 0) throw ParameterError("internal_angle: trials >= 1 required");
  const int f0 = face[0];
  std::vector<int> others;
  for (int j = 0; j < m; ++j)
    if (j != f0) others.push_back(j);
  Matrix e(d, d);
  for (int i = 0; i < d; ++i) e.col(i) = simplex.col(others[i]) - simplex.col(f0);
  Eigen::PartialPivLU<Matrix> lu(e);
  if (std::abs(lu.determinant()) < 1e-300) throw DegenerateInput("internal_angle: degenerate simplex");
  std::vector<char> in_face(m, 0);
  for (int v : face) in_face[v] = 1;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Vector c = lu.solve(rng.gaussian(d));
    bool ok = true;
    for (int i = 0; i < d && ok; ++i)
      if (!in_face[others[i]] && c[i] < 0.0) ok = false;
    if (ok) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

void write_off(std::ostream& os, const Polytope& p) {
  if (p.dim == 3) {
    os << "OFF\n";
  } else {
    os << "nOFF\n" << p.dim << "\n";
  }
  os << p.num_vertices() << " " << p.facets.size() << " 0\n";
  os.precision(17);
  for (int i = 0; i < p.num_vertices(); ++i) {
    for (int k = 0; k < p.dim; ++k) os << (k ? " " : "") << p.vertices(k, i);
    os << "\n";
  }
  for (const auto& f : p.facets) {
    FaceKey v = f.vertices;
    if (p.dim == 3 && v.size() > 3) {
      // Cyclic order around the facet centroid.
      Vector c = Vector::Zero(3);
      for (int i : v) c += p.vertices.col(i);
      c /= static_cast<double>(v.size());
      const Matrix b = complement_basis(f.normal, 3, 1);
      std::sort(v.begin(), v.end(), [&](int a, int bb) {
        const Vector pa = b.transpose() * (p.vertices.col(a) - c);
        const Vector pb = b.transpose() * (p.vertices.col(bb) - c);
        return std::atan2(pa[1], pa[0]) < std::atan2(pb[1], pb[0]);
      });
    }
    os << v.size();
    for (int i : v) os << " " << i;
    os << "\n";
  }
}

}  // namespace bstar
