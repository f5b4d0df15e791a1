#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "bstar/errors.hpp"
#include "bstar/geometry.hpp"

namespace bstar {

IncrementalHull::IncrementalHull(int dim, double eps) : dim_(dim), eps_(eps) {
  if (dim < 1) throw ParameterError("hull: dimension >= 1 required");
}

IncrementalHull::HFacet IncrementalHull::make_facet(std::vector<int> v) const {
  HFacet f;
  const Vector& p0 = pts_[v[0]];
  if (dim_ == 1) {
    f.n = Vector::Constant(1, p0[0] >= interior_[0] ? 1.0 : -1.0);
  } else {
    Matrix m(dim_, dim_ - 1);
    for (int k = 1; k < dim_; ++k) m.col(k - 1) = pts_[v[k]] - p0;
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    f.n = q.col(dim_ - 1);
    if (f.n.dot(interior_ - p0) > 0.0) f.n = -f.n;
  }
  f.off = f.n.dot(p0);
  for (int i : v) f.scale = std::max(f.scale, pts_[i].norm());
  f.v = std::move(v);
  f.nb.assign(dim_, -1);
  return f;
}

void IncrementalHull::build_simplex(const std::vector<int>& idx) {
  interior_ = Vector::Zero(dim_);
  for (int i : idx) interior_ += pts_[i];
  interior_ /= static_cast<double>(idx.size());
  const int m = dim_ + 1;
  for (int j = 0; j < m; ++j) {
    std::vector<int> v;
    for (int i = 0; i < m; ++i)
      if (i != j) v.push_back(idx[i]);
    f_.push_back(make_facet(v));
  }
  // Facet j omits idx[j]; across its ridge opposite idx[i] lies facet i.
  for (int j = 0; j < m; ++j) {
    auto& f = f_[j];
    for (int k = 0; k < dim_; ++k) {
      const int vi = f.v[k];
      const int i = static_cast<int>(std::find(idx.begin(), idx.end(), vi) - idx.begin());
      f.nb[k] = i;
    }
  }
  dead_.assign(f_.size(), 0);
  alive_.resize(m);
  std::iota(alive_.begin(), alive_.end(), 0);
  ready_ = true;
  min_off_valid_ = false;
}

void IncrementalHull::try_initialize() {
  // Greedy affine basis through Gram-Schmidt on pending points.
  const int p0 = pending_.front();
  std::vector<int> chosen{p0};
  std::vector<Vector> basis;
  for (std::size_t t = 1; t < pending_.size() && static_cast<int>(basis.size()) < dim_; ++t) {
    Vector r = pts_[pending_[t]] - pts_[p0];
    for (const auto& b : basis) r -= b.dot(r) * b;
    for (const auto& b : basis) r -= b.dot(r) * b;
    const double n = r.norm();
    if (n > 1e-9 * scale_) {
      basis.push_back(r / n);
      chosen.push_back(pending_[t]);
    }
  }
  if (static_cast<int>(basis.size()) < dim_) return;
  build_simplex(chosen);
  std::vector<int> rest;
  for (int i : pending_)
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) rest.push_back(i);
  pending_.clear();
  for (int i : rest) insert_index(i);
}

bool IncrementalHull::insert(const Vector& p) {
  if (p.size() != dim_) throw ParameterError("hull: point dimension mismatch");
  if (!p.allFinite()) throw DegenerateInput("hull: non-finite point");
  scale_ = std::max(scale_, p.cwiseAbs().maxCoeff());
  pts_.push_back(p);
  const int idx = static_cast<int>(pts_.size()) - 1;
  if (!ready_) {
    pending_.push_back(idx);
    try_initialize();
    return ready_;
  }
  const std::size_t before = f_.size();
  insert_index(idx);
  return f_.size() != before;
}

void IncrementalHull::insert_index(int idx) {
  const Vector& p = pts_[idx];
  const double pn = p.norm();
  std::vector<int> visible;
  for (int fi : alive_) {
    const auto& f = f_[fi];
    if (f.n.dot(p) - f.off > eps_ * std::max(pn, f.scale)) {
      visible.push_back(fi);
      dead_[fi] = 1;
    }
  }
  if (visible.empty()) return;

  std::map<std::vector<int>, std::pair<int, int>> open_ridges;
  std::vector<int> created;
  for (int fi : visible) {
    for (int j = 0; j < dim_; ++j) {
      const int nbi = f_[fi].nb[j];
      if (dead_[nbi]) continue;
      std::vector<int> v;
      v.reserve(dim_);
      for (int k = 0; k < dim_; ++k)
        if (k != j) v.push_back(f_[fi].v[k]);
      v.push_back(idx);
      HFacet nf = make_facet(v);
      const int id = static_cast<int>(f_.size());
      nf.nb[dim_ - 1] = nbi;
      auto& other = f_[nbi];
      for (int k = 0; k < dim_; ++k)
        if (other.nb[k] == fi) other.nb[k] = id;
      for (int k = 0; k + 1 < dim_; ++k) {
        std::vector<int> key;
        for (int m = 0; m + 1 < dim_; ++m)
          if (m != k) key.push_back(nf.v[m]);
        std::sort(key.begin(), key.end());
        auto it = open_ridges.find(key);
        if (it == open_ridges.end()) {
          open_ridges.emplace(std::move(key), std::make_pair(id, k));
        } else {
          nf.nb[k] = it->second.first;
          f_[it->second.first].nb[it->second.second] = id;
          open_ridges.erase(it);
        }
      }
      f_.push_back(std::move(nf));
      dead_.push_back(0);
      created.push_back(id);
    }
  }
  std::vector<int> next;
  next.reserve(alive_.size() + created.size());
  for (int fi : alive_)
    if (!dead_[fi]) next.push_back(fi);
  next.insert(next.end(), created.begin(), created.end());
  alive_ = std::move(next);
  min_off_valid_ = false;
}

double IncrementalHull::min_offset() const {
  if (!ready_) return -std::numeric_limits<double>::infinity();
  if (!min_off_valid_) {
    double m = std::numeric_limits<double>::infinity();
    for (int fi : alive_) m = std::min(m, f_[fi].off);
    min_off_cache_ = m;
    min_off_valid_ = true;
  }
  return min_off_cache_;
}

Polytope IncrementalHull::to_polytope(bool merge_coplanar) const {
  if (!ready_) throw DegenerateInput("hull: points are not full-dimensional");
  const int n = static_cast<int>(alive_.size());
  std::map<int, int> pos;
  for (int i = 0; i < n; ++i) pos[alive_[i]] = i;

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (merge_coplanar) {
    for (int i = 0; i < n; ++i) {
      const auto& f = f_[alive_[i]];
      for (int nbi : f.nb) {
        const auto& g = f_[nbi];
        const double t = kGeomEps * std::max(f.scale, g.scale);
        if ((f.n - g.n).norm() <= t && std::abs(f.off - g.off) <= t) {
          parent[find(i)] = find(pos.at(nbi));
        }
      }
    }
  }

  std::map<int, int> remap;
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) {
    groups[find(i)].push_back(i);
    for (int v : f_[alive_[i]].v) remap.emplace(v, 0);
  }
  Polytope poly;
  poly.dim = dim_;
  poly.vertices.resize(dim_, static_cast<Eigen::Index>(remap.size()));
  int k = 0;
  for (auto& [orig, idx] : remap) {
    idx = k;
    poly.vertices.col(k++) = pts_[orig];
  }
  for (const auto& [root, members] : groups) {
    Facet f;
    const auto& h = f_[alive_[root]];
    f.normal = h.n;
    f.offset = h.off;
    for (int m : members)
      for (int v : f_[alive_[m]].v) f.vertices.push_back(remap.at(v));
    std::sort(f.vertices.begin(), f.vertices.end());
    f.vertices.erase(std::unique(f.vertices.begin(), f.vertices.end()), f.vertices.end());
    poly.facets.push_back(std::move(f));
  }
  return poly;
}

Polytope convex_hull(const std::vector<Vector>& points, const HullOptions& opt) {
  if (points.empty()) throw DegenerateInput("convex_hull: empty point set");
  const int d = static_cast<int>(points.front().size());
  if (d > opt.max_dim) throw DomainError("convex_hull: dimension exceeds supported maximum");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  if (opt.shuffle) {
    std::mt19937_64 g(opt.shuffle_seed);
    std::shuffle(order.begin(), order.end(), g);
  }
  IncrementalHull h(d, opt.eps);
  for (std::size_t i : order) h.insert(points[i]);
  return h.to_polytope(opt.merge_coplanar);
}

Polytope convex_hull(const Matrix& points, const HullOptions& opt) {
  std::vector<Vector> pts;
  pts.reserve(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) pts.push_back(points.col(i));
  return convex_hull(pts, opt);
}

}  // namespace bstar
