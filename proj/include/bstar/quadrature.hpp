#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "bstar/errors.hpp"

namespace bstar {

template <typename T>
struct BasicQuadratureResult {
  T value{};
  double abs_error = 0.0;
  std::size_t evaluations = 0;

  BasicQuadratureResult& operator+=(const BasicQuadratureResult& o) {
    value += o.value;
    abs_error += o.abs_error;
    evaluations += o.evaluations;
    return *this;
  }
};

using QuadratureResult = BasicQuadratureResult<double>;
using ComplexQuadratureResult = BasicQuadratureResult<std::complex<double>>;

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  // Integrable endpoint singularities, removed by x = a + (b-a) t^power.
  bool left_singular = false;
  bool right_singular = false;
  double power = 2.0;
  std::size_t max_subdivisions = 4000;

  QuadratureOptions with_rel_tol(double t) const {
    QuadratureOptions o = *this;
    o.rel_tol = t;
    return o;
  }
  QuadratureOptions singular(bool left, bool right) const {
    QuadratureOptions o = *this;
    o.left_singular = left;
    o.right_singular = right;
    return o;
  }
};

// Straight segment in the complex plane. A start with real part -inf denotes the
// horizontal ray (-inf + i*Im(end), end].
struct PathSegment {
  std::complex<double> start;
  std::complex<double> end;
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
inline bool all_finite(const T& v) {
  return std::isfinite(v);
}
template <>
inline bool all_finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <typename T, typename F>
void gauss_kronrod15(F& f, double a, double b, T& value, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T resk = fc * kWgk[7];
  T resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    T f1 = f(c - dx);
    T f2 = f(c + dx);
    resk += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) resg += (f1 + f2) * kWg[j / 2];
  }
  value = resk * h;
  err = std::abs((resk - resg) * h);
}

template <typename T>
struct Panel {
  double a, b;
  T value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <typename T, typename F>
BasicQuadratureResult<T> adaptive(F&& f, double a, double b, const QuadratureOptions& opt) {
  std::vector<Panel<T>> heap;
  heap.reserve(64);
  T total{};
  double total_err = 0.0;
  T frozen{};
  double frozen_err = 0.0;
  std::size_t evals = 0;

  auto eval_panel = [&](double lo, double hi) {
    Panel<T> p{lo, hi, T{}, 0.0};
    gauss_kronrod15<T>(f, lo, hi, p.value, p.err);
    evals += 15;
    if (!all_finite(p.value)) {
      throw QuadratureError("non-finite integrand value", std::abs(total), total_err);
    }
    return p;
  };

  {
    Panel<T> p = eval_panel(a, b);
    total = p.value;
    total_err = p.err;
    heap.push_back(p);
  }

  std::size_t splits = 0;
  while (true) {
    const double target = std::max(opt.rel_tol * std::abs(total + frozen), opt.abs_tol);
    if (total_err + frozen_err <= target || heap.empty()) break;
    if (splits >= opt.max_subdivisions) {
      throw QuadratureError("quadrature did not converge", std::abs(total + frozen),
                            total_err + frozen_err);
    }
    std::pop_heap(heap.begin(), heap.end());
    Panel<T> worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const double scale = std::max({std::abs(worst.a), std::abs(worst.b), 1e-300});
    if (worst.b - worst.a < 64 * std::numeric_limits<double>::epsilon() * scale) {
      frozen += worst.value;
      frozen_err += worst.err;
      total -= worst.value;
      total_err -= worst.err;
      continue;
    }
    Panel<T> l = eval_panel(worst.a, mid);
    Panel<T> r = eval_panel(mid, worst.b);
    total += l.value + r.value - worst.value;
    total_err += l.err + r.err - worst.err;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end());
    ++splits;
    if (splits % 64 == 0) {
      total = T{};
      total_err = 0.0;
      for (const auto& p : heap) {
        total += p.value;
        total_err += p.err;
      }
    }
  }
  T sum = frozen;
  double err = frozen_err;
  for (const auto& p : heap) {
    sum += p.value;
    err += p.err;
  }
  return {sum, err, evals};
}

template <typename T, typename F>
BasicQuadratureResult<T> integrate_finite(F&& f, double a, double b, const QuadratureOptions& opt) {
  if (!(a < b)) throw DomainError("integrate: requires a < b");
  const double p = opt.power;
  if (opt.left_singular && opt.right_singular) {
    const double m = 0.5 * (a + b);
    auto r = integrate_finite<T>(f, a, m, opt.singular(true, false));
    r += integrate_finite<T>(f, m, b, opt.singular(false, true));
    return r;
  }
  if (opt.left_singular) {
    const double w = b - a;
    auto g = [&](double t) -> T {
      const double tp = std::pow(t, p - 1.0);
      return f(a + w * tp * t) * (p * tp * w);
    };
    return adaptive<T>(g, 0.0, 1.0, opt);
  }
  if (opt.right_singular) {
    const double w = b - a;
    auto g = [&](double t) -> T {
      const double tp = std::pow(t, p - 1.0);
      return f(b - w * tp * t) * (p * tp * w);
    };
    return adaptive<T>(g, 0.0, 1.0, opt);
  }
  return adaptive<T>(f, a, b, opt);
}

template <typename T, typename F>
BasicQuadratureResult<T> integrate_tail(F&& f, double a, const QuadratureOptions& opt) {
  const double len = std::max(1.0, std::abs(a));
  auto g = [&](double t) -> T {
    const double s = 1.0 - t;
    const T v = f(a + len * t / s);
    if (v == T{}) return T{};
    return v * (len / (s * s));
  };
  return adaptive<T>(g, 0.0, 1.0, opt.singular(false, false));
}

}  // namespace detail

template <typename F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  return detail::integrate_finite<double>(f, a, b, opt);
}

template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol) {
  return integrate(f, a, b, QuadratureOptions{}.with_rel_tol(rel_tol));
}

// Integral over [a, inf) via x = a + L t/(1-t), L = max(1, |a|). A left singularity is split off on [a, a+1].
template <typename F>
QuadratureResult integrate_semi_infinite(F&& f, double a, const QuadratureOptions& opt = {}) {
  if (opt.left_singular) {
    auto r = detail::integrate_finite<double>(f, a, a + 1.0, opt.singular(true, false));
    r += detail::integrate_tail<double>(f, a + 1.0, opt);
    return r;
  }
  return detail::integrate_tail<double>(f, a, opt);
}

template <typename F>
QuadratureResult integrate_semi_infinite(F&& f, double a, double rel_tol) {
  return integrate_semi_infinite(f, a, QuadratureOptions{}.with_rel_tol(rel_tol));
}

template <typename F>
ComplexQuadratureResult integrate_path(F&& f, const std::vector<PathSegment>& segments,
                                       const QuadratureOptions& opt = {}) {
  using C = std::complex<double>;
  ComplexQuadratureResult total;
  for (const auto& seg : segments) {
    if (std::isinf(seg.start.real())) {
      const C end = seg.end;
      auto g = [&](double s) -> C { return f(end - s); };
      total += detail::integrate_tail<C>(g, 0.0, opt);
      continue;
    }
    const C d = seg.end - seg.start;
    if (d == C{}) throw DomainError("integrate_path: degenerate segment");
    const C s0 = seg.start;
    auto g = [&](double t) -> C { return f(s0 + t * d) * d; };
    total += detail::integrate_finite<C>(g, 0.0, 1.0, opt);
  }
  return total;
}

template <typename F>
ComplexQuadratureResult integrate_path(F&& f, const std::vector<PathSegment>& segments,
                                       double rel_tol) {
  return integrate_path(f, segments, QuadratureOptions{}.with_rel_tol(rel_tol));
}

}  // namespace bstar
