#include "bstar/stats.hpp"

#include <algorithm>
#include <cmath>

#include "bstar/errors.hpp"

namespace bstar {

Summary summarize(const std::vector<double>& x) {
  if (x.size() < 2) throw ParameterError("summarize: at least 2 values required");
  Summary s;
  s.n = x.size();
  double m = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double v : x) {
    ++k;
    const double delta = v - m;
    m += delta / static_cast<double>(k);
    m2 += delta * (v - m);
  }
  s.mean = m;
  s.stddev = std::sqrt(m2 / static_cast<double>(s.n - 1));
  s.std_error = s.stddev / std::sqrt(static_cast<double>(s.n));
  return s;
}

double kolmogorov_p_value(double d, double effective_n) {
  const double sn = std::sqrt(effective_n);
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test_uniform(std::vector<double> u) {
  if (u.empty()) throw ParameterError("ks_test: empty sample");
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, static_cast<double>(i + 1) / n - u[i]);
    d = std::max(d, u[i] - static_cast<double>(i) / n);
  }
  return {d, kolmogorov_p_value(d, n), u.size()};
}

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
  for (double& x : sample) x = cdf(x);
  return ks_test_uniform(std::move(sample));
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ParameterError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, kolmogorov_p_value(d, na * nb / (na + nb)), a.size() + b.size()};
}

double median(std::vector<double> x) {
  if (x.empty()) throw ParameterError("median: empty sample");
  const std::size_t m = x.size() / 2;
  std::nth_element(x.begin(), x.begin() + m, x.end());
  if (x.size() % 2) return x[m];
  const double hi = x[m];
  return 0.5 * (hi + *std::max_element(x.begin(), x.begin() + m));
}

}  // namespace bstar
