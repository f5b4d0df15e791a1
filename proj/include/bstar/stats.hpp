#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace bstar {

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
};

// Requires n >= 2.
Summary summarize(const std::vector<double>& x);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

// Asymptotic Kolmogorov tail with the Stephens small-sample correction.
double kolmogorov_p_value(double d, double effective_n);

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);
KsResult ks_test_uniform(std::vector<double> u);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

double median(std::vector<double> x);

}  // namespace bstar
