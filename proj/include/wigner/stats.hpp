#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wigner {

struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t count = 0;
};

// Sample mean and standard error of the mean, summed in index order.
MeanEstimate mean_estimate(std::span<const double> xs);

double median(std::vector<double> xs);
double quantile(std::vector<double> xs, double q);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};
WilsonInterval wilson_interval(std::size_t hits, std::size_t n, double z = 1.959963984540054);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> a, std::vector<double> b);
// One-sample KS distance against a continuous CDF.
double ks_distance(std::vector<double> a, const std::function<double(double)>& cdf);

// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace wigner
