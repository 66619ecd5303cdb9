#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wigner/stats.hpp"

namespace wigner {

// det( sin(pi(x_i - x_j)) / (pi(x_i - x_j)) ), diagonal 1.
double sine_kernel_det(std::span<const double> points);
// sin(pi x)/(pi x).
double sinc_pi(double x);
// 1 - sinc^2(pi r), the two-point sine-kernel density.
double sine_two_point(double r);

// Unfolded points N rho_sc(E)(mu - E) that fall within |x| <= half_width.
std::vector<double> rescale_near(std::span<const double> eigs, double e, std::size_t n,
                                 double half_width = 100.0);

struct CorrelationEstimate {
  std::vector<double> centers;
  std::vector<double> values;
  std::vector<double> stderr_;
  std::vector<long long> counts;
  std::size_t reps = 0;
  double half_width = 0.0;
  double bin_width = 0.0;
  double e = 0.0;
  bool empty = true;
};

struct PairBins {
  double bin_width = 0.1;
  double r_max = 3.0;
  std::size_t count() const;
};

// Pair-distance histogram of unfolded samples (each already restricted to
// [-W, W]). Bin [r1, r2] is normalized by the expected number of pairs of a
// unit-density Poisson process on [-W, W], i.e. the integral of (2W - r) over
// the bin, so uncorrelated points give 1 on every bin.
CorrelationEstimate two_point_from_unfolded(const std::vector<std::vector<double>>& samples, double half_width,
                                            const PairBins& bins, int workers = 1);
CorrelationEstimate two_point_estimate(const std::vector<Eigen::VectorXd>& spectra, double e, std::size_t n,
                                       const PairBins& bins, double half_width = 100.0, int workers = 1);
// Bin average of 1 - sinc^2 over [r1, r2] by Gauss-Legendre quadrature.
double sine_two_point_bin(double r1, double r2);

struct Observable {
  enum class Kind { indicator, gaussian, triangular };
  Kind kind = Kind::indicator;
  // indicator: [c - width/2, c + width/2]; gaussian: sigma = width, cut at 5 sigma;
  // triangular: half-base width.
  double width = 1.0;
  std::size_t arity = 1;
  std::vector<double> centers{0.0};  // one center per coordinate
  double scale = 1.0;                // overall multiplier; 0 gives O = 0

  double profile(std::size_t coord, double x) const;
  double support_half_width() const;
  double operator()(std::span<const double> x) const;
};

// Monte Carlo estimate of sum over ordered k-tuples of distinct unfolded
// eigenvalues of O, i.e. the integral of O against the unfolded k-point
// correlation function. With b > 0 the energy is averaged over 16 midpoint
// energies in [E0 - b, E0 + b].
MeanEstimate observable_statistic(const std::vector<Eigen::VectorXd>& spectra, double e0, double b,
                                  const Observable& o, std::size_t n, int workers = 1);
// Integral of O against the sine-kernel correlation (1 for k = 1, 1 - sinc^2 for k = 2).
double observable_sine_reference(const Observable& o);

}  // namespace wigner
