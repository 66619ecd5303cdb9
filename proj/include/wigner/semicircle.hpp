#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wigner/ensemble.hpp"
#include "wigner/stats.hpp"

namespace wigner {

// Semicircle density (1/pi) sqrt(1 - E^2/4) on [-2, 2], total mass 1.
double rho_sc(double e);
// Mass of rho_sc on (-inf, x].
double semicircle_cdf(double x);
// The quantiles x_j with semicircle_cdf(x_j) = (j + 1/2)/N, j = 0..N-1.
std::vector<double> semicircle_quantiles(std::size_t n);

// Number of eigenvalues in the closed interval [a, b].
std::size_t count_eigenvalues(std::span<const double> eigs, double a, double b);

enum class WindowKind { absolute_eta, microscopic_k, vanishing_eps };
std::string to_string(WindowKind kind);
WindowKind parse_window_kind(const std::string& s);

struct EnergyWindow {
  double e = 0.0;
  WindowKind kind = WindowKind::absolute_eta;
  double scale = 1.0;

  // [E - eta/2, E + eta/2] or [E - s/2N, E + s/2N].
  std::pair<double, double> bounds(std::size_t n) const;
};

double dos_estimate(std::span<const double> eigs, const EnergyWindow& w, std::size_t n);

// Produces the spectrum of realization k. Lets estimators run on cached or
// synthetic spectra as well as on freshly sampled matrices.
using SpectrumSource = std::function<Eigen::VectorXd(std::size_t k)>;
SpectrumSource ensemble_source(const EnsembleSpec& spec);

struct DeviationResult {
  double probability = 0.0;
  std::size_t hits = 0;
  std::size_t reps = 0;
  WilsonInterval wilson;
};

// Per-realization DOS estimates, in realization order.
std::vector<double> dos_samples(const SpectrumSource& src, std::size_t n, const EnergyWindow& w,
                                std::size_t reps, int workers = 1);
// Fraction of the given estimates with |estimate - rho_sc(E)| >= delta.
DeviationResult deviation_from_samples(std::span<const double> estimates, double e, double delta);
DeviationResult deviation_probability(const EnsembleSpec& spec, const EnergyWindow& w, double delta,
                                      std::size_t reps, int workers = 1);

// (1/(pi kappa)) sum_a [atan(N(mu_a - E - kappa/2N)/eps) - atan(N(mu_a - E + kappa/2N)/eps)],
// which counts eigenvalues in [E - kappa/2N, E + kappa/2N] per unit kappa as eps -> 0.
// The sign convention makes the value positive.
double smoothed_count(std::span<const double> eigs, double e, double kappa, double eps, std::size_t n);

// Im m_N(E + i eps/N) / pi for one spectrum.
double im_stieltjes_over_pi(std::span<const double> eigs, double e, double eps, std::size_t n);

// Monte Carlo mean of Im m_N(E + i eps/N)/pi.
MeanEstimate avg_dos_estimate(const SpectrumSource& src, std::size_t n, double e, double eps,
                              std::size_t reps, int workers = 1);
MeanEstimate avg_dos_estimate(const EnsembleSpec& spec, double e, double eps, std::size_t reps,
                              int workers = 1);

// Central finite difference of E -> E * Im m_N(E + i eps/N) averaged over
// realizations. Only a probe; no bound on it is asserted.
MeanEstimate emn_slope_probe(const SpectrumSource& src, std::size_t n, double e, double eps, double h,
                             std::size_t reps, int workers = 1);

}  // namespace wigner
