#include "wigner/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wigner/error.hpp"
#include "wigner/parallel.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

double rho_sc(double e) {
  if (std::abs(e) > 2.0) return 0.0;
  return std::sqrt(std::max(0.0, 1.0 - e * e / 4.0)) / std::numbers::pi;
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + (x * std::sqrt(4.0 - x * x) / 4.0 + std::asin(x / 2.0)) / std::numbers::pi;
}

std::vector<double> semicircle_quantiles(std::size_t n) {
  std::vector<double> q(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double target = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
    double lo = -2.0, hi = 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (semicircle_cdf(mid) < target ? lo : hi) = mid;
    }
    q[j] = 0.5 * (lo + hi);
  }
  return q;
}

std::size_t count_eigenvalues(std::span<const double> eigs, double a, double b) {
  if (a > b) throw ArgumentError("count_eigenvalues: empty interval a > b");
  const auto lo = std::lower_bound(eigs.begin(), eigs.end(), a);
  const auto hi = std::upper_bound(eigs.begin(), eigs.end(), b);
  return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

std::string to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::absolute_eta:
      return "eta";
    case WindowKind::microscopic_k:
      return "K";
    case WindowKind::vanishing_eps:
      return "eps";
  }
  return "?";
}

WindowKind parse_window_kind(const std::string& s) {
  if (s == "eta") return WindowKind::absolute_eta;
  if (s == "K" || s == "k") return WindowKind::microscopic_k;
  if (s == "eps") return WindowKind::vanishing_eps;
  throw ConfigError("unknown window kind '" + s + "' (expected eta, K or eps)");
}

std::pair<double, double> EnergyWindow::bounds(std::size_t n) const {
  if (!(scale > 0.0)) throw ArgumentError("window scale must be positive");
  const double half = kind == WindowKind::absolute_eta ? scale / 2.0 : scale / (2.0 * static_cast<double>(n));
  return {e - half, e + half};
}

double dos_estimate(std::span<const double> eigs, const EnergyWindow& w, std::size_t n) {
  const auto [a, b] = w.bounds(n);
  const double c = static_cast<double>(count_eigenvalues(eigs, a, b));
  if (w.kind == WindowKind::absolute_eta) return c / (static_cast<double>(n) * w.scale);
  return c / w.scale;
}

SpectrumSource ensemble_source(const EnsembleSpec& spec) {
  return [spec](std::size_t k) { return eigenvalues(sample_realization(spec, k)); };
}

namespace {

std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

std::vector<double> dos_samples(const SpectrumSource& src, std::size_t n, const EnergyWindow& w,
                                std::size_t reps, int workers) {
  w.bounds(n);
  return map_realizations<double>(reps, workers, [&](std::size_t k) {
    const Eigen::VectorXd ev = src(k);
    return dos_estimate(as_span(ev), w, n);
  });
}

DeviationResult deviation_from_samples(std::span<const double> estimates, double e, double delta) {
  DeviationResult r;
  r.reps = estimates.size();
  const double target = rho_sc(e);
  for (double x : estimates)
    if (std::abs(x - target) >= delta) ++r.hits;
  r.probability = r.reps ? static_cast<double>(r.hits) / static_cast<double>(r.reps) : 0.0;
  r.wilson = wilson_interval(r.hits, r.reps);
  return r;
}

DeviationResult deviation_probability(const EnsembleSpec& spec, const EnergyWindow& w, double delta,
                                      std::size_t reps, int workers) {
  if (reps < 1) throw ArgumentError("deviation_probability needs reps >= 1");
  const auto est = dos_samples(ensemble_source(spec), spec.n, w, reps, workers);
  return deviation_from_samples(est, w.e, delta);
}

double smoothed_count(std::span<const double> eigs, double e, double kappa, double eps, std::size_t n) {
  if (!(kappa > 0.0) || !(eps > 0.0)) throw ArgumentError("smoothed_count needs kappa, eps > 0");
  const double nn = static_cast<double>(n);
  const double half = kappa / (2.0 * nn);
  double s = 0.0;
  for (double mu : eigs) s += std::atan(nn * (mu - e + half) / eps) - std::atan(nn * (mu - e - half) / eps);
  return s / (std::numbers::pi * kappa);
}

double im_stieltjes_over_pi(std::span<const double> eigs, double e, double eps, std::size_t n) {
  const double eta = eps / static_cast<double>(n);
  double s = 0.0;
  for (double mu : eigs) {
    const double d = mu - e;
    s += eta / (d * d + eta * eta);
  }
  return s / (static_cast<double>(n) * std::numbers::pi);
}

MeanEstimate avg_dos_estimate(const SpectrumSource& src, std::size_t n, double e, double eps,
                              std::size_t reps, int workers) {
  if (!(eps > 0.0)) throw ArgumentError("avg_dos_estimate needs eps > 0");
  if (reps < 1) throw ArgumentError("avg_dos_estimate needs reps >= 1");
  const auto vals = map_realizations<double>(reps, workers, [&](std::size_t k) {
    const Eigen::VectorXd ev = src(k);
    return im_stieltjes_over_pi(as_span(ev), e, eps, n);
  });
  return mean_estimate(vals);
}

MeanEstimate avg_dos_estimate(const EnsembleSpec& spec, double e, double eps, std::size_t reps, int workers) {
  return avg_dos_estimate(ensemble_source(spec), spec.n, e, eps, reps, workers);
}

MeanEstimate emn_slope_probe(const SpectrumSource& src, std::size_t n, double e, double eps, double h,
                             std::size_t reps, int workers) {
  if (!(h > 0.0)) throw ArgumentError("finite difference step must be positive");
  const auto vals = map_realizations<double>(reps, workers, [&](std::size_t k) {
    const Eigen::VectorXd ev = src(k);
    const auto s = as_span(ev);
    const double pi = std::numbers::pi;
    const double fp = (e + h) * pi * im_stieltjes_over_pi(s, e + h, eps, n);
    const double fm = (e - h) * pi * im_stieltjes_over_pi(s, e - h, eps, n);
    return (fp - fm) / (2.0 * h);
  });
  return mean_estimate(vals);
}

}  // namespace wigner
