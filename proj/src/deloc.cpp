#include "wigner/deloc.hpp"

#include <algorithm>
#include <cmath>

#include "wigner/error.hpp"
#include "wigner/parallel.hpp"
#include "wigner/stats.hpp"

namespace wigner {

double lp_norm(const Eigen::VectorXcd& v, double p) {
  if (!(p > 2.0)) throw ArgumentError("lp_norm needs p > 2 (or p = inf)");
  if (std::isinf(p)) return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  // Scale by the largest modulus so that |v_i|^p cannot underflow wholesale.
  const double vmax = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  if (vmax == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)) / vmax, p);
  return vmax * std::pow(s, 1.0 / p);
}

double deloc_statistic(const Eigen::VectorXcd& v, double p) {
  const double n2 = v.norm();
  if (std::abs(n2 - 1.0) > 1e-8) throw ArgumentError("deloc_statistic needs a unit vector");
  const double n = static_cast<double>(v.size());
  const double expo = std::isinf(p) ? 0.5 : 0.5 - 1.0 / p;
  return lp_norm(v, p) * std::pow(n, expo);
}

DelocReport deloc_report(const SpectralDecomposition& sd, double p, double bulk_kappa) {
  if (!sd.vectors) throw ArgumentError("deloc_report needs eigenvectors");
  DelocReport r;
  std::vector<double> bulk;
  for (Eigen::Index a = 0; a < sd.values.size(); ++a) {
    const double m = deloc_statistic(sd.vectors->col(a), p);
    r.records.push_back({sd.values(a), p, m});
    if (std::abs(sd.values(a)) <= 2.0 - bulk_kappa) bulk.push_back(m);
  }
  r.bulk_count = bulk.size();
  if (!bulk.empty()) {
    r.bulk_max = *std::max_element(bulk.begin(), bulk.end());
    r.bulk_median = median(bulk);
    r.bulk_q90 = quantile(bulk, 0.9);
  }
  return r;
}

double max_statistic_in(const SpectralDecomposition& sd, double a, double b, double p) {
  if (!sd.vectors) throw ArgumentError("max_statistic_in needs eigenvectors");
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < sd.values.size(); ++i)
    if (sd.values(i) >= a && sd.values(i) <= b) best = std::max(best, deloc_statistic(sd.vectors->col(i), p));
  return best;
}

std::vector<double> deloc_tail(const EnsembleSpec& spec, double e, double k, double p,
                               const std::vector<double>& m_grid, std::size_t reps, int workers) {
  if (reps < 1) throw ArgumentError("deloc_tail needs reps >= 1");
  if (!(k > 0.0)) throw ArgumentError("deloc_tail needs K > 0");
  const double half = k / (2.0 * static_cast<double>(spec.n));
  const auto maxima = map_realizations<double>(reps, workers, [&](std::size_t r) {
    const SpectralDecomposition sd = hermitian_eig(sample_realization(spec, r), true);
    return max_statistic_in(sd, e - half, e + half, p);
  });
  std::vector<double> tail;
  tail.reserve(m_grid.size());
  for (double m : m_grid) {
    std::size_t hits = 0;
    for (double x : maxima)
      if (x >= m) ++hits;
    tail.push_back(static_cast<double>(hits) / static_cast<double>(reps));
  }
  return tail;
}

}  // namespace wigner
