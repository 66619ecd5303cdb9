#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "wigner/ensemble.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

// (sum |v_i|^p)^(1/p), or max |v_i| for p = inf. Requires p > 2.
double lp_norm(const Eigen::VectorXcd& v, double p);

// M = ||v||_p * N^(1/2 - 1/p). Requires ||v||_2 = 1 within 1e-8.
double deloc_statistic(const Eigen::VectorXcd& v, double p);

struct DelocRecord {
  double mu = 0.0;
  double p = kInfNorm;
  double m = 0.0;
};

struct DelocReport {
  std::vector<DelocRecord> records;  // one per eigenvector, ascending mu
  double bulk_max = 0.0;             // max M over |mu| <= 2 - bulk_kappa
  double bulk_median = 0.0;
  double bulk_q90 = 0.0;
  std::size_t bulk_count = 0;
};

DelocReport deloc_report(const SpectralDecomposition& sd, double p, double bulk_kappa = 0.2);

// For each M in m_grid: fraction of realizations with an eigenvalue in
// [E - K/2N, E + K/2N] whose eigenvector has statistic >= M.
std::vector<double> deloc_tail(const EnsembleSpec& spec, double e, double k, double p,
                               const std::vector<double>& m_grid, std::size_t reps, int workers = 1);

// Largest statistic among eigenvectors with eigenvalue in [a, b]; -inf if none.
double max_statistic_in(const SpectralDecomposition& sd, double a, double b, double p);

}  // namespace wigner
