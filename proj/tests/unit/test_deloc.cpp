#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "wigner/deloc.hpp"
#include "wigner/ensemble.hpp"
#include "wigner/error.hpp"
#include "wigner/spectral.hpp"

using namespace wigner;

namespace {

Eigen::VectorXcd unit(std::size_t n, std::size_t i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

Eigen::VectorXcd flat(std::size_t n) {
  return Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(static_cast<double>(n)));
}

Eigen::VectorXcd random_unit(std::size_t n, std::uint64_t k) {
  RngStream r = derive_stream(66, k);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = std::complex<double>(r.normal(), r.normal());
  return v / v.norm();
}

EnsembleSpec gue(std::size_t n) {
  EnsembleSpec s;
  s.n = n;
  s.seed = 808;
  return s;
}

}  // namespace

TEST(LpNorm, Examples) {
  for (double p : {3.0, 4.0, 10.0, kInfNorm}) EXPECT_DOUBLE_EQ(lp_norm(unit(9, 4), p), 1.0);
  EXPECT_NEAR(lp_norm(flat(16), 4.0), 0.5, 1e-15);
  EXPECT_NEAR(lp_norm(flat(16), kInfNorm), 0.25, 1e-15);
  EXPECT_THROW(lp_norm(flat(4), 2.0), ArgumentError);
  EXPECT_THROW(lp_norm(flat(4), 1.5), ArgumentError);
}

TEST(LpNorm, NoUnderflowForTinyEntries) {
  const Eigen::VectorXcd v = 1e-200 * flat(16);
  EXPECT_NEAR(lp_norm(v, 4.0) / 1e-200, 0.5, 1e-14);
}

TEST(LpNorm, NonincreasingInP) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Eigen::VectorXcd v = random_unit(40, k);
    double prev = lp_norm(v, 2.0 + 1e-9);
    for (double p : {2.5, 3.0, 4.0, 8.0, 20.0, kInfNorm}) {
      const double x = lp_norm(v, p);
      EXPECT_LE(x, prev * (1 + 1e-14));
      prev = x;
    }
  }
}

TEST(DelocStatistic, Examples) {
  EXPECT_NEAR(deloc_statistic(unit(25, 0), kInfNorm), 5.0, 1e-15);
  EXPECT_NEAR(deloc_statistic(flat(25), kInfNorm), 1.0, 1e-15);
  EXPECT_NEAR(deloc_statistic(flat(25), 4.0), 1.0, 1e-14);
  EXPECT_THROW(deloc_statistic(2.0 * flat(25), kInfNorm), ArgumentError);
}

TEST(DelocStatistic, LowerBoundAndPhaseInvariance) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Eigen::VectorXcd v = random_unit(50, k);
    const double m = deloc_statistic(v, kInfNorm);
    EXPECT_GE(m, 1.0 - 1e-10);
    RngStream r = derive_stream(67, k);
    Eigen::VectorXcd w = v;
    for (auto& x : w) x *= std::polar(1.0, 6.283185307179586 * r.uniform());
    EXPECT_NEAR(deloc_statistic(w, kInfNorm), m, 1e-15);
    const std::complex<double> g = std::polar(1.0, 0.7);
    for (double p : {3.0, 6.0}) EXPECT_NEAR(deloc_statistic(g * v, p), deloc_statistic(v, p), 1e-13);
  }
}

TEST(DelocReport, BulkSummary) {
  const SpectralDecomposition sd = hermitian_eig(sample_realization(gue(300), 0), true);
  const DelocReport r = deloc_report(sd, kInfNorm, 0.2);
  ASSERT_EQ(r.records.size(), 300u);
  std::size_t bulk = 0;
  double mx = 0.0;
  for (const auto& rec : r.records) {
    EXPECT_GE(rec.m, 1.0 - 1e-10);
    if (std::abs(rec.mu) <= 1.8) {
      ++bulk;
      mx = std::max(mx, rec.m);
    }
  }
  EXPECT_EQ(r.bulk_count, bulk);
  EXPECT_EQ(r.bulk_max, mx);
  EXPECT_LE(r.bulk_median, r.bulk_q90);
  EXPECT_LE(r.bulk_q90, r.bulk_max);
  EXPECT_LE(r.bulk_max * r.bulk_max, 25.0 * std::log(300.0));
  EXPECT_THROW(deloc_report(hermitian_eig(sample_realization(gue(5), 0), false), kInfNorm), ArgumentError);
}

TEST(DelocTail, ExtremesAndMonotone) {
  const EnsembleSpec s = gue(200);
  const std::vector<double> grid{0.0, 1.0, 2.0, 3.0, 4.0, std::sqrt(200.0)};
  const auto tail = deloc_tail(s, 0.0, 20.0, kInfNorm, grid, 10);
  ASSERT_EQ(tail.size(), grid.size());
  EXPECT_EQ(tail.front(), 1.0);  // the K = 20 window always holds eigenvalues at N = 200
  EXPECT_EQ(tail.back(), 0.0);
  for (std::size_t i = 1; i < tail.size(); ++i) EXPECT_LE(tail[i], tail[i - 1]);
}
