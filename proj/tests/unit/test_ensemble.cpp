#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "wigner/ensemble.hpp"
#include "wigner/error.hpp"
#include "wigner/spectral.hpp"
#include "wigner/stats.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss.hpp>

using namespace wigner;

namespace {

EnsembleSpec spec_of(std::size_t n, const std::string& law, double t = 0.0, std::uint64_t seed = 3) {
  EnsembleSpec s;
  s.n = n;
  s.law = EntryLaw::parse(law);
  s.t = t;
  s.seed = seed;
  return s;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST(Ensemble, ScalarGaussianMoments) {
  const EnsembleSpec s = spec_of(1, "gaussian");
  std::vector<double> xs;
  for (std::size_t k = 0; k < 100000; ++k) xs.push_back(sample_realization(s, k)(0, 0).real());
  const MeanEstimate m = mean_estimate(xs);
  double var = 0.0;
  for (double x : xs) var += (x - m.mean) * (x - m.mean);
  var /= static_cast<double>(xs.size() - 1);
  EXPECT_NEAR(m.mean, 0.0, 0.01);
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(Ensemble, HermitianBitForBit) {
  for (const char* law : {"gaussian", "rademacher", "uniform"}) {
    const HermitianMatrix h = sample_realization(spec_of(40, law, 0.3), 2);
    EXPECT_EQ(h.max_asymmetry(), 0.0) << law;
    for (std::size_t j = 0; j < 40; ++j)
      for (std::size_t l = 0; l < 40; ++l) ASSERT_EQ(h(j, l), std::conj(h(l, j)));
  }
}

TEST(Ensemble, EntryMomentsWithinThreeStandardErrors) {
  // Collect standardized entries x_jl, y_jl (off-diagonal) and x_jj over many small matrices.
  for (const char* law : {"gaussian", "rademacher", "uniform"}) {
    const std::size_t n = 8;
    const EnsembleSpec s = spec_of(n, law);
    std::vector<double> re, im, dg;
    for (std::size_t k = 0; k < 4000; ++k) {
      const HermitianMatrix h = sample_realization(s, k);
      const double sn = std::sqrt(static_cast<double>(n));
      for (std::size_t j = 0; j < n; ++j) {
        dg.push_back(sn * h(j, j).real());
        for (std::size_t l = j + 1; l < n; ++l) {
          re.push_back(std::sqrt(2.0) * sn * h(j, l).real());
          im.push_back(std::sqrt(2.0) * sn * h(j, l).imag());
        }
      }
    }
    for (auto* xs : {&re, &im, &dg}) {
      ASSERT_GE(xs->size(), 30000u);
      const MeanEstimate m = mean_estimate(*xs);
      EXPECT_LE(std::abs(m.mean), 3.0 * m.stderr_) << law;
      std::vector<double> sq;
      for (double x : *xs) sq.push_back(x * x);
      const MeanEstimate v = mean_estimate(sq);
      EXPECT_LE(std::abs(v.mean - 1.0), 3.0 * v.stderr_ + 1e-12) << law;
    }
  }
}

TEST(Ensemble, RealizationBytesReproduce) {
  const EnsembleSpec s = spec_of(30, "uniform", 0.2, 9);
  const HermitianMatrix a = sample_realization(s, 4), b = sample_realization(s, 4);
  EXPECT_TRUE((a.dense().array() == b.dense().array()).all());
  const HermitianMatrix c = sample_realization(s, 5);
  EXPECT_FALSE((a.dense().array() == c.dense().array()).all());
}

TEST(Ensemble, SpectrumInsideEdgeAtLargeN) {
  const EnsembleSpec s = spec_of(2000, "gaussian", 0.0, 21);
  int inside = 0;
  const int draws = 100;
  for (int k = 0; k < draws; ++k) {
    const Eigen::VectorXd ev = eigenvalues(sample_realization(s, static_cast<std::uint64_t>(k)));
    inside += std::max(-ev(0), ev(ev.size() - 1)) <= 2.1;
  }
  EXPECT_GE(inside, 99);
}

TEST(Gue, ScalarIsStandardNormal) {
  std::vector<double> xs;
  for (std::uint64_t k = 0; k < 100000; ++k) {
    RngStream r = derive_stream(5, k);
    xs.push_back(sample_gue(1, r)(0, 0).real());
  }
  EXPECT_LT(ks_distance(xs, normal_cdf), 0.02);
}

TEST(Gue, OffDiagonalVariance) {
  const std::size_t n = 4;
  std::vector<double> xs;
  for (std::uint64_t k = 0; k < 100000; ++k) {
    RngStream r = derive_stream(6, k);
    xs.push_back(std::norm(sample_gue(n, r)(0, 1)));
  }
  EXPECT_NEAR(mean_estimate(xs).mean * static_cast<double>(n), 1.0, 0.05);
}

TEST(Gue, TwoByTwoEigenvaluesMatchJointDensity) {
  // Ordered pairs mu1 < mu2 histogrammed on a 16x16 grid over [-3,3]^2, compared
  // with the joint density integrated over each cell and normalized numerically.
  const int bins = 16;
  const double lo = -3.0, w = 6.0 / bins;
  const std::size_t draws = 100000;
  std::vector<double> hist(bins * bins, 0.0);
  std::size_t outside = 0;
  for (std::uint64_t k = 0; k < draws; ++k) {
    RngStream r = derive_stream(8, k);
    const Eigen::VectorXd ev = eigenvalues(sample_gue(2, r));
    const int i = static_cast<int>(std::floor((ev(0) - lo) / w));
    const int j = static_cast<int>(std::floor((ev(1) - lo) / w));
    if (i < 0 || j < 0 || i >= bins || j >= bins) {
      ++outside;
      continue;
    }
    hist[i * bins + j] += 1.0;
  }
  using Q = boost::math::quadrature::gauss<double, 10>;
  std::vector<double> ref(bins * bins, 0.0);
  double total = 0.0;
  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j) {
      const double a0 = lo + i * w, b0 = lo + j * w;
      const double cell = Q::integrate(
          [&](double x) {
            return Q::integrate(
                [&](double y) { return x < y ? std::exp(gue_joint_density({x, y}, 2)) : 0.0; }, b0, b0 + w);
          },
          a0, a0 + w);
      ref[i * bins + j] = cell;
      total += cell;
    }
  double l1 = static_cast<double>(outside) / draws;
  for (int c = 0; c < bins * bins; ++c) l1 += std::abs(hist[c] / draws - ref[c] / total);
  EXPECT_LT(l1, 0.05);
}

TEST(Gue, EntryLawInvariantUnderDftConjugation) {
  const std::size_t n = 50;
  Eigen::MatrixXcd u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      u(j, l) = std::polar(1.0 / std::sqrt(double(n)), 2.0 * std::numbers::pi * double(j * l) / double(n));
  std::vector<double> d0, d1, e0, e1;
  for (std::uint64_t k = 0; k < 200; ++k) {
    RngStream r = derive_stream(12, k);
    const HermitianMatrix h = sample_gue(n, r);
    Eigen::MatrixXcd c = u * h.dense() * u.adjoint();
    c = 0.5 * (c + c.adjoint()).eval();
    const HermitianMatrix hu(c);
    const Eigen::VectorXd a = eigenvalues(h), b = eigenvalues(hu);
    for (std::size_t j = 0; j < n; ++j) {
      d0.push_back(h(j, j).real());
      d1.push_back(hu(j, j).real());
      e0.push_back(a(j));
      e1.push_back(b(j));
    }
  }
  EXPECT_LT(ks_distance(d0, d1), 0.05);
  EXPECT_LT(ks_distance(e0, e1), 0.05);
}

TEST(GueJointDensity, RatioExample) {
  const double r = std::exp(gue_joint_density({1.0, -1.0}, 2) - gue_joint_density({0.5, -0.5}, 2));
  EXPECT_NEAR(r, 4.0 * std::exp(-2.0) / std::exp(-0.5), 1e-14);
  EXPECT_NEAR(r, 0.8925, 5e-5);
}

TEST(GueJointDensity, CoincidingAndPermuted) {
  EXPECT_EQ(gue_joint_density({0.3, 0.3, 1.0}, 3), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(gue_joint_density({0.1, -0.7, 1.3}, 3), gue_joint_density({1.3, 0.1, -0.7}, 3));
}

TEST(GridLaw, StandardizedFromFile) {
  const std::string path = ::testing::TempDir() + "/bimodal.csv";
  {
    std::ofstream f(path);
    for (int i = 0; i <= 400; ++i) {
      const double x = -4.0 + 0.02 * i;
      f << x << "," << std::exp(-(x - 1.5) * (x - 1.5) * 2.0) + 0.5 * std::exp(-(x + 1.0) * (x + 1.0) * 4.0) << "\n";
    }
  }
  const EntryLaw law = EntryLaw::parse("grid:" + path);
  ASSERT_TRUE(law.grid);
  EXPECT_NEAR(law.grid->mean(), 0.0, 1e-12);
  EXPECT_NEAR(law.grid->variance(), 1.0, 1e-12);
  RngStream r = derive_stream(1, 0);
  std::vector<double> xs, sq;
  for (int i = 0; i < 100000; ++i) {
    const double x = law.draw(r);
    xs.push_back(x);
    sq.push_back(x * x);
  }
  const MeanEstimate m = mean_estimate(xs), v = mean_estimate(sq);
  EXPECT_LE(std::abs(m.mean), 3.0 * m.stderr_);
  EXPECT_LE(std::abs(v.mean - 1.0), 3.0 * v.stderr_);
  EXPECT_EQ(law.name(), "grid:" + path);
  std::remove(path.c_str());
}

TEST(EnsembleSpec, ConfigRoundTripAndErrors) {
  const EnsembleSpec s = spec_of(17, "rademacher", 0.25, 99);
  std::map<std::string, std::string> kv;
  std::istringstream in(s.to_config());
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find('=');
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  const EnsembleSpec b = EnsembleSpec::from_config(kv);
  EXPECT_EQ(b.n, 17u);
  EXPECT_EQ(b.law.name(), "rademacher");
  EXPECT_EQ(b.t, 0.25);
  EXPECT_EQ(b.seed, 99u);
  EXPECT_THROW(EntryLaw::parse("cauchy"), ConfigError);
  EXPECT_THROW(EnsembleSpec::from_config({{"n", "0"}}), ConfigError);
  EXPECT_THROW(EnsembleSpec::from_config({{"colour", "red"}}), ConfigError);
  EXPECT_THROW(EnsembleSpec::from_config({{"t", "-1"}}), ConfigError);
}

TEST(HermitianMatrixType, RejectsNonHermitianAndWritesCsv) {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, cplx(0, 1), cplx(0, 1), 2.0;
  EXPECT_THROW(HermitianMatrix{m}, ArgumentError);
  m(1, 0) = cplx(0, -1);
  const HermitianMatrix h(m);
  std::ostringstream os;
  h.write_csv(os);
  EXPECT_EQ(os.str(), "\"1,0\",\"0,1\"\n\"0,-1\",\"2,0\"\n");
}
