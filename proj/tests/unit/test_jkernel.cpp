#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wigner/dbm.hpp"
#include "wigner/error.hpp"
#include "wigner/jkernel.hpp"
#include "wigner/localstats.hpp"
#include "wigner/semicircle.hpp"

using namespace wigner;
using cd = std::complex<double>;

namespace {

// Exact kernel for small N from the residue expansion of the z integral:
//   K(u,v) = a/(2 pi i) sum_j e^{-a(y_j^2/2 - u y_j)} / P'(y_j) int_Gamma e^{a(w^2/2 - v w)} P(w)/(w - y_j) dw,
// a = N/t, P(w) = prod (w - y_i). On w = v + i s the weight is e^{-a v^2/2} e^{-a s^2/2} and the rest
// is a polynomial of degree N-1, so Gauss-Hermite with N+2 nodes is exact.
cd kernel_by_residues(double u, double v, const std::vector<double>& y, double t) {
  const std::size_t n = y.size();
  const double a = static_cast<double>(n) / t;
  // Gauss-Hermite nodes from the Golub-Welsch eigenproblem.
  const int m = static_cast<int>(n) + 2;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) jac(i, i - 1) = jac(i - 1, i) = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  const Eigen::VectorXd xh = es.eigenvalues();
  const Eigen::VectorXd wh = std::sqrt(std::numbers::pi) * es.eigenvectors().row(0).array().square().matrix().transpose();
  cd total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double pp = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) pp *= y[j] - y[i];
    cd integral = 0.0;
    for (int k = 0; k < m; ++k) {
      const double s = xh(k) * std::sqrt(2.0 / a);
      const cd w(v, s);
      cd q = 1.0;
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) q *= w - y[i];
      integral += wh(k) * std::sqrt(2.0 / a) * q;
    }
    total += std::exp(-a * (y[j] * y[j] / 2.0 - u * y[j] + v * v / 2.0)) / pp * integral;
  }
  // dw = i ds cancels the 1/i of 1/(2 pi i).
  return a / (2.0 * std::numbers::pi) * total;
}

KernelQuery query(double u, double v, std::vector<double> y, double t, double varrho = 1.0) {
  KernelQuery q;
  q.u = u;
  q.v = v;
  q.e = 0.5 * (u + v);
  q.t = t;
  q.y = std::move(y);
  q.varrho = varrho;
  return q;
}

// One-point density of diag(y) + sqrt(t) GUE_2 from the transition kernel: the marginal
// of the ordered-sector density, summed over both positions and halved.
double two_point_marginal(double x, const std::vector<double>& y, double t) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double upper = GK::integrate([&](double x2) { return qt_kernel({x, x2}, y, t); }, x, x + 8.0, 10, 1e-13);
  const double lower = GK::integrate([&](double x1) { return qt_kernel({x1, x}, y, t); }, x - 8.0, x, 10, 1e-13);
  return 0.5 * (upper + lower);
}

}  // namespace

TEST(RhoT, ReductionEdgeAndMass) {
  for (double e : {-1.9, -0.3, 0.0, 1.2}) EXPECT_EQ(rho_t(e, 0.0), rho_sc(e));
  for (double t : {0.3, 1.0}) {
    EXPECT_EQ(rho_t(2.0 * (1.0 + t) + 1e-3, t), 0.0);
    EXPECT_EQ(rho_t(2.0 * std::sqrt(1.0 + t) + 1e-9, t), 0.0);
    const double edge = 2.0 * std::sqrt(1.0 + t);
    const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double th) { return rho_t(edge * std::sin(th), t) * edge * std::cos(th); }, -std::numbers::pi / 2,
        std::numbers::pi / 2);
    EXPECT_NEAR(mass, 1.0, 1e-8);
  }
}

TEST(Integrand, TauToZeroLimit) {
  const std::vector<double> y{-0.8, 0.1, 0.9};
  KernelQuery q0 = query(0.2, 0.2, y, 0.4, 0.3);
  KernelQuery q1 = q0;
  q1.v = q0.u + 1e-8 / (3 * 0.3);  // tau = 1e-8
  ContourParams p;
  p.r = 0.15;
  for (cd z : {cd(0.4, 0.1), cd(-1.0, -0.2)})
    for (cd w : {cd(0.3, 0.5), cd(0.3, -1.2)}) {
      const cd a = integrand(z, w, q0, p), b = integrand(z, w, q1, p);
      EXPECT_LE(std::abs(a - b), 1e-6 * std::abs(a));
      // At tau = 0, h_N(w)/(w - r) = -1/(t varrho).
      const double n = 3, t = 0.4, rho = 0.3;
      cd cross = 0.0;
      for (double yj : y) cross += (yj - p.r) / ((w - yj) * (z - yj));
      const cd g_times = (w - p.r + z - q0.u) / t - cross / n;
      const cd expo = n * (f_N(w, q0) - f_N(z, q0));
      EXPECT_LE(std::abs(a - (-1.0 / (t * rho)) * g_times * std::exp(expo)), 1e-12 * std::abs(a));
    }
}

TEST(Integrand, HandEvaluatedSingleLevel) {
  // N = 1, y = {0}, z = u, w = r + 1.
  const double t = 0.7, rho = 0.4, u = 0.6, v = 0.9, r = -0.35;
  const KernelQuery q = query(u, v, {0.0}, t, rho);
  ContourParams p;
  p.r = r;
  const cd z = u, w = r + 1.0;
  const double tau = 1.0 * rho * (v - u);
  const cd h = (std::exp(-tau * (w - r) / (t * rho)) - 1.0) / tau;
  const cd g = (1.0 / t) * 1.0 - (0.0 - r) / ((w - 0.0) * (z - 0.0) * 1.0 * (w - r));
  const cd f = [&](cd x) { return (x * x - 2.0 * u * x) / (2.0 * t) + std::log(x); }(w) -
               ((z * z - 2.0 * u * z) / (2.0 * t) + std::log(z));
  EXPECT_LE(std::abs(integrand(z, w, q, p) - h * g * std::exp(f)), 1e-14 * std::abs(h * g * std::exp(f)));
}

TEST(Integrand, SchwarzReflectionAndPoles) {
  const KernelQuery q = query(0.1, 0.3, {-1.2, -0.1, 0.5, 1.4}, 0.5);
  for (cd z : {cd(0.3, 0.2), cd(-2.0, 1.5), cd(1.0, 1e-3)})
    EXPECT_LE(std::abs(f_N(std::conj(z), q) - std::conj(f_N(z, q))), 1e-14);
  ContourParams p;
  EXPECT_THROW(integrand(cd(0.2, 0.1), cd(0.5, 0.0), q, p), ContourError);
  EXPECT_THROW(integrand(cd(-0.1, 0.0), cd(0.2, 0.1), q, p), ContourError);
}

TEST(KtN, MatchesResidueOracle) {
  struct Case {
    std::vector<double> y;
    double t, u, v;
  };
  const std::vector<Case> cases{{{-1.0, 1.0}, 0.3, -0.3, 0.4},
                                {{-1.0, 1.0}, 0.3, 0.1, 1.2},
                                {{-1.0, 1.0}, 0.3, -0.3, -0.3},
                                {{-1.3, -0.4, 0.2, 0.9, 1.6}, 0.4, -0.3, 0.4},
                                {{-1.3, -0.4, 0.2, 0.9, 1.6}, 0.4, 0.5, 0.2}};
  for (const Case& c : cases) {
    const KernelQuery q = query(c.u, c.v, c.y, c.t);
    const cd exact = kernel_by_residues(c.u, c.v, c.y, c.t);
    for (double r : {0.0, 0.5, -0.7}) {
      ContourParams p = default_contour(q);
      p.r = r;
      const KernelValue kv = K_tN(q, p);
      const double n = static_cast<double>(c.y.size());
      EXPECT_LE(std::abs(kv.value * n - exact), 1e-6 * std::abs(exact) + n * kv.error_estimate)
          << "u=" << c.u << " v=" << c.v << " r=" << r;
      // The raw integral carries the real gauge exp(N (v - u) r / t).
      EXPECT_LE(std::abs(kv.raw - kv.value * std::exp(n * (c.v - c.u) * r / c.t)), 1e-12 * std::abs(kv.raw) + 1e-300);
    }
  }
}

TEST(KtN, FrozenValues) {
  // Diagonal of N = 2, y = (-1, 1), t = 0.3 at u = v = -1 with varrho = 1.
  EXPECT_NEAR(K_tN(query(-1.0, -1.0, {-1.0, 1.0}, 0.3)).value.real(), 0.51503226936418, 1e-9);
  // N = 5 semicircle quantiles, t = 0.5; frozen as K itself, i.e. N * value.
  const auto y = semicircle_quantiles(5);
  EXPECT_NEAR(5.0 * K_tN(query(-2.5, -2.5, y, 0.5)).value.real(), 0.020698624659, 1e-9);
  EXPECT_NEAR(5.0 * K_tN(query(0.0, 0.0, y, 0.5)).value.real(), 1.62689744344, 1e-9);
}

TEST(KtN, DiagonalIsTransitionKernelMarginal) {
  const std::vector<double> y{-1.0, 1.0};
  for (double x : {-1.7, -1.0, -0.2, 0.4, 1.3}) {
    const double marginal = two_point_marginal(x, y, 0.3);
    const KernelValue kv = K_tN(query(x, x, y, 0.3));
    EXPECT_NEAR(kv.value.real(), marginal, 1e-7 + kv.error_estimate) << "x=" << x;
  }
}

TEST(KtN, SeparableMatchesDoubleQuadrature) {
  const std::vector<double> y{-1.1, -0.2, 0.6};
  for (auto [u, v] : {std::pair{0.1, 0.1}, std::pair{-0.4, 0.3}, std::pair{0.8, -0.5}}) {
    const KernelQuery q = query(u, v, y, 0.5, 0.35);
    ContourParams p = default_contour(q);
    p.nodes = 128;
    p.tolerance = 1.0;
    const KernelValue a = K_tN(q, p);
    const KernelValue b = K_tN_double_quadrature(q, p);
    EXPECT_LE(std::abs(a.value - b.value), 1e-10 * std::max(1.0, std::abs(a.value)));
  }
}

TEST(KtN, NodeDoublingWithinEstimate) {
  const auto y20 = semicircle_quantiles(20);
  const auto y50 = semicircle_quantiles(50);
  int n_queries = 0;
  for (const auto* y : {&y20, &y50})
    for (auto [u, v] : {std::pair{0.0, 0.0}, std::pair{0.0, 0.02}, std::pair{-0.5, -0.47}, std::pair{1.0, 1.0},
                        std::pair{0.3, 0.25}}) {
      const KernelQuery q = query(u, v, *y, 0.5, 0.0);
      const ContourParams p = default_contour(q);
      ContourParams p2 = p;
      p2.nodes = 2 * p.nodes;
      const KernelValue a = K_tN(q, p), b = K_tN(q, p2);
      EXPECT_LE(std::abs(a.value - b.value), a.error_estimate) << "u=" << u << " v=" << v;
      ++n_queries;
    }
  EXPECT_EQ(n_queries, 10);
}

TEST(KtN, GaugeFixedValueIndependentOfShift) {
  const auto y = semicircle_quantiles(30);
  for (auto [u, v] : {std::pair{0.0, 0.05}, std::pair{0.2, 0.1}}) {
    const KernelQuery q = query(u, v, y, 0.5, 0.0);
    ContourParams p = default_contour(q);
    const KernelValue a = K_tN(q, p);
    p.r = q.e + 0.5;
    const KernelValue b = K_tN(q, p);
    EXPECT_LE(std::abs(std::abs(a.value) - std::abs(b.value)), 1e-3);
    EXPECT_LE(std::abs(a.value - b.value), a.error_estimate + b.error_estimate);
  }
}

TEST(KtN, DiagonalRealPositiveAndNormalized) {
  const auto y = semicircle_quantiles(20);
  using Q = boost::math::quadrature::gauss<double, 16>;
  double integral = 0.0;
  const int panels = 24;
  for (int p = 0; p < panels; ++p) {
    const double a = -3.0 + 6.0 * p / panels, b = a + 6.0 / panels;
    integral += Q::integrate(
        [&](double x) {
          const KernelValue kv = K_tN(query(x, x, y, 0.5));
          EXPECT_LE(std::abs(kv.value.imag()), 1e-6 * std::abs(kv.value.real()) + 1e-12);
          EXPECT_GT(kv.value.real(), 0.0);
          return kv.value.real();
        },
        a, b);
  }
  EXPECT_NEAR(integral, 1.0, 0.02);
}

TEST(KtN, ParameterValidation) {
  KernelQuery q = query(0.0, 0.0, {-1.0, 1.0}, 0.5);
  ContourParams p = default_contour(q);
  p.kappa = 1.0;
  EXPECT_THROW(K_tN(q, p), ContourError);
  p = default_contour(q);
  p.nodes = 32;
  EXPECT_THROW(K_tN(q, p), ContourError);
  p = default_contour(q);
  p.s = 0.3;
  EXPECT_THROW(K_tN(q, p), AccuracyError);
  q.t = 0.0;
  EXPECT_THROW(K_tN(q), ArgumentError);
}

TEST(DefaultContour, DocumentedDefaults) {
  KernelQuery q = query(0.0, 0.0, semicircle_quantiles(10), 0.36, 0.0);
  q.e = 0.3;
  const ContourParams p = default_contour(q);
  EXPECT_EQ(p.r, 0.3);
  EXPECT_EQ(p.kappa, 0.3);
  EXPECT_EQ(p.delta, std::max(0.1, 0.09));
  EXPECT_NEAR(p.s, 3.0 * 1.6, 1e-15);
  EXPECT_EQ(p.nodes, 512u);
  q.e = q.y[4];
  EXPECT_GE(std::abs(default_contour(q).kappa - q.y[4]), 1e-8);
}

TEST(SineLimit, SmallReport) {
  SineLimitTemplate tpl;
  tpl.t = 0.5;
  tpl.y = semicircle_quantiles(50);
  const std::vector<std::pair<double, double>> pairs{{0.0, 0.0}, {0.0, 1.0}, {0.0, 0.5}, {0.5, 0.0}, {0.0, 2.0}};
  const auto rows = sine_limit_report(0.0, pairs, tpl);
  ASSERT_EQ(rows.size(), pairs.size());
  EXPECT_NEAR(rows[0].normalized, 1.0, 0.05);
  EXPECT_LE(std::abs(rows[1].normalized), 0.05);
  EXPECT_LE(std::abs(rows[4].normalized), 0.05);
  EXPECT_NEAR(rows[2].normalized, rows[3].normalized, 1e-12);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.sinc, sinc_pi(r.x2 - r.x1), 0.0);
    EXPECT_LE(r.abs_err, 0.05);
  }
  EXPECT_THROW(sine_limit_report(2.5, pairs, tpl), ArgumentError);
}
