#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "wigner/cli.hpp"
#include "wigner/dbm.hpp"
#include "wigner/ensemble.hpp"
#include "wigner/semicircle.hpp"
#include "wigner/spectral.hpp"
#include "wigner/stieltjes.hpp"

namespace wigner::cli {

namespace {

constexpr std::uint64_t kSelftestSeed = 0x5e1f7e57ULL;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::span<const double> span_of(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

EnsembleSpec spec_for(std::size_t n, EntryLaw::Kind kind, std::uint64_t salt) {
  EnsembleSpec s;
  s.n = n;
  s.law.kind = kind;
  s.seed = kSelftestSeed + salt;
  return s;
}

SelftestCheck check_schur() {
  double worst = 0.0, worst_sc = 0.0;
  std::size_t trial = 0;
  for (auto kind : {EntryLaw::Kind::gaussian, EntryLaw::Kind::rademacher})
    for (std::size_t n : {2u, 10u, 50u})
      for (std::size_t k = 0; k < 5; ++k, ++trial) {
        const HermitianMatrix h = sample_realization(spec_for(n, kind, 1), trial);
        const std::size_t j = (7 * trial) % n;
        const std::complex<double> z(0.3, 0.05);
        const auto g = resolvent_diag(h, z, j);
        const MinorSpectrum ms = minor_spectrum(h, j);
        const auto s = schur_diag(ms, z);
        worst = std::max(worst, std::abs(g - s.value) / std::abs(g));
        const Eigen::VectorXd ev = eigenvalues(h);
        const auto terms = self_consistency_terms(span_of(ev), ms, UpperHalfPoint(z.real(), z.imag()));
        worst_sc = std::max(worst_sc, std::abs(g - terms.resolvent(UpperHalfPoint(z.real(), z.imag()))) / std::abs(g));
      }
  const bool pass = worst <= 1e-8 && worst_sc <= 1e-8;
  return {"schur_identity", pass, "max rel err resolvent/schur " + sci(worst) + ", via X " + sci(worst_sc)};
}

SelftestCheck check_interlacing() {
  std::size_t bad = 0, total = 0;
  for (std::size_t k = 0; k < 20; ++k) {
    const HermitianMatrix h = sample_realization(spec_for(30, EntryLaw::Kind::gaussian, 2), k);
    const Eigen::VectorXd mu = eigenvalues(h);
    for (std::size_t j = 0; j < h.dim(); ++j, ++total) {
      const Eigen::VectorXd lam = eigenvalues(principal_minor(h, j));
      if (!interlacing_check(span_of(mu), span_of(lam))) ++bad;
    }
  }
  return {"cauchy_interlacing", bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " minors interlace"};
}

SelftestCheck check_traces() {
  double worst = 0.0;
  std::size_t k = 0;
  for (std::size_t n : {10u, 50u, 200u})
    for (int rep = 0; rep < 3; ++rep, ++k) {
      const HermitianMatrix h = sample_realization(spec_for(n, EntryLaw::Kind::gaussian, 3), k);
      const Eigen::VectorXd mu = eigenvalues(h);
      const double scale = std::sqrt(h.trace_sq() * static_cast<double>(n));
      worst = std::max(worst, std::abs(mu.sum() - h.trace()) / std::max(std::abs(h.trace()), scale));
      worst = std::max(worst, std::abs(mu.squaredNorm() - h.trace_sq()) / h.trace_sq());
    }
  return {"trace_identities", worst <= 1e-10, "max rel err " + sci(worst)};
}

SelftestCheck check_fixed_point() {
  double worst = 0.0;
  bool upper = true;
  for (int i = 0; i < 40; ++i)
    for (int k = 0; k < 25; ++k) {
      const double e = -3.0 + 6.0 * (i + 0.5) / 40.0;
      const double eta = std::pow(10.0, -3.0 + 4.0 * k / 24.0);
      const UpperHalfPoint z(e, eta);
      const auto m = m_sc(z);
      upper = upper && m.imag() > 0.0;
      worst = std::max(worst, fixed_point_residual(m, z));
    }
  return {"msc_fixed_point", upper && worst <= 1e-12, "max residual on 1000 points " + sci(worst)};
}

SelftestCheck check_density(const std::function<double(double)>& rho) {
  using G = boost::math::quadrature::gauss<double, 30>;
  // E = 2 sin(theta) removes the square-root endpoints.
  const double mass = G::integrate([&](double th) { return rho(2.0 * std::sin(th)) * 2.0 * std::cos(th); },
                                   -std::numbers::pi / 2, std::numbers::pi / 2);
  double worst = 0.0;
  for (double e : {0.0, 0.5, -0.5, 1.0, -1.0, 1.5, -1.5})
    worst = std::max(worst, std::abs(std::numbers::pi * rho(e) - m_sc(UpperHalfPoint(e, 1e-8)).imag()));
  const bool pass = std::abs(mass - 1.0) <= 1e-8 && worst <= 1e-4;
  return {"semicircle_normalization", pass, "mass " + sci(mass) + ", max |pi rho - Im m_sc| " + sci(worst)};
}

SelftestCheck check_qt_heat() {
  double worst = 0.0;
  for (double t : {0.1, 0.5, 2.0})
    for (double x : {-1.3, 0.0, 0.4, 2.2})
      for (double y : {-0.5, 0.7}) {
        const double got = qt_kernel({x}, {y}, t);
        const double want = std::exp(-(x - y) * (x - y) / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
        worst = std::max(worst, std::abs(got - want) / want);
      }
  return {"qt_heat_kernel_n1", worst <= 1e-12, "max rel err " + sci(worst)};
}

SelftestCheck check_solvers() {
  const HermitianMatrix h = sample_realization(spec_for(40, EntryLaw::Kind::gaussian, 4), 0);
  const Eigen::VectorXd a = eigenvalues(h, EigenMethod::lapack);
  const Eigen::VectorXd b = eigenvalues(h, EigenMethod::householder_ql);
  const double d = (a - b).cwiseAbs().maxCoeff();
  return {"eigensolver_agreement", d <= 1e-10, "max |lapack - reference| " + sci(d)};
}

}  // namespace

bool SelftestReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.pass; });
}

std::string SelftestReport::text() const {
  std::ostringstream os;
  for (const auto& c : checks) os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  os << (all_pass() ? "selftest passed" : "selftest FAILED") << '\n';
  return os.str();
}

SelftestReport selftest(const SelftestOptions& options) {
  const std::function<double(double)> rho = options.rho_override ? options.rho_override : [](double e) { return rho_sc(e); };
  SelftestReport r;
  r.checks.push_back(check_schur());
  r.checks.push_back(check_interlacing());
  r.checks.push_back(check_traces());
  r.checks.push_back(check_fixed_point());
  r.checks.push_back(check_density(rho));
  r.checks.push_back(check_qt_heat());
  r.checks.push_back(check_solvers());
  return r;
}

}  // namespace wigner::cli
