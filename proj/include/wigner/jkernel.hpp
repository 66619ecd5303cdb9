#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace wigner {

// Density of H0 + sqrt(t) V for H0 with semicircle spectrum and V GUE: the free
// convolution of semicircles of variance 1 and t, rho_sc(E/sqrt(1+t))/sqrt(1+t).
double rho_t(double e, double t);

struct KernelQuery {
  double u = 0.0;
  double v = 0.0;
  double e = 0.0;  // reference energy, used for contour defaults
  double t = 0.5;
  std::vector<double> y;  // sorted initial eigenvalues
  double varrho = 0.0;    // local density scale; 0 means rho_t(e, t)

  std::size_t n() const { return y.size(); }
  double rho() const;
  double tau() const { return static_cast<double>(n()) * rho() * (v - u); }
  void validate() const;
};

struct ContourParams {
  double delta = 0.0;  // offset of the two horizontal lines of gamma
  double kappa = 0.0;  // abscissa of the vertical line Gamma
  double r = 0.0;      // free shift in h_N and g_N
  double s = 0.0;      // truncation half-length of every segment
  std::size_t nodes = 512;  // Gauss-Legendre nodes per segment, multiple of 16, >= 64
  double tolerance = 1e-3;  // largest acceptable truncation estimate

  void validate(const KernelQuery& q) const;
};

// r = E, kappa = E (moved off any y_j), delta = max(1/N, t/4), S = 3(1 + sqrt t).
ContourParams default_contour(const KernelQuery& q);

struct ContourOverrides {
  std::optional<double> delta, kappa, r, s, tolerance;
  std::optional<std::size_t> nodes;
  void apply(ContourParams& p) const;
};

// f_N(z) = (z^2 - 2uz)/2t + (1/N) sum_j log(z - y_j), principal branch.
std::complex<double> f_N(std::complex<double> z, const KernelQuery& q);

// h_N(w) g_N(z, w) exp(N(f_N(w) - f_N(z))). The factor 1/(w - r) of g_N is
// combined with h_N, so w = r is allowed.
std::complex<double> integrand(std::complex<double> z, std::complex<double> w, const KernelQuery& q,
                               const ContourParams& params);

struct KernelValue {
  // The double contour integral as written, N int int h g exp(N(f(w) - f(z))).
  // It depends on r through the real factor exp(N (v - u) r / t).
  std::complex<double> raw;
  // raw * exp(-N (v - u) r / t) = K(u, v) / (N varrho), independent of r.
  std::complex<double> value;
  double error_estimate = 0.0;  // truncation + refinement + rounding, in units of value
  double truncation = 0.0;
  double refinement = 0.0;
};

// Separable evaluation: the integrand is a sum of products of one-variable
// functions, so the double integral costs O(N * nodes).
// Throws AccuracyError if the truncation estimate exceeds params.tolerance.
KernelValue K_tN(const KernelQuery& q, const ContourParams& params);
KernelValue K_tN(const KernelQuery& q);

// Direct tensor-product quadrature of integrand(). O(nodes^2 * N); for checks at small N.
KernelValue K_tN_double_quadrature(const KernelQuery& q, const ContourParams& params);

struct SineLimitRow {
  double x1 = 0.0;
  double x2 = 0.0;
  std::complex<double> k12;  // K(u, v)/(N varrho), u = E + x1/(N varrho), v = E + x2/(N varrho)
  std::complex<double> k21;
  // sgn(Re k12) sqrt|k12 k21|: invariant under K(u,v) -> e^{g(u) - g(v)} K(u,v),
  // the freedom left by the determinantal structure.
  double normalized = 0.0;
  double sinc = 0.0;
  double abs_err = 0.0;
  double error_estimate = 0.0;
};

struct SineLimitTemplate {
  double t = 0.5;
  std::vector<double> y;
  double varrho = 0.0;  // 0 means rho_t(E, t)
};

// One row per (x1, x2) pair, contours from default_contour at E plus overrides.
std::vector<SineLimitRow> sine_limit_report(double e, const std::vector<std::pair<double, double>>& x_pairs,
                                            const SineLimitTemplate& tpl, const ContourOverrides& overrides = {},
                                            int workers = 1);

}  // namespace wigner
