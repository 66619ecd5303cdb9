#include "wigner/jkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "wigner/error.hpp"
#include "wigner/localstats.hpp"
#include "wigner/parallel.hpp"
#include "wigner/semicircle.hpp"

namespace wigner {

using cd = std::complex<double>;

double rho_t(double e, double t) {
  if (t < 0.0) throw ArgumentError("rho_t needs t >= 0");
  const double s = std::sqrt(1.0 + t);
  return rho_sc(e / s) / s;
}

double KernelQuery::rho() const { return varrho > 0.0 ? varrho : rho_t(e, t); }

void KernelQuery::validate() const {
  if (!(t > 0.0)) throw ArgumentError("kernel query needs t > 0");
  if (y.empty()) throw ArgumentError("kernel query needs at least one y");
  if (!std::is_sorted(y.begin(), y.end())) throw ArgumentError("kernel query needs sorted y");
  if (!(rho() > 0.0)) throw ArgumentError("kernel query needs varrho > 0 (E outside the support of rho_t?)");
  const double bound = 2.0 * (1.0 + t) + 1.0;
  for (double yj : y)
    if (std::abs(yj) > bound) throw ArgumentError("kernel query: |y_j| exceeds 2(1+t)+1");
}

void ContourParams::validate(const KernelQuery& q) const {
  if (!(delta > 0.0)) throw ContourError("contour offset delta must be positive");
  if (!(s > 0.0)) throw ContourError("truncation length S must be positive");
  if (nodes < 64 || nodes % 16 != 0) throw ContourError("nodes must be a multiple of 16 and >= 64");
  for (double yj : q.y)
    if (std::abs(kappa - yj) < 1e-8) throw ContourError("vertical contour passes within 1e-8 of a pole y_j");
}

ContourParams default_contour(const KernelQuery& q) {
  ContourParams p;
  const double n = static_cast<double>(q.n());
  p.r = q.e;
  p.kappa = q.e;
  // The w-integrand is entire, so moving Gamma sideways changes nothing but
  // keeps 1/(w - y_j) well conditioned.
  for (int it = 0; it < 8; ++it) {
    double gap = std::numeric_limits<double>::infinity();
    for (double yj : q.y) gap = std::min(gap, std::abs(p.kappa - yj));
    if (gap >= 1e-6) break;
    p.kappa += 1e-5;
  }
  p.delta = std::max(1.0 / n, q.t / 4.0);
  p.s = 3.0 * (1.0 + std::sqrt(q.t));
  return p;
}

void ContourOverrides::apply(ContourParams& p) const {
  if (delta) p.delta = *delta;
  if (kappa) p.kappa = *kappa;
  if (r) p.r = *r;
  if (s) p.s = *s;
  if (tolerance) p.tolerance = *tolerance;
  if (nodes) p.nodes = *nodes;
}

cd f_N(cd z, const KernelQuery& q) {
  cd s = 0.0;
  for (double yj : q.y) s += std::log(z - yj);
  return (z * z - 2.0 * q.u * z) / (2.0 * q.t) + s / static_cast<double>(q.n());
}

namespace {

// (e^x - 1)/x without cancellation.
cd phi1(cd x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0));
  const double a = x.real(), b = x.imag();
  const double sh = std::sin(0.5 * b);
  const cd em1(std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b));
  return em1 / x;
}

// h_N(w)/(w - r).
cd h_over(cd w, const KernelQuery& q, const ContourParams& p) {
  const double tr = q.t * q.rho();
  const cd x = -q.tau() * (w - p.r) / tr;
  return -phi1(x) / tr;
}

void check_poles(cd w, const KernelQuery& q) {
  for (double yj : q.y)
    if (std::abs(w - yj) < 1e-10) throw ContourError("contour node within 1e-10 of a pole y_j");
}

struct Nodes {
  std::vector<double> s;
  std::vector<double> w;
};

Nodes composite_gauss(double a, double b, std::size_t panels) {
  using G = boost::math::quadrature::gauss<double, 16>;
  const auto& abs = G::abscissa();
  const auto& wts = G::weights();
  Nodes out;
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = a + h * (static_cast<double>(p) + 0.5);
    // Boost stores the 8 nonnegative abscissae; mirror them.
    for (std::size_t i = abs.size(); i-- > 0;) {
      if (abs[i] == 0.0) continue;
      out.s.push_back(c - 0.5 * h * abs[i]);
      out.w.push_back(0.5 * h * wts[i]);
    }
    for (std::size_t i = 0; i < abs.size(); ++i) {
      out.s.push_back(c + 0.5 * h * abs[i]);
      out.w.push_back(0.5 * h * wts[i]);
    }
  }
  return out;
}

struct Contours {
  std::vector<cd> z, dz, w, dw;
};

Contours make_contours(const KernelQuery& q, const ContourParams& p, std::size_t nodes) {
  const Nodes g = composite_gauss(-p.s, p.s, nodes / 16);
  Contours c;
  for (std::size_t i = 0; i < g.s.size(); ++i) {
    c.z.emplace_back(g.s[i] + q.u, -p.delta);
    c.dz.emplace_back(g.w[i], 0.0);
  }
  for (std::size_t i = 0; i < g.s.size(); ++i) {
    c.z.emplace_back(-g.s[i] + q.u, p.delta);
    c.dz.emplace_back(-g.w[i], 0.0);
  }
  for (std::size_t i = 0; i < g.s.size(); ++i) {
    c.w.emplace_back(p.kappa, g.s[i]);
    c.dw.emplace_back(0.0, g.w[i]);
  }
  return c;
}

// -N f_N(z) and N f_N(w).
cd log_z_factor(cd z, const KernelQuery& q) {
  const double a = static_cast<double>(q.n()) / q.t;
  cd s = 0.0;
  for (double yj : q.y) s += std::log(z - yj);
  return -a * (z * z / 2.0 - q.u * z) - s;
}

cd log_w_factor(cd w, const KernelQuery& q) {
  const double a = static_cast<double>(q.n()) / q.t;
  cd s = 0.0;
  for (double yj : q.y) s += std::log(w - yj);
  return a * (w * w / 2.0 - q.u * w) + s;
}

struct Separable {
  cd raw_scaled;      // raw / exp(shift)
  double shift = 0.0;  // log scale
  double abs_scaled = 0.0;  // bound on the sum of absolute contributions, same scale
  double tail_scaled = 0.0;
};

Separable separable_sum(const KernelQuery& q, const ContourParams& p, std::size_t nodes) {
  const Contours c = make_contours(q, p, nodes);
  const std::size_t n = q.n();
  const double nn = static_cast<double>(n);
  const double a = nn / q.t;

  std::vector<cd> lz(c.z.size()), lw(c.w.size());
  double cz = -std::numeric_limits<double>::infinity(), cw = cz;
  for (std::size_t i = 0; i < c.z.size(); ++i) {
    lz[i] = log_z_factor(c.z[i], q);
    cz = std::max(cz, lz[i].real());
  }
  for (std::size_t i = 0; i < c.w.size(); ++i) {
    check_poles(c.w[i], q);
    lw[i] = log_w_factor(c.w[i], q);
    cw = std::max(cw, lw[i].real());
  }

  cd a0 = 0.0, a1 = 0.0, b0 = 0.0, b1 = 0.0;
  std::vector<cd> a2(n, 0.0), b2(n, 0.0);
  double wabs = 0.0, zabs = 0.0;
  double inv_w_max = 0.0;
  for (std::size_t i = 0; i < c.w.size(); ++i) {
    const cd w = c.w[i];
    const cd ew = std::exp(lw[i] - cw) * c.dw[i];
    const cd hw = h_over(w, q, p) * ew;
    a0 += hw;
    a1 += hw * (w - p.r);
    double inv = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const cd d = w - q.y[j];
      a2[j] += hw / d;
      inv += std::abs(q.y[j] - p.r) / std::abs(d);
    }
    inv /= nn;
    inv_w_max = std::max(inv_w_max, inv);
    wabs += std::abs(hw) * (1.0 + std::abs(w - p.r) + inv);
  }
  for (std::size_t i = 0; i < c.z.size(); ++i) {
    const cd z = c.z[i];
    const cd ez = std::exp(lz[i] - cz) * c.dz[i];
    b0 += ez;
    b1 += (z - q.u) * ez;
    for (std::size_t j = 0; j < n; ++j) b2[j] += ez / (z - q.y[j]);
    zabs += std::abs(ez) * (1.0 + std::abs(z - q.u) + 1.0 / p.delta);
  }
  cd cross = 0.0;
  for (std::size_t j = 0; j < n; ++j) cross += (q.y[j] - p.r) * a2[j] * b2[j];
  const cd pref = nn / ((2.0 * std::numbers::pi * cd(0, 1)) * (2.0 * std::numbers::pi * cd(0, 1)));
  const double apref = nn / (4.0 * std::numbers::pi * std::numbers::pi) * (1.0 + 1.0 / q.t);

  Separable out;
  out.shift = cz + cw;
  out.raw_scaled = pref * ((a1 * b0 + a0 * b1) / q.t - cross / nn);
  out.abs_scaled = apref * wabs * zabs;

  // Tails beyond |s| = S: the integrands decay like Gaussians, so the tail is
  // about the endpoint magnitude divided by the log-derivative there.
  const double rate_w = a * p.s - nn / p.s;
  const double rate_z = a * p.s;
  double tw = 0.0, tz = 0.0;
  for (double sgn : {-1.0, 1.0}) {
    const cd w(p.kappa, sgn * p.s);
    const double mag = std::exp(log_w_factor(w, q).real() - cw) * std::abs(h_over(w, q, p));
    tw = std::max(tw, mag * (1.0 + std::abs(w - p.r) + inv_w_max));
    for (double off : {-p.delta, p.delta}) {
      const cd z(q.u + sgn * p.s, off);
      tz = std::max(tz, std::exp(log_z_factor(z, q).real() - cz) * (1.0 + std::abs(z - q.u) + 1.0 / p.delta));
    }
  }
  if (rate_w <= 0.0 || rate_z <= 0.0) {
    out.tail_scaled = std::numeric_limits<double>::infinity();
  } else {
    out.tail_scaled = apref * (2.0 * tw / rate_w * zabs + 4.0 * tz / rate_z * wabs);
  }
  return out;
}

}  // namespace

cd integrand(cd z, cd w, const KernelQuery& q, const ContourParams& params) {
  check_poles(w, q);
  check_poles(z, q);
  const double nn = static_cast<double>(q.n());
  cd cross = 0.0;
  for (double yj : q.y) cross += (yj - params.r) / ((w - yj) * (z - yj));
  const cd hg = h_over(w, q, params) * ((w - params.r + z - q.u) / q.t - cross / nn);
  return hg * std::exp(log_w_factor(w, q) + log_z_factor(z, q));
}

KernelValue K_tN(const KernelQuery& q, const ContourParams& params) {
  q.validate();
  params.validate(q);
  const Separable full = separable_sum(q, params, params.nodes);
  const Separable half = separable_sum(q, params, params.nodes / 2);
  const double nn = static_cast<double>(q.n());
  const double gauge = -nn * (q.v - q.u) * params.r / q.t;

  KernelValue kv;
  kv.raw = full.raw_scaled * std::exp(full.shift);
  const double scale = std::exp(full.shift + gauge);
  kv.value = full.raw_scaled * scale;
  const cd half_value = half.raw_scaled * std::exp(half.shift + gauge);
  kv.truncation = full.tail_scaled * scale;
kv.refinement = std::abs(kv.value - half_value);
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * full.abs_scaled * scale;
  kv.error_estimate = kv.truncation + kv.refinement + rounding;
  if (!std::isfinite(kv.value.real()) || !std::isfinite(kv.value.imag()))
    throw AccuracyError("kernel value overflowed; shrink S or move the contours");
  // Refinement is reported but not enforced: |full - half| mostly measures the coarser rule.
  if (!(kv.truncation <= params.tolerance))
    throw AccuracyError("kernel truncation estimate " + std::to_string(kv.truncation) + " exceeds tolerance " +
                        std::to_string(params.tolerance) + "; increase S or nodes");
  return kv;
}

KernelValue K_tN(const KernelQuery& q) { return K_tN(q, default_contour(q)); }

KernelValue K_tN_double_quadrature(const KernelQuery& q, const ContourParams& params) {
  q.validate();
  params.validate(q);
  const Contours c = make_contours(q, params, params.nodes);
  cd sum = 0.0;
  for (std::size_t i = 0; i < c.z.size(); ++i) {
    cd inner = 0.0;
    for (std::size_t k = 0; k < c.w.size(); ++k) inner += integrand(c.z[i], c.w[k], q, params) * c.dw[k];
    sum += inner * c.dz[i];
  }
  const double nn = static_cast<double>(q.n());
  const cd pref = nn / ((2.0 * std::numbers::pi * cd(0, 1)) * (2.0 * std::numbers::pi * cd(0, 1)));
  KernelValue kv;
  kv.raw = pref * sum;
  kv.value = kv.raw * std::exp(-nn * (q.v - q.u) * params.r / q.t);
  return kv;
}

std::vector<SineLimitRow> sine_limit_report(double e, const std::vector<std::pair<double, double>>& x_pairs,
                                            const SineLimitTemplate& tpl, const ContourOverrides& overrides,
                                            int workers) {
  if (!(tpl.t > 0.0)) throw ArgumentError("sine_limit_report needs t > 0");
  if (std::abs(e) >= 2.0 * std::sqrt(1.0 + tpl.t)) throw ArgumentError("sine_limit_report needs E inside the support of rho_t");
  KernelQuery base;
  base.e = e;
  base.t = tpl.t;
  base.y = tpl.y;
  base.varrho = tpl.varrho;
  const double scale = static_cast<double>(base.n()) * base.rho();
  ContourParams params = default_contour(base);
  overrides.apply(params);
  return map_realizations<SineLimitRow>(x_pairs.size(), workers, [&](std::size_t i) {
    const auto [x1, x2] = x_pairs[i];
    KernelQuery q = base;
    q.u = e + x1 / scale;
    q.v = e + x2 / scale;
    const KernelValue k12 = K_tN(q, params);
    std::swap(q.u, q.v);
    const KernelValue k21 = K_tN(q, params);
    SineLimitRow row;
    row.x1 = x1;
    row.x2 = x2;
    row.k12 = k12.value;
    row.k21 = k21.value;
    const double prod = std::abs(k12.value * k21.value);
    row.normalized = (k12.value.real() < 0.0 ? -1.0 : 1.0) * std::sqrt(prod);
    row.sinc = sinc_pi(x2 - x1);
    row.abs_err = std::abs(row.normalized - row.sinc);
    const double d12 = k12.error_estimate, d21 = k21.error_estimate;
    // |sqrt(a) - sqrt(b)| <= min(sqrt|a - b|, |a - b| / sqrt(a)).
    const double dp = std::abs(k12.value) * d21 + std::abs(k21.value) * d12 + d12 * d21;
    row.error_estimate = prod > 0.0 ? std::min(std::sqrt(dp), dp / std::sqrt(prod)) : std::sqrt(dp);
    return row;
  });
}

}  // namespace wigner
