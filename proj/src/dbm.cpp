#include "wigner/dbm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "wigner/ensemble.hpp"
#include "wigner/error.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

DbmPath dbm_path(const HermitianMatrix& h0, const std::vector<double>& times, RngStream& stream) {
  if (times.empty() || times.front() != 0.0) throw ArgumentError("dbm_path: times must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ArgumentError("dbm_path: times must be strictly increasing");
  DbmPath path;
  path.times = times;
  HermitianMatrix h = h0;
  path.spectra.push_back(eigenvalues(h));
  for (std::size_t i = 1; i < times.size(); ++i) {
    h.add_scaled(sample_gue(h.dim(), stream), std::sqrt(times[i] - times[i - 1]));
    path.spectra.push_back(eigenvalues(h));
  }
  return path;
}

namespace {

// log|Delta(v)| and its sign, Delta(v) = prod_{i<j} (v_j - v_i).
double log_vandermonde(const std::vector<double>& v, int& sign) {
  double s = 0.0;
  sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double d = v[j] - v[i];
      if (d == 0.0) {
        sign = 0;
        return -std::numeric_limits<double>::infinity();
      }
      if (d < 0.0) sign = -sign;
      s += std::log(std::abs(d));
    }
  return s;
}

double qt_signed_log(const std::vector<double>& x, const std::vector<double>& y, double t, int& sign) {
  const std::size_t n = x.size();
  if (y.size() != n || n == 0) throw ArgumentError("qt_kernel: x and y must have the same positive length");
  if (!(t > 0.0)) throw ArgumentError("qt_kernel needs t > 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(y[i] - y[j]) <= 1e-6)
        throw DegeneracyError("qt_kernel: y has two entries within 1e-6; perturb them apart");
  const double nn = static_cast<double>(n);
  int sx, sy;
  const double lx = log_vandermonde(x, sx);
  const double ly = log_vandermonde(y, sy);
  if (sx == 0) {
    sign = 0;
    return -std::numeric_limits<double>::infinity();
  }
  // Rows are scaled by their largest entry before the determinant.
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  double shift = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double rmax = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) rmax = std::max(rmax, -nn * (x[j] - y[k]) * (x[j] - y[k]) / (2.0 * t));
    for (std::size_t k = 0; k < n; ++k)
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          std::exp(-nn * (x[j] - y[k]) * (x[j] - y[k]) / (2.0 * t) - rmax);
    shift += rmax;
  }
  const double det = n == 1 ? m(0, 0) : m.partialPivLu().determinant();
  if (det == 0.0) {
    sign = 0;
    return -std::numeric_limits<double>::infinity();
  }
  sign = sx * sy * (det > 0.0 ? 1 : -1);
  return 0.5 * nn * std::log(nn / (2.0 * std::numbers::pi * t)) + lx - ly + shift + std::log(std::abs(det));
}

}  // namespace

double qt_log_kernel(const std::vector<double>& x, const std::vector<double>& y, double t) {
  int sign;
  const double l = qt_signed_log(x, y, t, sign);
  if (sign <= 0) return -std::numeric_limits<double>::infinity();
  return l;
}

double qt_kernel(const std::vector<double>& x, const std::vector<double>& y, double t) {
  int sign;
  const double l = qt_signed_log(x, y, t, sign);
  if (sign == 0) return 0.0;
  // Negative values only arise from rounding in the determinant.
  return sign > 0 ? std::exp(l) : 0.0;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Applies the Fourier multiplier mult(k) to values placed at offset pad in a
// zero-padded buffer of length len. Returns the full padded result.
template <class Mult>
std::vector<double> apply_multiplier(const std::vector<double>& values, std::size_t pad, std::size_t len, double dx,
                                     Mult&& mult, std::vector<double>* spectrum_mag = nullptr,
                                     double noise_floor = 0.0) {
  double* in = fftw_alloc_real(len);
  fftw_complex* out = fftw_alloc_complex(len / 2 + 1);
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(len), in, out, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(static_cast<int>(len), out, in, FFTW_ESTIMATE);
  }
  std::fill(in, in + len, 0.0);
  std::copy(values.begin(), values.end(), in + pad);
  fftw_execute(fwd);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(len) * dx);
  if (spectrum_mag) spectrum_mag->resize(len / 2 + 1);
  double peak = 0.0;
  for (std::size_t m = 0; m <= len / 2; ++m) peak = std::max(peak, std::hypot(out[m][0], out[m][1]));
  for (std::size_t m = 0; m <= len / 2; ++m) {
    const double k = dk * static_cast<double>(m);
    // Modes at rounding level would otherwise be amplified by large multipliers.
    const double f = std::hypot(out[m][0], out[m][1]) <= noise_floor * peak ? 0.0 : mult(k);
    if (spectrum_mag) (*spectrum_mag)[m] = std::hypot(out[m][0], out[m][1]) * std::abs(f);
    out[m][0] *= f;
    out[m][1] *= f;
  }
  fftw_execute(bwd);
  std::vector<double> res(in, in + len);
  for (double& v : res) v /= static_cast<double>(len);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(in);
  fftw_free(out);
  return res;
}

void check_inside(const GridFunction& g, const char* what) {
  const double total = [&] {
    double s = 0.0;
    for (double v : g.values) s += std::abs(v);
    return s * g.dx;
  }();
  if (g.outer_mass() > 1e-8 * std::max(1.0, total))
    throw DomainError(std::string(what) + ": mass within the outer 5% of the grid exceeds 1e-8; widen the grid");
}

}  // namespace

GridFunction heat_semigroup(const GridFunction& h, double t) {
  if (!(t > 0.0)) throw ArgumentError("heat_semigroup needs t > 0");
  if (h.size() < 2) throw ArgumentError("heat_semigroup needs a grid of at least two points");
  check_inside(h, "heat_semigroup input");
  const std::size_t n = h.size();
  const auto spread = static_cast<std::size_t>(std::ceil(12.0 * std::sqrt(2.0 * t) / h.dx));
  const std::size_t len = next_pow2(n + 2 * std::max<std::size_t>(spread, n / 4) + 2);
  const std::size_t pad = (len - n) / 2;
  const auto full = apply_multiplier(h.values, pad, len, h.dx, [t](double k) { return std::exp(-k * k * t); });
  GridFunction out{h.x0, h.dx, std::vector<double>(full.begin() + static_cast<std::ptrdiff_t>(pad),
                                                   full.begin() + static_cast<std::ptrdiff_t>(pad + n))};
  double escaped = 0.0;
  for (std::size_t i = 0; i < len; ++i)
    if (i < pad || i >= pad + n) escaped += std::abs(full[i]);
  if (escaped * h.dx > 1e-8) throw DomainError("heat_semigroup: mass escaped the grid; widen the grid");
  check_inside(out, "heat_semigroup output");
  return out;
}

DensityGrid heat_semigroup(const DensityGrid& h, double t) {
  GridFunction g = heat_semigroup(h.grid(), t);
  for (double& v : g.values) v = std::max(v, 0.0);
  return DensityGrid(g.x0, g.dx, std::move(g.values));
}

GridFunction compensated_density(const GridFunction& h, double t, unsigned n) {
  if (!(t >= 0.0)) throw ArgumentError("compensated_density needs t >= 0");
  if (n == 0 || t == 0.0) return h;
  const std::size_t sz = h.size();
  const std::size_t len = next_pow2(sz + sz / 2);
  const std::size_t pad = (len - sz) / 2;
  auto mult = [t, n](double k) {
    const double x = t * k * k;
    double term = 1.0, sum = 1.0;
    for (unsigned j = 1; j <= n; ++j) {
      term *= x / j;
      sum += term;
    }
    return sum;
  };
  std::vector<double> mag;
  const auto full = apply_multiplier(h.values, pad, len, h.dx, mult, &mag, 1e-14);
  // Require the upper half of the resolved band to carry a negligible share of
  // the corrected spectrum; otherwise L^n h is not grid-resolvable.
  double total = 0.0, high = 0.0;
  for (std::size_t m = 0; m < mag.size(); ++m) {
    total += mag[m] * mag[m];
    if (m >= mag.size() / 2) high += mag[m] * mag[m];
  }
  if (!(total > 0.0) || high > 1e-12 * total)
    throw ResolutionError("compensated_density: L^n h is not resolved on this grid (refine it or smooth h)");
  GridFunction out{h.x0, h.dx, std::vector<double>(full.begin() + static_cast<std::ptrdiff_t>(pad),
                                                   full.begin() + static_cast<std::ptrdiff_t>(pad + sz))};
  return out;
}

GridFunction compensated_density(const DensityGrid& h, double t, unsigned n) {
  return compensated_density(h.grid(), t, n);
}

}  // namespace wigner
