#include "wigner/localstats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "wigner/error.hpp"
#include "wigner/parallel.hpp"
#include "wigner/semicircle.hpp"

namespace wigner {

namespace {

using Gauss16 = boost::math::quadrature::gauss<double, 16>;

template <class F>
double gl_integrate(F&& f, double a, double b, int panels) {
  double s = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) s += Gauss16::integrate(f, a + p * h, a + (p + 1) * h);
  return s;
}

}  // namespace

double sinc_pi(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - (std::numbers::pi * x) * (std::numbers::pi * x) / 6.0;
  return std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
}

double sine_two_point(double r) {
  const double s = sinc_pi(r);
  return 1.0 - s * s;
}

double sine_kernel_det(std::span<const double> points) {
  const auto k = static_cast<Eigen::Index>(points.size());
  if (k < 1) throw ArgumentError("sine_kernel_det needs at least one point");
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = i == j ? 1.0 : sinc_pi(points[i] - points[j]);
  return m.determinant();
}

std::vector<double> rescale_near(std::span<const double> eigs, double e, std::size_t n, double half_width) {
  if (std::abs(e) >= 2.0) throw ArgumentError("rescale_near needs |E| < 2");
  const double scale = static_cast<double>(n) * rho_sc(e);
  std::vector<double> out;
  for (double mu : eigs) {
    const double x = scale * (mu - e);
    if (std::abs(x) <= half_width) out.push_back(x);
  }
  return out;
}

std::size_t PairBins::count() const {
  if (!(bin_width > 0.0) || !(r_max > 0.0)) throw ArgumentError("pair bins need positive width and range");
  return static_cast<std::size_t>(std::llround(r_max / bin_width));
}

double sine_two_point_bin(double r1, double r2) {
  return gl_integrate(sine_two_point, r1, r2, 4) / (r2 - r1);
}

CorrelationEstimate two_point_from_unfolded(const std::vector<std::vector<double>>& samples, double half_width,
                                            const PairBins& bins, int workers) {
  const std::size_t nb = bins.count();
  if (2.0 * half_width <= bins.r_max) throw ArgumentError("window must be wider than the pair range");
  CorrelationEstimate est;
  est.reps = samples.size();
  est.half_width = half_width;
  est.bin_width = bins.bin_width;
  est.centers.resize(nb);
  std::vector<double> norm(nb);
  const double w2 = 2.0 * half_width;
  for (std::size_t b = 0; b < nb; ++b) {
    const double r1 = bins.bin_width * static_cast<double>(b), r2 = r1 + bins.bin_width;
    est.centers[b] = 0.5 * (r1 + r2);
    norm[b] = w2 * (r2 - r1) - 0.5 * (r2 * r2 - r1 * r1);
  }
  const auto per_rep = map_realizations<std::vector<long long>>(samples.size(), workers, [&](std::size_t k) {
    std::vector<double> x = samples[k];
    std::sort(x.begin(), x.end());
    std::vector<long long> c(nb, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        const double r = x[j] - x[i];
        if (r >= bins.r_max) break;
        const auto b = static_cast<std::size_t>(r / bins.bin_width);
        if (b < nb) ++c[b];
      }
    return c;
  });
  est.counts.assign(nb, 0);
  est.values.assign(nb, 0.0);
  est.stderr_.assign(nb, 0.0);
  bool any = false;
  for (const auto& x : samples) any = any || x.size() >= 2;
  est.empty = !any;
  if (samples.empty()) return est;
  std::vector<double> col(samples.size());
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t k = 0; k < samples.size(); ++k) {
      est.counts[b] += per_rep[k][b];
      col[k] = static_cast<double>(per_rep[k][b]) / norm[b];
    }
    const MeanEstimate m = mean_estimate(col);
    est.values[b] = m.mean;
    est.stderr_[b] = m.stderr_;
  }
  return est;
}

CorrelationEstimate two_point_estimate(const std::vector<Eigen::VectorXd>& spectra, double e, std::size_t n,
                                       const PairBins& bins, double half_width, int workers) {
  if (spectra.empty()) throw ArgumentError("two_point_estimate needs at least one spectrum");
  std::vector<std::vector<double>> unfolded(spectra.size());
  for (std::size_t k = 0; k < spectra.size(); ++k)
    unfolded[k] = rescale_near({spectra[k].data(), static_cast<std::size_t>(spectra[k].size())}, e, n, half_width);
  CorrelationEstimate est = two_point_from_unfolded(unfolded, half_width, bins, workers);
  est.e = e;
  return est;
}

double Observable::profile(std::size_t coord, double x) const {
  const double c = centers.at(coord);
  const double d = x - c;
  switch (kind) {
    case Kind::indicator:
      return std::abs(d) <= width / 2.0 ? 1.0 : 0.0;
    case Kind::gaussian:
      return std::abs(d) <= 5.0 * width ? std::exp(-d * d / (2.0 * width * width)) : 0.0;
    case Kind::triangular:
      return std::max(0.0, 1.0 - std::abs(d) / width);
  }
  return 0.0;
}

double Observable::support_half_width() const {
  switch (kind) {
    case Kind::indicator:
      return width / 2.0;
    case Kind::gaussian:
      return 5.0 * width;
    case Kind::triangular:
      return width;
  }
  return width;
}

double Observable::operator()(std::span<const double> x) const {
  if (x.size() != arity) throw ArgumentError("observable arity mismatch");
  double v = scale;
  for (std::size_t i = 0; i < arity && v != 0.0; ++i) v *= profile(i, x[i]);
  return v;
}

namespace {

void validate_observable(const Observable& o) {
  if (o.arity != 1 && o.arity != 2) throw ArgumentError("observable_statistic supports arity 1 or 2");
  if (o.centers.size() != o.arity) throw ArgumentError("observable needs one center per coordinate");
  if (!(o.width > 0.0)) throw ArgumentError("observable width must be positive");
}

double tuple_sum(std::span<const double> eigs, double e, std::size_t n, const Observable& o) {
  double reach = 0.0;
  for (double c : o.centers) reach = std::max(reach, std::abs(c));
  const std::vector<double> x = rescale_near(eigs, e, n, reach + o.support_half_width() + 1.0);
  double s = 0.0;
  if (o.arity == 1) {
    for (double xi : x) s += o.profile(0, xi);
    return o.scale * s;
  }
  std::vector<double> p0(x.size()), p1(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    p0[i] = o.profile(0, x[i]);
    p1[i] = o.profile(1, x[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (p0[i] == 0.0) continue;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i) s += p0[i] * p1[j];
  }
  return o.scale * s;
}

}  // namespace

MeanEstimate observable_statistic(const std::vector<Eigen::VectorXd>& spectra, double e0, double b,
                                  const Observable& o, std::size_t n, int workers) {
  validate_observable(o);
  if (b < 0.0) throw ArgumentError("averaging half-width must be nonnegative");
  if (std::abs(e0) + b >= 2.0) throw ArgumentError("observable_statistic needs |E0| + b < 2");
  if (spectra.empty()) throw ArgumentError("observable_statistic needs at least one spectrum");
  constexpr int kEnergies = 16;
  const auto vals = map_realizations<double>(spectra.size(), workers, [&](std::size_t k) {
    const std::span<const double> s{spectra[k].data(), static_cast<std::size_t>(spectra[k].size())};
    if (b == 0.0) return tuple_sum(s, e0, n, o);
    double acc = 0.0;
    for (int i = 0; i < kEnergies; ++i) {
      const double e = e0 - b + 2.0 * b * (i + 0.5) / kEnergies;
      acc += tuple_sum(s, e, n, o);
    }
    return acc / kEnergies;
  });
  return mean_estimate(vals);
}

double observable_sine_reference(const Observable& o) {
  validate_observable(o);
  const double h = o.support_half_width();
  if (o.arity == 1) {
    const double c = o.centers[0];
    return o.scale * gl_integrate([&](double x) { return o.profile(0, x); }, c - h, c + h, 32);
  }
  const double c0 = o.centers[0], c1 = o.centers[1];
  auto inner = [&](double x1) {
    const double p0 = o.profile(0, x1);
    if (p0 == 0.0) return 0.0;
    return p0 * gl_integrate([&](double x2) { return o.profile(1, x2) * sine_two_point(x2 - x1); }, c1 - h, c1 + h, 32);
  };
  return o.scale * gl_integrate(inner, c0 - h, c0 + h, 32);
}

}  // namespace wigner
