#include "wigner/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wigner/error.hpp"

namespace wigner {

double GridFunction::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * dx;
}

double GridFunction::outer_mass() const {
  const std::size_t n = values.size();
  const std::size_t edge = std::max<std::size_t>(1, n / 20);
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(edge, n); ++i) {
    s += std::abs(values[i]);
    s += std::abs(values[n - 1 - i]);
  }
  return s * dx;
}

double GridFunction::l1_distance(const GridFunction& other) const {
  if (other.size() != size()) throw ArgumentError("grid size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += std::abs(values[i] - other.values[i]);
  return s * dx;
}

double GridFunction::sup_distance(const GridFunction& other) const {
  if (other.size() != size()) throw ArgumentError("grid size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s = std::max(s, std::abs(values[i] - other.values[i]));
  return s;
}

DensityGrid::DensityGrid(double x0, double dx, std::vector<double> values) {
  if (!(dx > 0.0)) throw ArgumentError("density grid spacing must be positive");
  if (values.size() < 2) throw ArgumentError("density grid needs at least two points");
  double mass = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("density grid values must be finite and nonnegative");
    mass += v;
  }
  mass *= dx;
  if (!(mass > 0.0)) throw ArgumentError("density grid has zero mass");
  for (double& v : values) v /= mass;
  g_ = GridFunction{x0, dx, std::move(values)};
}

DensityGrid DensityGrid::from_function(double x0, double dx, std::size_t n, double (*f)(double)) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(x0 + dx * static_cast<double>(i));
  return DensityGrid(x0, dx, std::move(v));
}

DensityGrid DensityGrid::gaussian(double mean, double variance, double half_width, std::size_t n) {
  const double dx = 2.0 * half_width / static_cast<double>(n);
  const double x0 = mean - half_width;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x0 + dx * static_cast<double>(i) - mean;
    v[i] = std::exp(-x * x / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
  }
  return DensityGrid(x0, dx, std::move(v));
}

DensityGrid DensityGrid::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open density grid file: " + path);
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x, v;
    if (!(ls >> x >> v)) {
      if (xs.empty()) continue;  // header line
      throw ConfigError("malformed line in density grid file: " + line);
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 2) throw ConfigError("density grid file needs at least two rows: " + path);
  const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs(xs[i] - xs[i - 1] - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
      throw ConfigError("density grid file is not uniformly spaced: " + path);
  try {
    return DensityGrid(xs.front(), dx, std::move(vs));
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("invalid density grid file: ") + e.what());
  }
}

}  // namespace wigner
