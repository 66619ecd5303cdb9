#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wigner {

// Real function sampled at x0 + i*dx. May be signed.
struct GridFunction {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
  double integral() const;
  // Mass carried by the first and last 5% of grid points.
  double outer_mass() const;
  double l1_distance(const GridFunction& other) const;
  double sup_distance(const GridFunction& other) const;
};

// Nonnegative density on a uniform grid, normalized so that sum(values)*dx = 1.
class DensityGrid {
public:
  DensityGrid() = default;
  // Normalizes the values. Throws ArgumentError for negative or all-zero input.
  DensityGrid(double x0, double dx, std::vector<double> values);

  static DensityGrid from_function(double x0, double dx, std::size_t n, double (*f)(double));
  static DensityGrid gaussian(double mean, double variance, double half_width, std::size_t n);
  // Two-column text file "x,value" (or whitespace separated) with uniform spacing.
  static DensityGrid load(const std::string& path);

  const GridFunction& grid() const { return g_; }
  double x0() const { return g_.x0; }
  double dx() const { return g_.dx; }
  std::size_t size() const { return g_.size(); }
  const std::vector<double>& values() const { return g_.values; }
  double x(std::size_t i) const { return g_.x(i); }

private:
  GridFunction g_;
};

}  // namespace wigner
