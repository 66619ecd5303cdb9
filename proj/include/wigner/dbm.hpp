#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "wigner/grid.hpp"
#include "wigner/hermitian_matrix.hpp"
#include "wigner/rng.hpp"

namespace wigner {

struct DbmPath {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> spectra;  // sorted eigenvalues at each time
};

// H(t_{k+1}) = H(t_k) + sqrt(t_{k+1} - t_k) V_k with independent GUE draws V_k.
// times must start at 0 and increase strictly.
DbmPath dbm_path(const HermitianMatrix& h0, const std::vector<double>& times, RngStream& stream);

// Transition density of the eigenvalues of diag(y) + sqrt(t) GUE on ordered tuples:
//   (N/(2 pi t))^{N/2} Delta(x)/Delta(y) det(exp(-N (x_j - y_k)^2 / 2t)).
// Throws DegeneracyError if two y's are closer than 1e-6; perturb them apart.
double qt_kernel(const std::vector<double>& x, const std::vector<double>& y, double t);
// log of qt_kernel; -inf where it vanishes.
double qt_log_kernel(const std::vector<double>& x, const std::vector<double>& y, double t);

// Solution at time t of u_t = u'' (convolution with a Gaussian of variance 2t),
// computed with FFTs on a zero-padded grid. Throws DomainError if mass reaches
// the outer 5% of the grid.
GridFunction heat_semigroup(const GridFunction& h, double t);
DensityGrid heat_semigroup(const DensityGrid& h, double t);

// sum_{k=0}^{n} (-t)^k L^k h / k!, L = d^2/dx^2, by spectral differentiation.
// Throws ResolutionError if the high-frequency content is too large for L^n.
GridFunction compensated_density(const GridFunction& h, double t, unsigned n);
GridFunction compensated_density(const DensityGrid& h, double t, unsigned n);

}  // namespace wigner
