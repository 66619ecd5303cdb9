#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include "wigner/hermitian_matrix.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

struct UpperHalfPoint {
  double e = 0.0;
  double eta = 1.0;

  UpperHalfPoint() = default;
  // Throws ArgumentError unless eta > 0.
  UpperHalfPoint(double e, double eta);
  std::complex<double> z() const { return {e, eta}; }
};

std::complex<double> m_N(std::span<const double> eigs, const UpperHalfPoint& z);
// Root of m^2 + z m + 1 = 0 with Im m > 0.
std::complex<double> m_sc(const UpperHalfPoint& z);
std::complex<double> m_sc(std::complex<double> z);
// |m + 1/(z + m)|.
double fixed_point_residual(std::complex<double> m, const UpperHalfPoint& z);

// The three summands of X^{(j)}:
//   hjj_term    = -h_jj
//   minor_drift = ((N-1)/N) m^{(j)}_{N-1}(z) - m_N(z)
//   y           = (1/N) sum_a (xi_a - 1)/(lambda_a - z)
// so that (H - z)^{-1}(j, j) = 1/(-z - m_N(z) - X).
struct SelfConsistencyTerms {
  std::complex<double> hjj_term;
  std::complex<double> minor_drift;
  std::complex<double> y;
  std::complex<double> m_n;

  std::complex<double> x() const { return hjj_term + minor_drift + y; }
  std::complex<double> resolvent(const UpperHalfPoint& z) const { return -1.0 / (z.z() + m_n + x()); }
};
SelfConsistencyTerms self_consistency_terms(const HermitianMatrix& h, const UpperHalfPoint& z, std::size_t j);
// Same, reusing a full spectrum of H and the minor data.
SelfConsistencyTerms self_consistency_terms(std::span<const double> eigs_h, const MinorSpectrum& ms,
                                            const UpperHalfPoint& z);

// mu_a <= lambda_a <= mu_{a+1} for all a, with slack tol.
bool interlacing_check(std::span<const double> eigs_h, std::span<const double> eigs_b, double tol = 1e-10);

}  // namespace wigner
