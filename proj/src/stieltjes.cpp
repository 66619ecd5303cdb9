#include "wigner/stieltjes.hpp"

#include <cmath>

#include "wigner/error.hpp"

namespace wigner {

UpperHalfPoint::UpperHalfPoint(double e_, double eta_) : e(e_), eta(eta_) {
  if (!(eta_ > 0.0)) throw ArgumentError("spectral parameter needs eta > 0");
}

std::complex<double> m_N(std::span<const double> eigs, const UpperHalfPoint& z) {
  if (!(z.eta > 0.0)) throw ArgumentError("spectral parameter needs eta > 0");
  std::complex<double> s = 0.0;
  for (double mu : eigs) s += 1.0 / (mu - z.z());
  return s / static_cast<double>(eigs.size());
}

std::complex<double> m_sc(std::complex<double> z) {
  const std::complex<double> root = std::sqrt(z * z - 4.0);
  const std::complex<double> a = 0.5 * (-z + root);
  const std::complex<double> b = 0.5 * (-z - root);
  // The roots multiply to 1 and sum to -z, so for Im z > 0 the root in the upper
  // half plane is the one inside the unit disk. Take it as the reciprocal of the
  // larger root, which is computed without cancellation.
  const std::complex<double> big = std::abs(a) >= std::abs(b) ? a : b;
  return 1.0 / big;
}

std::complex<double> m_sc(const UpperHalfPoint& z) { return m_sc(z.z()); }

double fixed_point_residual(std::complex<double> m, const UpperHalfPoint& z) {
  const std::complex<double> d = z.z() + m;
  if (d == 0.0) throw ArgumentError("fixed_point_residual: z + m = 0");
  return std::abs(m + 1.0 / d);
}

SelfConsistencyTerms self_consistency_terms(std::span<const double> eigs_h, const MinorSpectrum& ms,
                                            const UpperHalfPoint& z) {
  const double n = static_cast<double>(ms.n);
  const std::complex<double> zz = z.z();
  std::complex<double> minor_sum = 0.0, ysum = 0.0;
  for (Eigen::Index a = 0; a < ms.lambda.size(); ++a) {
    const std::complex<double> r = 1.0 / (ms.lambda(a) - zz);
    minor_sum += r;
    ysum += (ms.xi(a) - 1.0) * r;
  }
  SelfConsistencyTerms t;
  t.m_n = m_N(eigs_h, z);
  t.hjj_term = -ms.hjj;
  t.minor_drift = minor_sum / n - t.m_n;
  t.y = ysum / n;
  return t;
}

SelfConsistencyTerms self_consistency_terms(const HermitianMatrix& h, const UpperHalfPoint& z, std::size_t j) {
  if (h.dim() < 2) throw ArgumentError("self_consistency_terms needs N >= 2");
  const Eigen::VectorXd ev = eigenvalues(h);
  return self_consistency_terms({ev.data(), static_cast<std::size_t>(ev.size())}, minor_spectrum(h, j), z);
}

bool interlacing_check(std::span<const double> eigs_h, std::span<const double> eigs_b, double tol) {
  if (eigs_h.size() != eigs_b.size() + 1) throw ArgumentError("interlacing_check: lengths must be N and N-1");
  for (std::size_t a = 0; a < eigs_b.size(); ++a)
    if (eigs_b[a] < eigs_h[a] - tol || eigs_b[a] > eigs_h[a + 1] + tol) return false;
  return true;
}

}  // namespace wigner
