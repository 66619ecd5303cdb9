#include "wigner/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <lapacke.h>

#include "wigner/error.hpp"

namespace wigner {

namespace {

lapack_complex_double* lp(std::complex<double>* p) { return reinterpret_cast<lapack_complex_double*>(p); }

void check_upper_half(std::complex<double> z) {
  if (!(z.imag() > 0.0)) throw ArgumentError("spectral parameter must have Im z > 0");
}

void check_index(const HermitianMatrix& h, std::size_t j) {
  if (j >= h.dim()) throw ArgumentError("row index out of range");
}

SpectralDecomposition lapack_eig(const HermitianMatrix& h, bool want_vectors) {
  const auto n = static_cast<lapack_int>(h.dim());
  SpectralDecomposition out;
  out.values.resize(n);
  if (n == 0) return out;
  Eigen::MatrixXcd a = h.dense();  // column major, overwritten by LAPACK
  lapack_int info;
  if (!want_vectors) {
    info = LAPACKE_zheevd_2stage(LAPACK_COL_MAJOR, 'N', 'U', n, lp(a.data()), n, out.values.data());
  } else {
    Eigen::MatrixXcd z(n, n);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
    lapack_int m = 0;
    info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'U', n, lp(a.data()), n, 0.0, 0.0, 0, 0, 0.0, &m,
                          out.values.data(), lp(z.data()), n, isuppz.data());
    if (info == 0 && m != n) throw ConvergenceError("zheevr returned too few eigenpairs", static_cast<std::size_t>(m));
    out.vectors = std::move(z);
  }
  if (info < 0) throw NumericalError("LAPACK eigensolver rejected argument " + std::to_string(-info));
  if (info > 0) throw ConvergenceError("LAPACK eigensolver failed to converge", static_cast<std::size_t>(info - 1));
  return out;
}

}  // namespace

SpectralDecomposition hermitian_eig(const HermitianMatrix& h, bool want_vectors, EigenMethod method) {
  if (method == EigenMethod::householder_ql) return householder_ql_eig(h, want_vectors);
  return lapack_eig(h, want_vectors);
}

Eigen::VectorXd eigenvalues(const HermitianMatrix& h, EigenMethod method) {
  return hermitian_eig(h, false, method).values;
}

HermitianMatrix principal_minor(const HermitianMatrix& h, std::size_t j) {
  const std::size_t n = h.dim();
  if (n < 2) throw ArgumentError("principal minor needs N >= 2");
  check_index(h, j);
  const auto jj = static_cast<Eigen::Index>(j), m = static_cast<Eigen::Index>(n - 1);
  const Eigen::MatrixXcd& a = h.dense();
  Eigen::MatrixXcd b(m, m);
  b.topLeftCorner(jj, jj) = a.topLeftCorner(jj, jj);
  b.topRightCorner(jj, m - jj) = a.topRightCorner(jj, m - jj);
  b.bottomLeftCorner(m - jj, jj) = a.bottomLeftCorner(m - jj, jj);
  b.bottomRightCorner(m - jj, m - jj) = a.bottomRightCorner(m - jj, m - jj);
  return HermitianMatrix(std::move(b));
}

std::complex<double> resolvent_diag(const HermitianMatrix& h, std::complex<double> z, std::size_t j) {
  check_upper_half(z);
  check_index(h, j);
  const auto n = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd a = h.dense();
  a.diagonal().array() -= z;
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  e(static_cast<Eigen::Index>(j)) = 1.0;
  const Eigen::VectorXcd x = a.partialPivLu().solve(e);
  const std::complex<double> g = x(static_cast<Eigen::Index>(j));
  if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
    throw NumericalError("resolvent linear solve broke down");
  return g;
}

MinorSpectrum minor_spectrum(const HermitianMatrix& h, std::size_t j) {
  const HermitianMatrix b = principal_minor(h, j);
  const SpectralDecomposition sd = hermitian_eig(b, true);
  const auto n = static_cast<Eigen::Index>(h.dim());
  const auto jj = static_cast<Eigen::Index>(j);
  Eigen::VectorXcd a(n - 1);
  for (Eigen::Index i = 0, k = 0; i < n; ++i)
    if (i != jj) a(k++) = h.dense()(i, jj);
  MinorSpectrum ms;
  ms.n = h.dim();
  ms.hjj = h(j, j).real();
  ms.lambda = sd.values;
  ms.a_norm_sq = a.squaredNorm();
  const Eigen::VectorXcd proj = sd.vectors->adjoint() * a;
  ms.xi = static_cast<double>(n) * proj.cwiseAbs2();
  return ms;
}

SchurDiag schur_diag(const MinorSpectrum& ms, std::complex<double> z) {
  check_upper_half(z);
  std::complex<double> sigma = 0.0;
  for (Eigen::Index a = 0; a < ms.lambda.size(); ++a) sigma += ms.xi(a) / (ms.lambda(a) - z);
  sigma /= static_cast<double>(ms.n);
  return {1.0 / (ms.hjj - z - sigma), sigma};
}

SchurDiag schur_diag(const HermitianMatrix& h, std::complex<double> z, std::size_t j) {
  check_upper_half(z);
  return schur_diag(minor_spectrum(h, j), z);
}

Eigen::VectorXd overlap_xi(const HermitianMatrix& h, std::size_t j) {
  return minor_spectrum(h, j).xi;
}

}  // namespace wigner
