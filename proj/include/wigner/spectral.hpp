#pragma once

#include <complex>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "wigner/hermitian_matrix.hpp"

namespace wigner {

struct SpectralDecomposition {
  Eigen::VectorXd values;                  // ascending
  std::optional<Eigen::MatrixXcd> vectors;  // column a is the eigenvector of values(a)
};

enum class EigenMethod {
  lapack,          // zheevd_2stage (values only) / zheevr (values and vectors)
  householder_ql,  // serial in-house reference: Householder tridiagonalization + implicit QL
};

SpectralDecomposition hermitian_eig(const HermitianMatrix& h, bool want_vectors,
                                    EigenMethod method = EigenMethod::lapack);
Eigen::VectorXd eigenvalues(const HermitianMatrix& h, EigenMethod method = EigenMethod::lapack);

// Reference solver entry points, also reachable through hermitian_eig.
SpectralDecomposition householder_ql_eig(const HermitianMatrix& h, bool want_vectors);

// H with row and column j removed (0-based j).
HermitianMatrix principal_minor(const HermitianMatrix& h, std::size_t j);

// (H - z)^{-1}(j, j) from a single LU solve against e_j.
std::complex<double> resolvent_diag(const HermitianMatrix& h, std::complex<double> z, std::size_t j);

// Spectral data of the minor B = H^{(j)} seen from row j.
struct MinorSpectrum {
  Eigen::VectorXd lambda;  // minor eigenvalues, ascending
  Eigen::VectorXd xi;      // xi_a = N |u_a^* a|^2, a = column j of H without h_jj
  double hjj = 0.0;
  double a_norm_sq = 0.0;
  std::size_t n = 0;  // dimension of H
};
MinorSpectrum minor_spectrum(const HermitianMatrix& h, std::size_t j);

struct SchurDiag {
  std::complex<double> value;  // 1 / (h_jj - z - sigma)
  std::complex<double> sigma;  // <a, (B - z)^{-1} a> = (1/N) sum xi_a / (lambda_a - z)
};
SchurDiag schur_diag(const MinorSpectrum& ms, std::complex<double> z);
SchurDiag schur_diag(const HermitianMatrix& h, std::complex<double> z, std::size_t j);

Eigen::VectorXd overlap_xi(const HermitianMatrix& h, std::size_t j);

}  // namespace wigner
