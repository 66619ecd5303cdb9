#include "wigner/hermitian_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wigner/error.hpp"

namespace wigner {

HermitianMatrix::HermitianMatrix(std::size_t n)
    : m_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ArgumentError("hermitian matrix must be square");
  if (max_asymmetry() != 0.0) throw ArgumentError("matrix is not exactly hermitian");
}

HermitianMatrix HermitianMatrix::diagonal(const Eigen::VectorXd& d) {
  HermitianMatrix h(static_cast<std::size_t>(d.size()));
  for (Eigen::Index i = 0; i < d.size(); ++i) h.m_(i, i) = d(i);
  return h;
}

void HermitianMatrix::set(std::size_t j, std::size_t l, cplx value) {
  const auto a = static_cast<Eigen::Index>(j), b = static_cast<Eigen::Index>(l);
  if (a == b) {
    m_(a, a) = cplx(value.real(), 0.0);
    return;
  }
  m_(a, b) = value;
  m_(b, a) = std::conj(value);
}

void HermitianMatrix::set_diagonal(std::size_t j, double value) {
  const auto a = static_cast<Eigen::Index>(j);
  m_(a, a) = cplx(value, 0.0);
}

void HermitianMatrix::add_scaled(const HermitianMatrix& other, double c) {
  if (other.dim() != dim()) throw ArgumentError("dimension mismatch in add_scaled");
  // Elementwise a + c*b commutes with conjugation exactly, so hermiticity survives.
  m_ += c * other.m_;
}

double HermitianMatrix::trace() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m_.rows(); ++i) s += m_(i, i).real();
  return s;
}

double HermitianMatrix::trace_sq() const { return m_.squaredNorm(); }

double HermitianMatrix::max_asymmetry() const {
  double d = 0.0;
  for (Eigen::Index j = 0; j < m_.rows(); ++j)
    for (Eigen::Index l = j; l < m_.cols(); ++l) d = std::max(d, std::abs(m_(j, l) - std::conj(m_(l, j))));
  return d;
}

void HermitianMatrix::write_csv(std::ostream& os) const {
  char buf[80];
  for (Eigen::Index j = 0; j < m_.rows(); ++j) {
    for (Eigen::Index l = 0; l < m_.cols(); ++l) {
      std::snprintf(buf, sizeof buf, "\"%.17g,%.17g\"", m_(j, l).real(), m_(j, l).imag());
      if (l) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace wigner
