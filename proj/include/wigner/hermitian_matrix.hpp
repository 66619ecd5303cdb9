#pragma once

#include <complex>
#include <cstddef>
#include <ostream>

#include <Eigen/Dense>

namespace wigner {

using cplx = std::complex<double>;

// Dense complex hermitian matrix. Constructors reject non-hermitian input, and
// every mutating helper writes both (j,l) and (l,j), so h(l,j) == conj(h(j,l))
// holds bit for bit.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n);
  // Throws ArgumentError unless m is square and exactly hermitian.
  explicit HermitianMatrix(Eigen::MatrixXcd m);

  static HermitianMatrix diagonal(const Eigen::VectorXd& d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  cplx operator()(std::size_t j, std::size_t l) const { return m_(j, l); }
  const Eigen::MatrixXcd& dense() const { return m_; }

  void set(std::size_t j, std::size_t l, cplx value);
  void set_diagonal(std::size_t j, double value);
  // this += c * other, keeping exact hermiticity.
  void add_scaled(const HermitianMatrix& other, double c);

  double trace() const;
  // Tr H^2 = sum of |h_jl|^2.
  double trace_sq() const;
  double max_asymmetry() const;

  void write_csv(std::ostream& os) const;

private:
  Eigen::MatrixXcd m_;
};

}  // namespace wigner
