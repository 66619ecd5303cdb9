#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "wigner/error.hpp"
#include "wigner/spectral.hpp"

namespace wigner {

namespace {

// Implicit QL with Wilkinson-type shifts on a real symmetric tridiagonal
// matrix: d is the diagonal, e[i] couples i and i+1 (e[n-1] unused). The
// rotations are accumulated into the columns of z when z is non-null.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Eigen::MatrixXd* z) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e[static_cast<std::size_t>(n - 1)] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw ConvergenceError("implicit QL did not converge", static_cast<std::size_t>(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            auto zi = z->col(i);
            auto zi1 = z->col(i + 1);
            for (Eigen::Index k = 0; k < z->rows(); ++k) {
              f = zi1(k);
              zi1(k) = s * zi(k) + c * f;
              zi(k) = c * zi(k) - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

SpectralDecomposition householder_ql_eig(const HermitianMatrix& h, bool want_vectors) {
  const Eigen::Index n = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd a = h.dense();
  Eigen::MatrixXcd q;
  if (want_vectors) q = Eigen::MatrixXcd::Identity(n, n);
  std::vector<std::complex<double>> sub(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)));

  // Reduce to hermitian tridiagonal form with reflectors I - 2uu^*.
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Eigen::VectorXcd x = a.block(k + 1, k, m, 1);
    const double xnorm = x.norm();
    const double tail = x.tail(m - 1).norm();
    const std::complex<double> alpha = x(0);
    if (xnorm == 0.0 || (tail == 0.0 && alpha.imag() == 0.0)) {
      sub[static_cast<std::size_t>(k)] = alpha;
      continue;
    }
    const std::complex<double> phase = alpha == 0.0 ? 1.0 : alpha / std::abs(alpha);
    const std::complex<double> beta = -phase * xnorm;
    x(0) -= beta;
    const Eigen::VectorXcd u = x / x.norm();
    auto b = a.block(k + 1, k + 1, m, m);
    const Eigen::VectorXcd p = 2.0 * (b * u);
    const std::complex<double> kk = u.dot(p);  // u^* p, real up to rounding
    const Eigen::VectorXcd w = p - kk * u;
    b -= u * w.adjoint() + w * u.adjoint();
    sub[static_cast<std::size_t>(k)] = beta;
    if (want_vectors) {
      auto qb = q.rightCols(m);
      const Eigen::VectorXcd qu = qb * u;
      qb -= 2.0 * qu * u.adjoint();
    }
  }
  if (n >= 2) sub[static_cast<std::size_t>(n - 2)] = a(n - 1, n - 2);

  // Absorb the phases of the subdiagonal into D so that D^* T D is real.
  std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n), 0.0);
  std::vector<std::complex<double>> phi(static_cast<std::size_t>(n), 1.0);
  for (Eigen::Index i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = a(i, i).real();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const std::complex<double> s = sub[static_cast<std::size_t>(i)];
    const double mag = std::abs(s);
    e[static_cast<std::size_t>(i)] = mag;
    phi[static_cast<std::size_t>(i + 1)] = mag == 0.0 ? phi[static_cast<std::size_t>(i)]
                                                      : phi[static_cast<std::size_t>(i)] * (s / mag);
  }

  Eigen::MatrixXd z;
  if (want_vectors) z = Eigen::MatrixXd::Identity(n, n);
  tridiagonal_ql(d, e, want_vectors ? &z : nullptr);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return d[static_cast<std::size_t>(x)] < d[static_cast<std::size_t>(y)]; });

  SpectralDecomposition out;
  out.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.values(i) = d[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
  if (want_vectors) {
    // Eigenvectors of H are Q D Z.
    for (Eigen::Index i = 0; i < n; ++i) q.col(i) *= phi[static_cast<std::size_t>(i)];
    Eigen::MatrixXcd zs(n, n);
    for (Eigen::Index i = 0; i < n; ++i) zs.col(i) = z.col(order[static_cast<std::size_t>(i)]).cast<std::complex<double>>();
    out.vectors = q * zs;
  }
  return out;
}

}  // namespace wigner
