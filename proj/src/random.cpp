#include "qkit/random.hpp"

#include <Eigen/QR>

namespace qkit {

CMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  require_dim_cap(rows, cols);
  CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal() * M_SQRT1_2;
  }
  return g;
}

CMatrix random_unitary(Rng& rng, std::size_t d) { return random_isometry(rng, d, d); }

CMatrix random_isometry(Rng& rng, std::size_t m, std::size_t n) {
  if (n > m) throw Error(ErrorKind::InvalidArgument, "random_isometry needs rows >= cols");
  const CMatrix g = random_ginibre(rng, m, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(g.rows(), g.cols());
  const CMatrix r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    if (mag > 0.0) q.col(k) *= rkk / mag;
  }
  return q;
}

CVector random_pure_state(Rng& rng, std::size_t d) {
  CVector v = random_ginibre(rng, d, 1).col(0);
  return v / v.norm();
}

CMatrix random_density_matrix(Rng& rng, std::size_t d, std::size_t rank) {
  if (rank == 0) rank = d;
  const CMatrix g = random_ginibre(rng, d, rank);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) * 0.5;
}

CMatrix random_hermitian(Rng& rng, std::size_t d) {
  const CMatrix g = random_ginibre(rng, d, d);
  return (g + g.adjoint()) * 0.5;
}

std::vector<CMatrix> random_kraus_set(Rng& rng, std::size_t d, std::size_t count) {
  // V e_j = sum_x K_x e_j (x) |x>, so V^dagger V = sum_x K_x^dagger K_x = I.
  const CMatrix v = random_isometry(rng, d * count, d);
  std::vector<CMatrix> ops(count, CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  const auto n = static_cast<Eigen::Index>(count);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d); ++i) ops[static_cast<std::size_t>(x)].row(i) = v.row(i * n + x);
  }
  return ops;
}

}  // namespace qkit
