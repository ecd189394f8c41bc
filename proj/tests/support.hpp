// Reference implementations used as independent oracles in the tests. They
// are written as plain index loops over std::complex so they share no code
// with the library.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qkit/core.hpp"

namespace oracle {

using qkit::CMatrix;
using qkit::Complex;
using qkit::CVector;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      for (Eigen::Index j = 0; j < b.rows(); ++j)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + j, k * b.cols() + l) = a(i, k) * b(j, l);
  return out;
}

// Tr_B of an operator on C^da (x) C^db.
inline CMatrix trace_b(const CMatrix& m, Eigen::Index da, Eigen::Index db) {
  CMatrix out = CMatrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline CMatrix trace_a(const CMatrix& m, Eigen::Index da, Eigen::Index db) {
  CMatrix out = CMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

inline CMatrix transpose_b(const CMatrix& m, Eigen::Index da, Eigen::Index db) {
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index k = 0; k < db; ++k)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index l = 0; l < db; ++l) out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
  return out;
}

inline Complex trace(const CMatrix& m) {
  Complex t = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Eigenvalues of a 2x2 Hermitian matrix in descending order.
inline std::pair<double, double> eig2(const CMatrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double r = std::sqrt((a - d) * (a - d) / 4.0 + std::norm(m(0, 1)));
  return {(a + d) / 2.0 + r, (a + d) / 2.0 - r};
}

inline double max_abs(const CMatrix& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out = std::max(out, std::abs(m(i, j)));
  return out;
}

inline CMatrix bell_projector() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

}  // namespace oracle
