#include "qkit/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace qkit {

namespace {

void require_dims_match(const CMatrix& m, const SystemDims& dims, const char* op) {
  require_square(m, op);
  if (static_cast<std::size_t>(m.rows()) != dims.total()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": dims " + dims.to_string() + " do not match a " +
                                                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                                  " matrix");
  }
}

// Row-major strides: stride[k] = d_{k+1} * ... * d_{n-1}.
std::vector<std::size_t> strides(const SystemDims& dims) {
  std::vector<std::size_t> s(dims.factors(), 1);
  for (std::size_t k = dims.factors(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  require_dim_cap(rows, cols);
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    }
  }
  return out;
}

CMatrix kron(std::span<const CMatrix> factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "kron of an empty factor list");
  CMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  require_dim_cap(static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size()), 1);
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& m, const SystemDims& dims, std::span<const std::size_t> keep) {
  require_dims_match(m, dims, "partial_trace");
  const std::size_t n = dims.factors();
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n) throw Error(ErrorKind::InvalidArgument, "partial_trace: factor index out of range");
    if (kept[k]) throw Error(ErrorKind::InvalidArgument, "partial_trace: duplicate factor index");
    kept[k] = true;
  }
  if (keep.empty() || keep.size() == n) {
    throw Error(ErrorKind::InvalidArgument, "partial_trace: keep must be a nonempty proper subset of factors");
  }
  std::vector<std::size_t> keep_sorted(keep.begin(), keep.end());
  std::sort(keep_sorted.begin(), keep_sorted.end());

  std::size_t kept_dim = 1;
  for (std::size_t k : keep_sorted) kept_dim *= dims[k];
  const std::size_t traced_dim = dims.total() / kept_dim;

  // table[t * kept_dim + k] = global index of (kept multi-index k, traced multi-index t)
  std::vector<std::size_t> table(dims.total());
  const auto stride = strides(dims);
  for (std::size_t g = 0; g < dims.total(); ++g) {
    std::size_t k_idx = 0, t_idx = 0;
    for (std::size_t f = 0; f < n; ++f) {
      const std::size_t digit = (g / stride[f]) % dims[f];
      if (kept[f]) {
        k_idx = k_idx * dims[f] + digit;
      } else {
        t_idx = t_idx * dims[f] + digit;
      }
    }
    table[t_idx * kept_dim + k_idx] = g;
  }

  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kept_dim), static_cast<Eigen::Index>(kept_dim));
  for (std::size_t t = 0; t < traced_dim; ++t) {
    const std::size_t* row = &table[t * kept_dim];
    for (std::size_t j = 0; j < kept_dim; ++j) {
      for (std::size_t i = 0; i < kept_dim; ++i) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            m(static_cast<Eigen::Index>(row[i]), static_cast<Eigen::Index>(row[j]));
      }
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, const SystemDims& dims, std::initializer_list<std::size_t> keep) {
  return partial_trace(m, dims, std::span<const std::size_t>(keep.begin(), keep.size()));
}

CMatrix partial_transpose(const CMatrix& m, const SystemDims& dims, std::size_t which) {
  require_dims_match(m, dims, "partial_transpose");
  if (dims.factors() < 2) throw Error(ErrorKind::InvalidArgument, "partial_transpose needs two or more factors");
  if (which >= dims.factors()) throw Error(ErrorKind::InvalidArgument, "partial_transpose: factor index out of range");
  const std::size_t stride = strides(dims)[which];
  const std::size_t d = dims[which];
  const std::size_t total = dims.total();
  CMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < total; ++c) {
    const std::size_t dc = (c / stride) % d;
    for (std::size_t r = 0; r < total; ++r) {
      const std::size_t dr = (r / stride) % d;
      // swap the `which` digit between row and column
      const std::size_t r2 = r - dr * stride + dc * stride;
      const std::size_t c2 = c - dc * stride + dr * stride;
      out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

CMatrix permute_factors(const CMatrix& m, const SystemDims& dims, std::span<const std::size_t> perm) {
  require_dims_match(m, dims, "permute_factors");
  const std::size_t n = dims.factors();
  if (perm.size() != n) throw Error(ErrorKind::InvalidArgument, "permute_factors: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw Error(ErrorKind::InvalidArgument, "permute_factors: not a permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> out_dims(n);
  for (std::size_t k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  const auto in_stride = strides(dims);
  const auto out_stride = strides(SystemDims(out_dims));

  // map[g] = output index of input global index g
  std::vector<std::size_t> map(dims.total());
  for (std::size_t g = 0; g < dims.total(); ++g) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < n; ++k) o += ((g / in_stride[perm[k]]) % dims[perm[k]]) * out_stride[k];
    map[g] = o;
  }
  CMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < dims.total(); ++c) {
    for (std::size_t r = 0; r < dims.total(); ++r) {
      out(static_cast<Eigen::Index>(map[r]), static_cast<Eigen::Index>(map[c])) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

Spectrum hermitian_eig(const CMatrix& m, const Tolerances& tol) {
  require_square(m, "hermitian_eig");
  require_finite(m, "hermitian_eig input");
  const double violation = hermiticity_violation(m);
  if (violation > tol.hermiticity * Tolerances::scale(m)) throw HermiticityError(violation);

  const CMatrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvalidArgument, "hermitian_eig: solver failed");

  const Eigen::Index n = m.rows();
  Spectrum s;
  s.eigenvalues.resize(n);
  s.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    // Eigen sorts ascending
    s.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    CVector v = solver.eigenvectors().col(n - 1 - k);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    const Complex phase = std::conj(v(pivot)) / std::abs(v(pivot));
    s.eigenvectors.col(k) = v * phase;
  }
  return s;
}

CMatrix sqrt_psd(const CMatrix& m, const Tolerances& tol) {
  const Spectrum s = hermitian_eig(m, tol);
  const double floor = -tol.positivity * Tolerances::scale(m);
  if (s.min() < floor) {
    throw Error(ErrorKind::Precondition, "sqrt_psd: matrix has negative eigenvalue " + std::to_string(s.min()));
  }
  return s.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

CMatrix extend_isometry_to_unitary(std::span<const CVector> columns, std::size_t total_dim, const Tolerances& tol) {
  require_dim_cap(total_dim, total_dim);
  if (total_dim == 0) throw Error(ErrorKind::InvalidArgument, "extend_isometry_to_unitary: total_dim must be positive");
  if (columns.size() > total_dim) {
    throw Error(ErrorKind::InvalidArgument, "extend_isometry_to_unitary: more columns than total_dim");
  }
  const auto n = static_cast<Eigen::Index>(total_dim);
  for (const auto& c : columns) {
    if (c.size() != n) throw Error(ErrorKind::DimensionMismatch, "extend_isometry_to_unitary: column size mismatch");
    if (!c.allFinite()) throw Error(ErrorKind::NotFinite, "extend_isometry_to_unitary: non-finite column");
  }
  double deviation = 0.0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = i; j < columns.size(); ++j) {
      const Complex ip = columns[i].dot(columns[j]);
      deviation = std::max(deviation, std::abs(ip - (i == j ? 1.0 : 0.0)));
    }
  }
  if (deviation > tol.orthonormality) throw IsometryError(deviation);

  CMatrix u(n, n);
  Eigen::Index filled = 0;
  for (const auto& c : columns) u.col(filled++) = c;

  constexpr double kSkipResidual = 1e-8;
  for (Eigen::Index e = 0; e < n && filled < n; ++e) {
    CVector v = CVector::Zero(n);
    v(e) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < filled; ++j) v -= u.col(j) * u.col(j).dot(v);
    }
    const double norm = v.norm();
    if (norm < kSkipResidual) continue;
    u.col(filled++) = v / norm;
  }
  if (filled != n) throw Error(ErrorKind::Isometry, "extend_isometry_to_unitary: completion failed");
  return u;
}

}  // namespace qkit

namespace qkit {

CMatrix dilation_unitary(std::span<const CMatrix> ops, const CVector& ancilla_state, const Tolerances& tol) {
  if (ops.empty()) throw Error(ErrorKind::InvalidArgument, "dilation_unitary needs at least one operator");
  const Eigen::Index d = ops.front().rows();
  const auto n = static_cast<Eigen::Index>(ops.size());
  for (const auto& m : ops) {
    if (m.rows() != d || m.cols() != d) throw Error(ErrorKind::DimensionMismatch, "dilation operators differ in size");
  }
  if (ancilla_state.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "ancilla state must have dimension " + std::to_string(n));
  }
  require_dim_cap(static_cast<std::size_t>(d * n), static_cast<std::size_t>(d * n));

  // Isometry columns V e_i = sum_x M_x e_i (x) |x>.
  std::vector<CVector> cols;
  cols.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    CVector c(d * n);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index x = 0; x < n; ++x) c(r * n + x) = ops[static_cast<std::size_t>(x)](r, i);
    }
    cols.push_back(std::move(c));
  }
  const CMatrix completed = extend_isometry_to_unitary(cols, static_cast<std::size_t>(d * n), tol);

  // Place V e_i at column (i, 0); the completion fills the remaining columns in order.
  CMatrix u0(d * n, d * n);
  Eigen::Index next = d;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index a = 0; a < n; ++a) {
      u0.col(i * n + a) = (a == 0) ? completed.col(i) : completed.col(next++);
    }
  }

  // R |0> = |omega>; U = U0 (I (x) R^dagger) so that U (phi (x) omega) = U0 (phi (x) |0>).
  const CVector omega = ancilla_state;
  const CMatrix r = extend_isometry_to_unitary(std::span<const CVector>(&omega, 1), static_cast<std::size_t>(n), tol);
  if (max_abs(r - CMatrix::Identity(n, n)) == 0.0) return u0;
  return u0 * kron(CMatrix::Identity(d, d), CMatrix(r.adjoint()));
}

}  // namespace qkit
