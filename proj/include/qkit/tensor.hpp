// Dense linear algebra over multipartite finite-dimensional spaces.
//
// Index convention: for factors [d_0, d_1, ..., d_{n-1}] the global index of
// the multi-index (i_0, ..., i_{n-1}) is ((i_0 * d_1 + i_1) * d_2 + ...), so
// (A (x) B)[i*rows_B + j, k*cols_B + l] = A[i,k] * B[j,l].
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qkit/core.hpp"

namespace qkit {

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron(std::span<const CMatrix> factors);
CVector kron(const CVector& a, const CVector& b);

/// Traces out every factor not listed in `keep`. Kept factors stay in their
/// original relative order.
CMatrix partial_trace(const CMatrix& m, const SystemDims& dims, std::span<const std::size_t> keep);
CMatrix partial_trace(const CMatrix& m, const SystemDims& dims, std::initializer_list<std::size_t> keep);

/// Transposes the factor `which` only. Applying it twice returns the input bit for bit.
CMatrix partial_transpose(const CMatrix& m, const SystemDims& dims, std::size_t which);

/// Reorders tensor factors: factor k of the result is factor perm[k] of the input.
CMatrix permute_factors(const CMatrix& m, const SystemDims& dims, std::span<const std::size_t> perm);

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted descending.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;  // column k pairs with eigenvalues[k]

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
  CVector vector(std::size_t k) const { return eigenvectors.col(static_cast<Eigen::Index>(k)); }
  double min() const { return eigenvalues(eigenvalues.size() - 1); }
  double max() const { return eigenvalues(0); }
  /// sum_k f(lambda_k) |v_k><v_k|
  template <class F>
  CMatrix apply(F&& f) const {
    CMatrix out = CMatrix::Zero(eigenvectors.rows(), eigenvectors.rows());
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
      out += Complex(f(eigenvalues(k))) * eigenvectors.col(k) * eigenvectors.col(k).adjoint();
    }
    return out;
  }
};

/// Throws HermiticityError when |m - m^dagger|_max exceeds tol.hermiticity * scale(m).
/// The input is symmetrized before solving; every eigenvector is phase-fixed so
/// that its largest-magnitude component is real and positive.
Spectrum hermitian_eig(const CMatrix& m, const Tolerances& tol = {});

/// Principal square root of a positive matrix; eigenvalues in [-tol, 0) are clipped.
CMatrix sqrt_psd(const CMatrix& m, const Tolerances& tol = {});

/// Completes orthonormal columns into a unitary of size total_dim. The first
/// columns of the result are the inputs; the rest come from Gram-Schmidt over
/// canonical basis vectors in index order (residual norm < 1e-8 skipped, one
/// re-orthogonalization pass).
CMatrix extend_isometry_to_unitary(std::span<const CVector> columns, std::size_t total_dim,
                                   const Tolerances& tol = {});

/// Unitary U on C^d (x) C^n (n = ops.size()) with
///   U (|phi> (x) |omega>) = sum_x M_x |phi> (x) |x>
/// for operators satisfying sum M_x^dagger M_x = I. The orthogonal complement
/// is filled by extend_isometry_to_unitary.
CMatrix dilation_unitary(std::span<const CMatrix> ops, const CVector& ancilla_state, const Tolerances& tol = {});

}  // namespace qkit
