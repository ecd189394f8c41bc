// Quantum operations as completely positive maps: Kraus form, dual map,
// composition, Choi correspondence in both directions, CP certification,
// Stinespring dilation, unitary equivalence, the depolarizing and random
// unitary channels, transposition and the PPT check.
//
// Vectorization is row-major: vec(X)[i*d + j] = X[i,j], so vec(A X B) =
// (A (x) B^T) vec(X) under the library's kron convention.
#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qkit/core.hpp"
#include "qkit/states.hpp"
#include "qkit/tensor.hpp"

namespace qkit {

enum class TraceFlag { Preserving, NonIncreasing };

struct KrausChannel {
  std::vector<CMatrix> kraus_ops;
  TraceFlag trace_flag = TraceFlag::Preserving;

  std::size_t dim() const { return kraus_ops.empty() ? 0 : static_cast<std::size_t>(kraus_ops.front().rows()); }
  std::size_t size() const { return kraus_ops.size(); }
};

/// A linear map on L(C^d): either an operator-sum form X -> sum K X K^dagger
/// (CP by construction) or a d^2 x d^2 superoperator acting on row-major vec(X).
class LinearMap {
 public:
  static LinearMap from_kraus(std::vector<CMatrix> ops);
  static LinearMap from_superoperator(CMatrix superop);

  std::size_t dim() const { return dim_; }
  bool is_kraus() const { return std::holds_alternative<std::vector<CMatrix>>(rep_); }
  const std::vector<CMatrix>& kraus_ops() const { return std::get<std::vector<CMatrix>>(rep_); }
  /// Superoperator matrix; computed from the Kraus form when needed.
  CMatrix superoperator() const;
  CMatrix operator()(const CMatrix& x) const;

 private:
  std::variant<std::vector<CMatrix>, CMatrix> rep_;
  std::size_t dim_ = 0;
};

struct ChoiMatrix {
  CMatrix mat;  // (E (x) I)(|phi>><<phi|), |phi>> = d^{-1/2} sum_k |kk>
  std::size_t input_dim = 0;
};

/// Completeness check; infers the trace flag or reports the deviation.
Validated<KrausChannel> assert_channel(std::vector<CMatrix> ops, const Tolerances& tol = {});
/// Like assert_channel but throws InvalidArgument with the diagnostic.
KrausChannel make_channel(std::vector<CMatrix> ops, const Tolerances& tol = {});

/// sum_k M_k X M_k^dagger on an arbitrary operator.
CMatrix act(const KrausChannel& ch, const CMatrix& x);

struct ChannelOutput {
  double trace;                          // Tr[E(rho)]
  std::optional<DensityOperator> state;  // E(rho) / trace, empty when trace <= 1e-12
};

/// E(rho) with its trace reported separately; nothing is renormalized for a
/// trace-preserving channel beyond the validated trace of one.
ChannelOutput apply(const KrausChannel& ch, const DensityOperator& rho);

/// The dual map X -> sum_k M_k^dagger X M_k as a Kraus-form LinearMap.
LinearMap dual(const KrausChannel& ch);
CMatrix apply_dual(const KrausChannel& ch, const CMatrix& x);

/// e2 after e1: operators M2_{k2} M1_{k1} indexed k1 * n2 + k2.
KrausChannel compose(const KrausChannel& e2, const KrausChannel& e1);

LinearMap as_linear_map(const KrausChannel& ch);

ChoiMatrix choi(const LinearMap& m);
ChoiMatrix choi(const KrausChannel& ch);

/// Spectral extraction (M_k)[i,j] = sqrt(d p_k) w_k[i*d + j]; eigenvalues below
/// 1e-12 are dropped, so at most d^2 operators come back. Throws
/// NotCompletelyPositiveError carrying the witness when an eigenvalue is below -tol.
KrausChannel kraus_from_choi(const ChoiMatrix& c, const Tolerances& tol = {});

/// Recovers E(|psi><psi|) = d <psi~| C |psi~> with the partial sandwich on the second factor.
CMatrix action_from_choi(const ChoiMatrix& c, const CVector& psi);

struct CPVerdict {
  bool completely_positive;
  double min_eigenvalue;
  std::optional<CVector> witness;  // eigenvector of the negative eigenvalue
};
CPVerdict is_completely_positive(const LinearMap& m, const Tolerances& tol = {});

struct Dilation {
  std::size_t system_dim = 0;
  std::size_t ancilla_dim = 0;
  CVector ancilla_state;
  CMatrix unitary;
};

/// U (phi (x) omega) = sum_k M_k phi (x) |theta_k>; trace-preserving channels only.
Dilation stinespring(const KrausChannel& ch, const Tolerances& tol = {});
/// Tr_B[U (x (x) |omega><omega|) U^dagger] for any operator x.
CMatrix dilation_action(const Dilation& dil, const CMatrix& x);

inline constexpr double kSameChannelTolerance = 1e-9;
/// True iff the Choi matrices agree to 1e-9 (max-abs).
bool same_channel(const KrausChannel& a, const KrausChannel& b, double tolerance = kSameChannelTolerance);
double choi_distance(const KrausChannel& a, const KrausChannel& b);

KrausChannel identity_channel(std::size_t d);
KrausChannel unitary_channel(const CMatrix& u);
/// Operators sqrt(1-g) sigma_0, sqrt(g/3) sigma_{1,2,3}.
KrausChannel depolarizing(double gamma);
/// p = 1 - 4 gamma / 3 and its inverse.
double depolarizing_p(double gamma);
double depolarizing_gamma(double p);
/// Operators sqrt(p_k) U_k.
KrausChannel random_unitary_channel(std::span<const double> weights, std::span<const CMatrix> unitaries);
/// X -> X^T in superoperator form.
LinearMap transposition_map(std::size_t d);

struct PptResult {
  RVector eigenvalues;  // of the partial transpose, descending
  double min_eigenvalue;
  bool negative;  // NPT verdict: min < -tol
};
/// Partial transpose on factor `which` (default: the last) of a bipartite state.
PptResult ppt_check(const DensityOperator& rho, std::optional<std::size_t> which = std::nullopt,
                    const Tolerances& tol = {});

}  // namespace qkit
