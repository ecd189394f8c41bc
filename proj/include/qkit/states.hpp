// Density operators: construction from ensembles, validation, purity and von
// Neumann entropy, purification, reduction, conditional states and the qubit
// Bloch representation.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qkit/core.hpp"

namespace qkit {

/// A positive, unit-trace operator together with its tensor-factor layout.
/// Instances only come out of validation (assert_density / DensityOperator::from).
class DensityOperator {
 public:
  /// Validates and throws Error(NotAState) with the diagnostic on failure.
  static DensityOperator from(const CMatrix& m, std::optional<SystemDims> dims = std::nullopt,
                              const Tolerances& tol = {});
  static DensityOperator pure(const CVector& psi, std::optional<SystemDims> dims = std::nullopt);
  static DensityOperator maximally_mixed(std::size_t d);

  const CMatrix& matrix() const { return mat_; }
  const SystemDims& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }

 private:
  DensityOperator(CMatrix m, SystemDims dims) : mat_(std::move(m)), dims_(std::move(dims)) {}
  friend Validated<DensityOperator> assert_density(const CMatrix&, std::optional<SystemDims>, const Tolerances&);

  CMatrix mat_;
  SystemDims dims_;
};

struct EnsembleMember {
  double probability;
  CVector state;
};
using Ensemble = std::vector<EnsembleMember>;

/// rho = sum_k p_k |psi_k><psi_k|. Throws Normalization when the weights do not
/// sum to one within 1e-9, a weight is negative, or a member is not unit-norm.
DensityOperator density_from_ensemble(const Ensemble& ensemble);

/// Checks hermiticity, positivity and unit trace; the diagnostic lists every
/// violated condition with its magnitude.
Validated<DensityOperator> assert_density(const CMatrix& m, std::optional<SystemDims> dims = std::nullopt,
                                          const Tolerances& tol = {});

enum class LogBase { Natural, Two };

struct PurityEntropy {
  double purity;
  double entropy;
};

/// mu = Tr[rho^2] and S = -Tr[rho log rho] from the clipped spectrum (0 log 0 = 0).
PurityEntropy purity_and_entropy(const DensityOperator& rho, LogBase base = LogBase::Natural,
                                 const Tolerances& tol = {});

/// Eigenvalues of rho with entries in [-tol, 0) set to zero; more negative
/// values throw NotAState.
RVector clipped_spectrum(const DensityOperator& rho, const Tolerances& tol = {});

struct Purification {
  CVector vector;   // on H (x) K
  SystemDims dims;  // [d, k]
};

/// |phi>> = sum_k sqrt(lambda_k) |psi_k> (x) V|theta_k> over eigenvalues above
/// 1e-12, theta_k canonical. `ancilla_unitary` (k x k) is the purification freedom.
Purification purify(const DensityOperator& rho, const std::optional<CMatrix>& ancilla_unitary = std::nullopt);

/// Partial trace onto the listed factors, revalidated as a density operator.
DensityOperator reduce(const DensityOperator& rho, std::span<const std::size_t> keep);
DensityOperator reduce(const DensityOperator& rho, std::initializer_list<std::size_t> keep);

struct ConditionalState {
  double probability;
  std::optional<DensityOperator> state;  // empty when probability <= 1e-12
};

/// Effect Pi (0 <= Pi <= I) on factor 0 of a multipartite state; returns
/// p = Tr[rho (Pi (x) I)] and rho_B = Tr_A[rho (Pi (x) I)] / p on the remaining factors.
ConditionalState conditional_state(const DensityOperator& rho_ab, const CMatrix& effect_on_a,
                                   const Tolerances& tol = {});

inline constexpr double kZeroProbability = 1e-12;

struct BlochVector {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  double norm() const;
};

/// r_k = Tr[rho sigma_k] for a qubit.
BlochVector bloch_vector(const DensityOperator& rho);
/// rho = (I + r . sigma) / 2; throws NotAState when |r| > 1 + 1e-9.
DensityOperator density_from_bloch(const BlochVector& r);

}  // namespace qkit
