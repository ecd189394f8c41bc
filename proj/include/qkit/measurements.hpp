// Generalized measurements: POVMs, instruments (one detection operator per
// outcome), the Born rule, state reduction, Naimark extensions, the quantum
// roulette and the special instruments used in the examples (photodetector,
// Heisenberg counterexample, trine).
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qkit/core.hpp"
#include "qkit/states.hpp"

namespace qkit {

struct POVM {
  std::vector<std::string> labels;
  std::vector<CMatrix> elements;

  std::size_t size() const { return elements.size(); }
  std::size_t dim() const { return elements.empty() ? 0 : static_cast<std::size_t>(elements.front().rows()); }
};

struct Instrument {
  std::vector<std::string> labels;
  std::vector<CMatrix> detection_ops;

  std::size_t size() const { return detection_ops.size(); }
  std::size_t dim() const { return detection_ops.empty() ? 0 : static_cast<std::size_t>(detection_ops.front().rows()); }
};

/// Completeness threshold for POVMs and instruments.
inline constexpr double kCompletenessTolerance = 1e-9;

/// Default labels "0", "1", ... when none are supplied.
std::vector<std::string> default_labels(std::size_t n);

Validated<POVM> assert_povm(std::vector<CMatrix> elements, std::vector<std::string> labels = {},
                            const Tolerances& tol = {});
Validated<Instrument> assert_instrument(std::vector<CMatrix> ops, std::vector<std::string> labels = {});

/// Pi_x = M_x^dagger M_x.
POVM detection_to_povm(const Instrument& inst);

/// M_x = U_x sqrt(Pi_x); U_x defaults to the identity.
Instrument povm_to_detection(const POVM& povm, const std::vector<CMatrix>& rotations = {},
                             const Tolerances& tol = {});

/// p_x = Tr[rho Pi_x]; entries in [-1e-10, 0) are clipped to zero.
std::vector<double> born_rule(const DensityOperator& rho, const POVM& povm);

struct MeasurementRecord {
  std::size_t outcome;
  std::string label;
  double probability;
  DensityOperator state;  // M_x rho M_x^dagger / p_x
};

struct MeasurementResult {
  std::vector<MeasurementRecord> records;
  /// Outcomes whose probability was <= 1e-12; they carry no state.
  std::vector<std::size_t> zero_probability;
  std::vector<double> probabilities;  // all outcomes, in instrument order
};

MeasurementResult measure(const DensityOperator& rho, const Instrument& inst);

/// sum_x M_x rho M_x^dagger
DensityOperator nonselective(const DensityOperator& rho, const Instrument& inst);

struct NaimarkExtension {
  std::size_t system_dim = 0;
  std::size_t ancilla_dim = 0;
  CVector ancilla_state;  // |omega_B>
  CMatrix unitary;        // on system (x) ancilla
  std::vector<std::string> labels;  // outcome x <-> ancilla basis vector |x>
};

/// Canonical extension: U (e_i (x) omega) = sum_x M_x e_i (x) |x>, completed to
/// a unitary; omega defaults to the first ancilla basis vector.
NaimarkExtension canonical_naimark(const Instrument& inst, const std::optional<CVector>& ancilla_state = std::nullopt,
                                   const Tolerances& tol = {});

/// Pi_x = Tr_B[(I (x) |omega><omega|) U^dagger (I (x) P_x) U].
POVM recovered_povm(const NaimarkExtension& ext);

/// <x| U |phi, omega>, the system vector left behind on ancilla outcome x.
CVector extension_branch(const NaimarkExtension& ext, const CVector& phi, std::size_t outcome);

struct ExtensionStatistics {
  std::vector<double> probabilities;
  std::vector<std::optional<DensityOperator>> conditional_states;
};

/// Statistics and conditional system states from measuring P_x on the ancilla
/// after U acts on rho (x) |omega><omega|.
ExtensionStatistics extension_statistics(const NaimarkExtension& ext, const DensityOperator& rho);

/// For a bipartite rho_AB with the extension acting on A: the state of B after
/// ancilla outcome x, i.e. Tr_{A,anc} of the projected global state divided by p_x.
ConditionalState extension_partner_state(const NaimarkExtension& ext, const DensityOperator& rho_ab,
                                         std::size_t outcome);

struct RouletteProbe {
  std::size_t probe_dim = 0;
  CVector probe_state;              // sum_k sqrt(z_k) |theta_k>
  std::vector<CMatrix> projectors;  // Q_x = sum_k P_x^(k) (x) |theta_k><theta_k|
  /// max over x, x' of |Q_x Q_x' - delta_xx' Q_x|.
  double projector_defect = 0.0;
};

struct Roulette {
  POVM povm;  // Pi_x = sum_k z_k P_x^(k)
  RouletteProbe probe;
  std::vector<CMatrix> bases;  // column x of bases[k] is |x>_k
  std::vector<double> weights;
};

/// K projective measurements chosen at random with weights z_k. Each basis is
/// a unitary whose column x is the eigenvector for shared outcome x.
Roulette quantum_roulette(std::span<const CMatrix> bases, std::span<const double> weights,
                          std::vector<std::string> labels = {}, const Tolerances& tol = {});

/// p_x = Tr[(rho (x) |omega_P><omega_P|) Q_x].
std::vector<double> roulette_probe_statistics(const Roulette& roulette, const DensityOperator& rho);
/// Tr_P[Q_x (rho (x) omega_P) Q_x] / p_x.
ConditionalState roulette_probe_post_state(const Roulette& roulette, const DensityOperator& rho, std::size_t outcome);
/// sum_k z_k P_x^(k) rho P_x^(k) / p_x.
ConditionalState roulette_mixed_post_state(const Roulette& roulette, const DensityOperator& rho, std::size_t outcome);

/// Eigenbasis of cos(a) sigma_1 + sin(a) sigma_2: column 0 is the +1 eigenvector.
CMatrix sigma_alpha_basis(double alpha);
/// Eigenbases of sigma_3 and sigma_1, column 0 for eigenvalue +1.
CMatrix sigma_z_basis();
CMatrix sigma_x_basis();

/// M_a = |b><a| for the columns |a> of basis_a and the fixed column |b> = basis_b[:, target].
Instrument heisenberg_instrument(const CMatrix& basis_a, const CMatrix& basis_b, std::size_t target,
                                 const Tolerances& tol = {});

/// Photon counter truncated to d levels: M_n = |0><n|.
Instrument photodetector_instrument(std::size_t d);

/// Pi_x = (2/3) |theta_x><theta_x| with |theta_x> = cos(2 pi x / 3)|0> + sin(2 pi x / 3)|1>.
POVM trine_povm();

struct SampleResult {
  std::vector<std::uint64_t> counts;
  std::vector<double> probabilities;
  std::vector<double> frequencies;
  /// max over outcomes of |freq - p| / sqrt(p (1 - p) / shots); zero-variance
  /// outcomes contribute 0 when matched exactly and +inf otherwise.
  double max_sigma = 0.0;
  bool within_bound = true;  // max_sigma <= 5
};

/// Draws n_shots outcomes of the instrument on rho. Deterministic for a seed.
SampleResult sample_outcomes(const DensityOperator& rho, const Instrument& inst, std::uint64_t n_shots,
                             std::uint64_t seed);

}  // namespace qkit
