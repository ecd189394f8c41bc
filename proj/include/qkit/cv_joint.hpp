// Truncated single-mode Fock spaces, quadratures and coherent states; the
// replica-based joint measurement of Q and P; uncertainty-relation checks and
// minimum-uncertainty residuals. Convention: [Q, P] = i on the untruncated space.
#pragma once

#include <cstddef>

#include "qkit/core.hpp"
#include "qkit/states.hpp"

namespace qkit {

/// Fock space truncated at photon number N (dimension N + 1).
class FockSpace {
 public:
  explicit FockSpace(std::size_t cutoff);

  std::size_t cutoff() const { return cutoff_; }
  std::size_t dim() const { return cutoff_ + 1; }
  const CMatrix& a() const { return a_; }
  const CMatrix& a_dagger() const { return a_dag_; }
  /// (a^dagger + a) / sqrt(2)
  const CMatrix& q() const { return q_; }
  /// i (a^dagger - a) / sqrt(2)
  const CMatrix& p() const { return p_; }
  /// |n>
  CVector number_state(std::size_t n) const { return basis_vector(dim(), n); }

 private:
  std::size_t cutoff_;
  CMatrix a_, a_dag_, q_, p_;
};

inline constexpr std::size_t kDefaultCutoff = 40;

/// Throws InvalidArgument for N < 2 and DimensionCap when N + 1 exceeds the cap.
/// joint_pair needs (N + 1)^2 within the cap as well, so N <= 63 there.
FockSpace build_fock(std::size_t cutoff);

/// e^{-|a|^2/2} sum_n a^n / sqrt(n!) |n>, renormalized on the truncated space.
/// Requires |a|^2 <= N/4 and a discarded tail mass of at most 1e-8.
CVector coherent_state(Complex alpha, const FockSpace& space);

/// Commuting pair on A (x) B with a replica B of A:
///   X = Q (x) I + I (x) Q,   Y = P (x) I - I (x) P.
struct JointPair {
  std::size_t cutoff = 0;
  CMatrix x, y;
  CMatrix q_a, p_a, q_b, p_b;
  /// max |[X, Y]| over matrix elements whose row and column Fock labels are all < N.
  double commutator_residual = 0.0;
};

JointPair joint_pair(const FockSpace& space);

struct JointReport {
  double mean_x = 0, mean_y = 0;
  double var_x = 0, var_y = 0;  // computed on rho_A (x) rho_B
  double var_x_rhs = 0, var_y_rhs = 0;  // <dQ_A^2> + <Q_B^2>, <dP_A^2> + <P_B^2>
  double mean_q_a = 0, mean_p_a = 0;
  double var_q_a = 0, var_p_a = 0;
  double q_b_sq = 0, p_b_sq = 0;  // <Q_B^2>, <P_B^2>
  double product = 0;             // var_x * var_y
  double commutator_sq = 0;       // |<[Q_A, P_A]>|^2
  double single_bound = 0;        // |<[Q_A, P_A]>|^2 / 4
  /// <dQ_A^2><P_B^2>, <Q_B^2><dP_A^2>, <Q_B^2><P_B^2>
  double added_noise[3] = {0, 0, 0};
  /// Four-term expansion of the product from the right-hand sides.
  double product_expansion = 0;
  /// single_bound + the three added-noise terms.
  double chain_bound = 0;
};

inline constexpr double kReplicaTolerance = 1e-8;

/// Throws Precondition when rho_B has |<Q_B>| or |<P_B>| above 1e-8.
JointReport joint_statistics(const JointPair& pair, const DensityOperator& rho_a, const DensityOperator& rho_b);

struct UncertaintyReport {
  double mean_x = 0, mean_y = 0;
  double var_x = 0, var_y = 0;
  double product = 0;
  /// |<C>|^2 / 4 with [X, Y] = iC.
  double commutator_bound = 0;
  /// |<F>|^2 / 4 with F = XY + YX - 2<X><Y> (symmetrized correlation).
  double correlation_term = 0;
  /// |<F'>|^2 / 4 with F' = XY - YX - 2<X><Y>, evaluated literally for reference.
  double literal_f_term = 0;
  bool strong_holds = false;  // product >= correlation_term + commutator_bound - 1e-9
  bool weak_holds = false;    // product >= commutator_bound - 1e-9
};

UncertaintyReport uncertainty_check(const DensityOperator& rho, const CMatrix& x, const CMatrix& y);

/// |(X + i l Y) psi - (<X> + i l <Y>) psi|; zero exactly for minimum-uncertainty states.
double mus_residual(const CVector& psi, const CMatrix& x, const CMatrix& y, Complex lambda);

}  // namespace qkit
