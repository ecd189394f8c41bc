#include "qkit/cv_joint.hpp"

#include <cmath>

#include <Eigen/Sparse>

#include "qkit/tensor.hpp"

namespace qkit {

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

constexpr double kTailMass = 1e-8;
constexpr double kInequalitySlack = 1e-9;

double expect(const CMatrix& rho, const CMatrix& op) { return (rho * op).trace().real(); }

// Tr[A B] for sparse A without forming the product.
Complex trace_product(const SparseC& a, const CMatrix& b) {
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < a.outerSize(); ++k) {
    for (SparseC::InnerIterator it(a, k); it; ++it) acc += it.value() * b(it.col(), it.row());
  }
  return acc;
}

}  // namespace

FockSpace::FockSpace(std::size_t cutoff) : cutoff_(cutoff) {
  if (cutoff < 2) throw Error(ErrorKind::InvalidArgument, "Fock cutoff must be at least 2");
  require_dim_cap(cutoff + 1, cutoff + 1);
  const auto n = static_cast<Eigen::Index>(cutoff + 1);
  a_ = CMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a_(k - 1, k) = std::sqrt(static_cast<double>(k));
  a_dag_ = a_.adjoint();
  q_ = (a_dag_ + a_) * M_SQRT1_2;
  p_ = (a_dag_ - a_) * Complex(0.0, M_SQRT1_2);
}

FockSpace build_fock(std::size_t cutoff) { return FockSpace(cutoff); }

CVector coherent_state(Complex alpha, const FockSpace& space) {
  const double mean_n = std::norm(alpha);
  if (mean_n > static_cast<double>(space.cutoff()) / 4.0) {
    throw Error(ErrorKind::Precondition, "coherent_state: |alpha|^2 = " + std::to_string(mean_n) +
                                             " exceeds cutoff/4 for N = " + std::to_string(space.cutoff()));
  }
  const auto dim = static_cast<Eigen::Index>(space.dim());
  CVector psi(dim);
  psi(0) = std::exp(-mean_n / 2.0);
  for (Eigen::Index n = 1; n < dim; ++n) psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  const double captured = psi.squaredNorm();
  if (1.0 - captured > kTailMass) {
    throw Error(ErrorKind::Precondition, "coherent_state: truncated tail mass " + std::to_string(1.0 - captured) +
                                             " exceeds 1e-8; raise the cutoff");
  }
  return psi / std::sqrt(captured);
}

JointPair joint_pair(const FockSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  const CMatrix id = CMatrix::Identity(n, n);
  JointPair pair;
  pair.cutoff = space.cutoff();
  pair.q_a = pair.q_b = space.q();
  pair.p_a = pair.p_b = space.p();
  pair.x = kron(space.q(), id) + kron(id, space.q());
  pair.y = kron(space.p(), id) - kron(id, space.p());

  const SparseC xs = pair.x.sparseView();
  const SparseC ys = pair.y.sparseView();
  const SparseC comm = SparseC(xs * ys) - SparseC(ys * xs);
  const auto top = static_cast<Eigen::Index>(space.cutoff());
  auto below = [&](Eigen::Index g) { return g / n < top && g % n < top; };
  double residual = 0.0;
  for (Eigen::Index k = 0; k < comm.outerSize(); ++k) {
    for (SparseC::InnerIterator it(comm, k); it; ++it) {
      if (below(it.row()) && below(it.col())) residual = std::max(residual, std::abs(it.value()));
    }
  }
  pair.commutator_residual = residual;
  return pair;
}

JointReport joint_statistics(const JointPair& pair, const DensityOperator& rho_a, const DensityOperator& rho_b) {
  const auto n = static_cast<std::size_t>(pair.q_a.rows());
  if (rho_a.dim() != n || rho_b.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "joint_statistics: states must live on the truncated Fock space");
  }
  const CMatrix& ra = rho_a.matrix();
  const CMatrix& rb = rho_b.matrix();
  const double mean_qb = expect(rb, pair.q_b);
  const double mean_pb = expect(rb, pair.p_b);
  if (std::abs(mean_qb) > kReplicaTolerance || std::abs(mean_pb) > kReplicaTolerance) {
    throw Error(ErrorKind::Precondition, "joint_statistics: replica state must have <Q_B> = <P_B> = 0 (got " +
                                             std::to_string(mean_qb) + ", " + std::to_string(mean_pb) + ")");
  }

  JointReport r;
  // Direct route on the product state.
  const CMatrix rho = kron(ra, rb);
  const SparseC xs = pair.x.sparseView();
  const SparseC ys = pair.y.sparseView();
  const CMatrix x_rho = xs * rho;
  const CMatrix y_rho = ys * rho;
  r.mean_x = x_rho.trace().real();
  r.mean_y = y_rho.trace().real();
  r.var_x = trace_product(xs, x_rho).real() - r.mean_x * r.mean_x;
  r.var_y = trace_product(ys, y_rho).real() - r.mean_y * r.mean_y;
  r.product = r.var_x * r.var_y;

  // Single-mode route.
  r.mean_q_a = expect(ra, pair.q_a);
  r.mean_p_a = expect(ra, pair.p_a);
  r.var_q_a = expect(ra, pair.q_a * pair.q_a) - r.mean_q_a * r.mean_q_a;
  r.var_p_a = expect(ra, pair.p_a * pair.p_a) - r.mean_p_a * r.mean_p_a;
  r.q_b_sq = expect(rb, pair.q_b * pair.q_b);
  r.p_b_sq = expect(rb, pair.p_b * pair.p_b);
  r.var_x_rhs = r.var_q_a + r.q_b_sq;
  r.var_y_rhs = r.var_p_a + r.p_b_sq;

  const CMatrix comm = pair.q_a * pair.p_a - pair.p_a * pair.q_a;
  r.commutator_sq = std::norm((ra * comm).trace());
  r.single_bound = r.commutator_sq / 4.0;
  r.added_noise[0] = r.var_q_a * r.p_b_sq;
  r.added_noise[1] = r.q_b_sq * r.var_p_a;
  r.added_noise[2] = r.q_b_sq * r.p_b_sq;
  r.product_expansion = r.var_q_a * r.var_p_a + r.added_noise[0] + r.added_noise[1] + r.added_noise[2];
  r.chain_bound = r.single_bound + r.added_noise[0] + r.added_noise[1] + r.added_noise[2];
  return r;
}

UncertaintyReport uncertainty_check(const DensityOperator& rho, const CMatrix& x, const CMatrix& y) {
  const auto d = static_cast<Eigen::Index>(rho.dim());
  if (x.rows() != d || x.cols() != d || y.rows() != d || y.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "uncertainty_check: observable dimension mismatch");
  }
  const Tolerances tol;
  if (hermiticity_violation(x) > tol.hermiticity * Tolerances::scale(x)) throw HermiticityError(hermiticity_violation(x));
  if (hermiticity_violation(y) > tol.hermiticity * Tolerances::scale(y)) throw HermiticityError(hermiticity_violation(y));

  const CMatrix& m = rho.matrix();
  const CMatrix xy = x * y;
  const CMatrix yx = y * x;
  UncertaintyReport r;
  r.mean_x = expect(m, x);
  r.mean_y = expect(m, y);
  r.var_x = expect(m, x * x) - r.mean_x * r.mean_x;
  r.var_y = expect(m, y * y) - r.mean_y * r.mean_y;
  r.product = r.var_x * r.var_y;

  // [X, Y] = iC  =>  <C> = -i <[X, Y]>
  const Complex mean_c = Complex(0.0, -1.0) * (m * (xy - yx)).trace();
  r.commutator_bound = std::norm(mean_c) / 4.0;
  const Complex mean_f = (m * (xy + yx)).trace() - 2.0 * r.mean_x * r.mean_y;
  r.correlation_term = std::norm(mean_f) / 4.0;
  const Complex mean_f_literal = (m * (xy - yx)).trace() - 2.0 * r.mean_x * r.mean_y;
  r.literal_f_term = std::norm(mean_f_literal) / 4.0;

  r.strong_holds = r.product >= r.correlation_term + r.commutator_bound - kInequalitySlack;
  r.weak_holds = r.product >= r.commutator_bound - kInequalitySlack;
  return r;
}

double mus_residual(const CVector& psi, const CMatrix& x, const CMatrix& y, Complex lambda) {
  if (lambda == Complex(0.0)) throw Error(ErrorKind::InvalidArgument, "mus_residual: lambda must be nonzero");
  if (x.rows() != psi.size() || y.rows() != psi.size()) {
    throw Error(ErrorKind::DimensionMismatch, "mus_residual: dimension mismatch");
  }
  const CVector v = psi / psi.norm();
  const double mean_x = v.dot(x * v).real();
  const double mean_y = v.dot(y * v).real();
  const Complex i_lambda = Complex(0.0, 1.0) * lambda;
  const CVector lhs = x * v + i_lambda * (y * v);
  return (lhs - (mean_x + i_lambda * mean_y) * v).norm();
}

}  // namespace qkit
