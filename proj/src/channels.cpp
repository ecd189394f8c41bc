#include "qkit/channels.hpp"

#include <algorithm>
#include <cmath>

namespace qkit {

namespace {

constexpr double kDropWeight = 1e-12;
constexpr double kUnitaryTolerance = 1e-9;
constexpr double kWeightTolerance = 1e-9;

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

void require_ops(const std::vector<CMatrix>& ops, const char* what) {
  if (ops.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs at least one operator");
  const Eigen::Index d = ops.front().rows();
  for (const auto& m : ops) {
    if (m.rows() != d || m.cols() != d) {
      throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": operators must share one square dimension");
    }
    require_finite(m, what);
  }
  require_dim_cap(static_cast<std::size_t>(d * d), static_cast<std::size_t>(d * d));
}

}  // namespace

LinearMap LinearMap::from_kraus(std::vector<CMatrix> ops) {
  require_ops(ops, "LinearMap");
  LinearMap m;
  m.dim_ = static_cast<std::size_t>(ops.front().rows());
  m.rep_ = std::move(ops);
  return m;
}

LinearMap LinearMap::from_superoperator(CMatrix superop) {
  require_square(superop, "superoperator");
  require_finite(superop, "superoperator");
  const auto n = static_cast<std::size_t>(superop.rows());
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n || d == 0) throw Error(ErrorKind::DimensionMismatch, "superoperator size must be a perfect square");
  require_dim_cap(n, n);
  LinearMap m;
  m.dim_ = d;
  m.rep_ = std::move(superop);
  return m;
}

CMatrix LinearMap::superoperator() const {
  if (!is_kraus()) return std::get<CMatrix>(rep_);
  const auto n = static_cast<Eigen::Index>(dim_ * dim_);
  CMatrix s = CMatrix::Zero(n, n);
  for (const auto& k : kraus_ops()) s += kron(k, CMatrix(k.conjugate()));
  return s;
}

CMatrix LinearMap::operator()(const CMatrix& x) const {
  const auto d = static_cast<Eigen::Index>(dim_);
  if (x.rows() != d || x.cols() != d) throw Error(ErrorKind::DimensionMismatch, "LinearMap: operand dimension mismatch");
  if (is_kraus()) {
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto& k : kraus_ops()) out += k * x * k.adjoint();
    return out;
  }
  const CMatrix& s = std::get<CMatrix>(rep_);
  CVector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = x(i, j);
  }
  const CVector w = s * v;
  CMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = w(i * d + j);
  }
  return out;
}

Validated<KrausChannel> assert_channel(std::vector<CMatrix> ops, const Tolerances& tol) {
  require_ops(ops, "channel");
  const Eigen::Index d = ops.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& m : ops) sum += m.adjoint() * m;
  sum = hermitian_part(sum);
  const CMatrix identity = CMatrix::Identity(d, d);
  const double completeness = max_abs(sum - identity);
  if (completeness <= 1e-9) return KrausChannel{std::move(ops), TraceFlag::Preserving};

  const CMatrix slack = identity - sum;
  const double min_ev = hermitian_eig(slack, tol).min();
  if (min_ev >= -tol.positivity * Tolerances::scale(slack)) {
    return KrausChannel{std::move(ops), TraceFlag::NonIncreasing};
  }
  Diagnostic diag;
  diag.violations.push_back({"completeness", completeness, "max |sum M_k^dagger M_k - I|"});
  diag.violations.push_back({"trace-non-increasing", -min_ev, "most negative eigenvalue of I - sum M_k^dagger M_k"});
  return diag;
}

KrausChannel make_channel(std::vector<CMatrix> ops, const Tolerances& tol) {
  auto checked = assert_channel(std::move(ops), tol);
  if (!checked) throw Error(ErrorKind::InvalidArgument, "not a quantum operation: " + checked.diagnostic().to_string());
  return std::move(checked).value();
}

CMatrix act(const KrausChannel& ch, const CMatrix& x) {
  const auto d = static_cast<Eigen::Index>(ch.dim());
  if (x.rows() != d || x.cols() != d) throw Error(ErrorKind::DimensionMismatch, "channel operand dimension mismatch");
  CMatrix out = CMatrix::Zero(d, d);
  for (const auto& m : ch.kraus_ops) out += m * x * m.adjoint();
  return out;
}

ChannelOutput apply(const KrausChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.dim()) throw Error(ErrorKind::DimensionMismatch, "apply: state and channel dimensions differ");
  const CMatrix out = hermitian_part(act(ch, rho.matrix()));
  const double tr = out.trace().real();
  if (tr <= kZeroProbability) return {std::max(tr, 0.0), std::nullopt};
  if (ch.trace_flag == TraceFlag::Preserving) return {tr, DensityOperator::from(out, rho.dims())};
  return {tr, DensityOperator::from(out / tr, rho.dims())};
}

LinearMap dual(const KrausChannel& ch) {
  std::vector<CMatrix> adj;
  adj.reserve(ch.size());
  for (const auto& m : ch.kraus_ops) adj.push_back(m.adjoint());
  return LinearMap::from_kraus(std::move(adj));
}

CMatrix apply_dual(const KrausChannel& ch, const CMatrix& x) {
  const auto d = static_cast<Eigen::Index>(ch.dim());
  if (x.rows() != d || x.cols() != d) throw Error(ErrorKind::DimensionMismatch, "dual operand dimension mismatch");
  CMatrix out = CMatrix::Zero(d, d);
  for (const auto& m : ch.kraus_ops) out += m.adjoint() * x * m;
  return out;
}

KrausChannel compose(const KrausChannel& e2, const KrausChannel& e1) {
  if (e1.dim() != e2.dim()) throw Error(ErrorKind::DimensionMismatch, "compose: channel dimensions differ");
  std::vector<CMatrix> ops;
  ops.reserve(e1.size() * e2.size());
  for (const auto& m1 : e1.kraus_ops) {
    for (const auto& m2 : e2.kraus_ops) ops.push_back(m2 * m1);
  }
  return make_channel(std::move(ops));
}

LinearMap as_linear_map(const KrausChannel& ch) { return LinearMap::from_kraus(ch.kraus_ops); }

ChoiMatrix choi(const LinearMap& m) {
  const std::size_t d = m.dim();
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix c = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      CMatrix unit = CMatrix::Zero(n, n);
      unit(k, l) = 1.0;
      const CMatrix image = m(unit);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) c(i * n + k, j * n + l) = image(i, j) / static_cast<double>(d);
      }
    }
  }
  return {std::move(c), d};
}

ChoiMatrix choi(const KrausChannel& ch) { return choi(as_linear_map(ch)); }

KrausChannel kraus_from_choi(const ChoiMatrix& c, const Tolerances& tol) {
  const auto d = static_cast<Eigen::Index>(c.input_dim);
  if (c.mat.rows() != d * d || c.mat.cols() != d * d) {
    throw Error(ErrorKind::DimensionMismatch, "Choi matrix size does not match input_dim^2");
  }
  const Spectrum spec = hermitian_eig(c.mat, tol);
  if (spec.min() < -tol.positivity * Tolerances::scale(c.mat)) {
    throw NotCompletelyPositiveError(spec.min(), spec.vector(spec.size() - 1));
  }
  std::vector<CMatrix> ops;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double p = spec.eigenvalues(k);
    if (p < kDropWeight) continue;
    const double weight = std::sqrt(static_cast<double>(d) * p);
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = weight * spec.eigenvectors(i * d + j, k);
    }
    ops.push_back(std::move(m));
  }
  if (ops.empty()) throw Error(ErrorKind::InvalidArgument, "kraus_from_choi: Choi matrix is zero");
  return make_channel(std::move(ops), tol);
}

CMatrix action_from_choi(const ChoiMatrix& c, const CVector& psi) {
  const auto d = static_cast<Eigen::Index>(c.input_dim);
  if (psi.size() != d) throw Error(ErrorKind::DimensionMismatch, "action_from_choi: vector dimension mismatch");
  // d <psi~| C |psi~> on the second factor, psi~ = conj(psi).
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) acc += psi(k) * c.mat(i * d + k, j * d + l) * std::conj(psi(l));
      }
      out(i, j) = static_cast<double>(d) * acc;
    }
  }
  return out;
}

CPVerdict is_completely_positive(const LinearMap& m, const Tolerances& tol) {
  const ChoiMatrix c = choi(m);
  const bool hermitian = hermiticity_violation(c.mat) <= tol.hermiticity * Tolerances::scale(c.mat);
  const Spectrum spec = hermitian_eig(hermitian_part(c.mat), tol);
  const double min_ev = spec.min();
  CPVerdict v{hermitian && min_ev >= -tol.positivity * Tolerances::scale(c.mat), min_ev, std::nullopt};
  if (min_ev < 0.0 && !v.completely_positive) v.witness = spec.vector(spec.size() - 1);
  return v;
}

Dilation stinespring(const KrausChannel& ch, const Tolerances& tol) {
  if (ch.trace_flag != TraceFlag::Preserving) {
    throw Error(ErrorKind::Unsupported,
                "stinespring: only trace-preserving channels are dilated; dilate the completed instrument instead");
  }
  Dilation dil;
  dil.system_dim = ch.dim();
  dil.ancilla_dim = ch.size();
  dil.ancilla_state = basis_vector(ch.size(), 0);
  dil.unitary = dilation_unitary(ch.kraus_ops, dil.ancilla_state, tol);
  return dil;
}

CMatrix dilation_action(const Dilation& dil, const CMatrix& x) {
  const auto d = static_cast<Eigen::Index>(dil.system_dim);
  if (x.rows() != d || x.cols() != d) throw Error(ErrorKind::DimensionMismatch, "dilation operand dimension mismatch");
  const CMatrix global = dil.unitary * kron(x, projector(dil.ancilla_state)) * dil.unitary.adjoint();
  return partial_trace(global, SystemDims{dil.system_dim, dil.ancilla_dim}, {0});
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "same_channel: dimensions differ");
  return max_abs(choi(a).mat - choi(b).mat);
}

bool same_channel(const KrausChannel& a, const KrausChannel& b, double tolerance) {
  return choi_distance(a, b) <= tolerance;
}

KrausChannel identity_channel(std::size_t d) {
  require_dim_cap(d, d);
  const auto n = static_cast<Eigen::Index>(d);
  return KrausChannel{{CMatrix::Identity(n, n)}, TraceFlag::Preserving};
}

KrausChannel unitary_channel(const CMatrix& u) {
  require_square(u, "unitary_channel");
  if (unitarity_violation(u) > kUnitaryTolerance) {
    throw Error(ErrorKind::InvalidArgument, "unitary_channel: operator is not unitary");
  }
  return KrausChannel{{u}, TraceFlag::Preserving};
}

KrausChannel depolarizing(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "depolarizing: gamma must lie in [0, 1]");
  }
  std::vector<CMatrix> ops;
  ops.push_back(std::sqrt(1.0 - gamma) * pauli(0));
  for (int k = 1; k <= 3; ++k) ops.push_back(std::sqrt(gamma / 3.0) * pauli(k));
  return KrausChannel{std::move(ops), TraceFlag::Preserving};
}

double depolarizing_p(double gamma) { return 1.0 - 4.0 * gamma / 3.0; }

double depolarizing_gamma(double p) { return 3.0 * (1.0 - p) / 4.0; }

KrausChannel random_unitary_channel(std::span<const double> weights, std::span<const CMatrix> unitaries) {
  if (weights.empty() || weights.size() != unitaries.size()) {
    throw Error(ErrorKind::InvalidArgument, "random_unitary_channel: one weight per unitary required");
  }
  double total = 0.0;
  for (double p : weights) {
    if (!(p >= 0.0)) throw Error(ErrorKind::Normalization, "random_unitary_channel: negative weight");
    total += p;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw Error(ErrorKind::Normalization, "random_unitary_channel: weights sum to " + std::to_string(total));
  }
  std::vector<CMatrix> ops;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    require_square(unitaries[k], "random_unitary_channel");
    if (unitaries[k].rows() != unitaries.front().rows()) {
      throw Error(ErrorKind::DimensionMismatch, "random_unitary_channel: unitaries differ in dimension");
    }
    if (unitarity_violation(unitaries[k]) > kUnitaryTolerance) {
      throw Error(ErrorKind::InvalidArgument, "random_unitary_channel: member " + std::to_string(k) + " is not unitary");
    }
    ops.push_back(std::sqrt(weights[k]) * unitaries[k]);
  }
  return make_channel(std::move(ops));
}

LinearMap transposition_map(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "transposition_map needs d >= 2");
  require_dim_cap(d * d, d * d);
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix s = CMatrix::Zero(n * n, n * n);
  // vec(X^T)[i*d + j] = X[j, i] = vec(X)[j*d + i]
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
  }
  return LinearMap::from_superoperator(std::move(s));
}

PptResult ppt_check(const DensityOperator& rho, std::optional<std::size_t> which, const Tolerances& tol) {
  if (rho.dims().factors() != 2) throw Error(ErrorKind::InvalidArgument, "ppt_check needs a bipartite state");
  const CMatrix pt = partial_transpose(rho.matrix(), rho.dims(), which.value_or(1));
  const Spectrum spec = hermitian_eig(pt, tol);
  return {spec.eigenvalues, spec.min(), spec.min() < -tol.positivity * Tolerances::scale(pt)};
}

}  // namespace qkit
