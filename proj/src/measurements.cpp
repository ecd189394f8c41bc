#include "qkit/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qkit/random.hpp"
#include "qkit/tensor.hpp"

namespace qkit {

namespace {

constexpr double kBornClip = 1e-10;
constexpr double kSampleSigmaBound = 5.0;

void check_labels(std::vector<std::string>& labels, std::size_t n, const char* what) {
  if (labels.empty()) labels = default_labels(n);
  if (labels.size() != n) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + ": label count does not match outcome count");
  }
}

void require_same_square(const std::vector<CMatrix>& ops, const char* what) {
  if (ops.empty()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs at least one element");
  const Eigen::Index d = ops.front().rows();
  for (const auto& m : ops) {
    if (m.rows() != d || m.cols() != d) {
      throw Error(ErrorKind::DimensionMismatch, std::string(what) + " elements must share one square dimension");
    }
  }
  require_dim_cap(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
}

void require_dim(const DensityOperator& rho, std::size_t d, const char* what) {
  if (rho.dim() != d) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": state dimension " + std::to_string(rho.dim()) +
                                                  " does not match " + std::to_string(d));
  }
}

void require_unitary_basis(const CMatrix& basis, const Tolerances& tol, const char* what) {
  require_square(basis, what);
  const double dev = unitarity_violation(basis);
  if (dev > tol.orthonormality) throw IsometryError(dev);
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

Validated<POVM> assert_povm(std::vector<CMatrix> elements, std::vector<std::string> labels, const Tolerances& tol) {
  require_same_square(elements, "POVM");
  check_labels(labels, elements.size(), "POVM");
  const Eigen::Index d = elements.front().rows();

  Diagnostic diag;
  CMatrix sum = CMatrix::Zero(d, d);
  for (std::size_t x = 0; x < elements.size(); ++x) {
    const CMatrix& e = elements[x];
    if (!e.allFinite()) {
      diag.violations.push_back({"finite", std::numeric_limits<double>::infinity(), "element " + labels[x]});
      continue;
    }
    const double scale = Tolerances::scale(e);
    const double herm = hermiticity_violation(e);
    if (herm > tol.hermiticity * scale) {
      diag.violations.push_back({"hermiticity", herm, "element " + labels[x]});
    }
    const double min_ev = hermitian_eig(hermitian_part(e), tol).min();
    if (min_ev < -tol.positivity * scale) diag.violations.push_back({"positivity", -min_ev, "element " + labels[x]});
    sum += e;
  }
  const double completeness = max_abs(sum - CMatrix::Identity(d, d));
  if (completeness > kCompletenessTolerance) {
    diag.violations.push_back({"completeness", completeness, "max |sum Pi_x - I|"});
  }
  if (!diag.empty()) return diag;
  return POVM{std::move(labels), std::move(elements)};
}

Validated<Instrument> assert_instrument(std::vector<CMatrix> ops, std::vector<std::string> labels) {
  require_same_square(ops, "instrument");
  check_labels(labels, ops.size(), "instrument");
  const Eigen::Index d = ops.front().rows();
  Diagnostic diag;
  CMatrix sum = CMatrix::Zero(d, d);
  for (std::size_t x = 0; x < ops.size(); ++x) {
    if (!ops[x].allFinite()) {
      diag.violations.push_back({"finite", std::numeric_limits<double>::infinity(), "operator " + labels[x]});
      continue;
    }
    sum += ops[x].adjoint() * ops[x];
  }
  const double completeness = max_abs(sum - CMatrix::Identity(d, d));
  if (completeness > kCompletenessTolerance) {
    diag.violations.push_back({"completeness", completeness, "max |sum M_x^dagger M_x - I|"});
  }
  if (!diag.empty()) return diag;
  return Instrument{std::move(labels), std::move(ops)};
}

POVM detection_to_povm(const Instrument& inst) {
  POVM p;
  p.labels = inst.labels;
  for (const auto& m : inst.detection_ops) p.elements.push_back(hermitian_part(m.adjoint() * m));
  return p;
}

Instrument povm_to_detection(const POVM& povm, const std::vector<CMatrix>& rotations, const Tolerances& tol) {
  if (!rotations.empty() && rotations.size() != povm.size()) {
    throw Error(ErrorKind::InvalidArgument, "povm_to_detection: one rotation per outcome required");
  }
  const auto d = static_cast<Eigen::Index>(povm.dim());
  Instrument inst;
  inst.labels = povm.labels;
  for (std::size_t x = 0; x < povm.size(); ++x) {
    CMatrix root = sqrt_psd(povm.elements[x], tol);
    if (!rotations.empty()) {
      const CMatrix& u = rotations[x];
      if (u.rows() != d || u.cols() != d) {
        throw Error(ErrorKind::DimensionMismatch, "povm_to_detection: rotation dimension mismatch");
      }
      if (unitarity_violation(u) > 1e-9) {
        throw Error(ErrorKind::InvalidArgument, "povm_to_detection: rotation " + povm.labels[x] + " is not unitary");
      }
      root = u * root;
    }
    inst.detection_ops.push_back(std::move(root));
  }
  return inst;
}

std::vector<double> born_rule(const DensityOperator& rho, const POVM& povm) {
  require_dim(rho, povm.dim(), "born_rule");
  std::vector<double> p;
  p.reserve(povm.size());
  for (const auto& e : povm.elements) {
    double px = (rho.matrix() * e).trace().real();
    if (px < 0.0 && px >= -kBornClip) px = 0.0;
    p.push_back(px);
  }
  return p;
}

MeasurementResult measure(const DensityOperator& rho, const Instrument& inst) {
  require_dim(rho, inst.dim(), "measure");
  MeasurementResult result;
  for (std::size_t x = 0; x < inst.size(); ++x) {
    const CMatrix& m = inst.detection_ops[x];
    const CMatrix branch = hermitian_part(m * rho.matrix() * m.adjoint());
    const double p = branch.trace().real();
    result.probabilities.push_back(std::max(p, 0.0));
    if (p <= kZeroProbability) {
      result.zero_probability.push_back(x);
      continue;
    }
    result.records.push_back({x, inst.labels[x], p, DensityOperator::from(branch / p, rho.dims())});
  }
  return result;
}

DensityOperator nonselective(const DensityOperator& rho, const Instrument& inst) {
  require_dim(rho, inst.dim(), "nonselective");
  CMatrix out = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& m : inst.detection_ops) out += m * rho.matrix() * m.adjoint();
  return DensityOperator::from(hermitian_part(out), rho.dims());
}

NaimarkExtension canonical_naimark(const Instrument& inst, const std::optional<CVector>& ancilla_state,
                                   const Tolerances& tol) {
  const std::size_t n = inst.size();
  const CVector omega = ancilla_state.value_or(basis_vector(n, 0));
  if (static_cast<std::size_t>(omega.size()) != n || std::abs(omega.norm() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "canonical_naimark: ancilla state must be a unit vector of dimension " +
                                                std::to_string(n));
  }
  NaimarkExtension ext;
  ext.system_dim = inst.dim();
  ext.ancilla_dim = n;
  ext.ancilla_state = omega;
  ext.unitary = dilation_unitary(inst.detection_ops, omega, tol);
  ext.labels = inst.labels;
  return ext;
}

POVM recovered_povm(const NaimarkExtension& ext) {
  const auto d = static_cast<Eigen::Index>(ext.system_dim);
  const SystemDims dims{ext.system_dim, ext.ancilla_dim};
  const CMatrix omega_proj = kron(CMatrix::Identity(d, d), projector(ext.ancilla_state));
  POVM p;
  p.labels = ext.labels;
  for (std::size_t x = 0; x < ext.ancilla_dim; ++x) {
    const CMatrix px = kron(CMatrix::Identity(d, d), projector(basis_vector(ext.ancilla_dim, x)));
    const CMatrix heis = ext.unitary.adjoint() * px * ext.unitary;
    p.elements.push_back(hermitian_part(partial_trace(omega_proj * heis, dims, {0})));
  }
  return p;
}

CVector extension_branch(const NaimarkExtension& ext, const CVector& phi, std::size_t outcome) {
  if (static_cast<std::size_t>(phi.size()) != ext.system_dim) {
    throw Error(ErrorKind::DimensionMismatch, "extension_branch: vector dimension mismatch");
  }
  if (outcome >= ext.ancilla_dim) throw Error(ErrorKind::InvalidArgument, "extension_branch: outcome out of range");
  const CVector global = ext.unitary * kron(phi, ext.ancilla_state);
  const auto n = static_cast<Eigen::Index>(ext.ancilla_dim);
  CVector out(static_cast<Eigen::Index>(ext.system_dim));
  for (Eigen::Index r = 0; r < out.size(); ++r) out(r) = global(r * n + static_cast<Eigen::Index>(outcome));
  return out;
}

ExtensionStatistics extension_statistics(const NaimarkExtension& ext, const DensityOperator& rho) {
  require_dim(rho, ext.system_dim, "extension_statistics");
  const auto d = static_cast<Eigen::Index>(ext.system_dim);
  const SystemDims dims{ext.system_dim, ext.ancilla_dim};
  const CMatrix global = ext.unitary * kron(rho.matrix(), projector(ext.ancilla_state)) * ext.unitary.adjoint();
  ExtensionStatistics stats;
  for (std::size_t x = 0; x < ext.ancilla_dim; ++x) {
    const CMatrix px = kron(CMatrix::Identity(d, d), projector(basis_vector(ext.ancilla_dim, x)));
    const CMatrix projected = px * global * px;
    const double p = projected.trace().real();
    stats.probabilities.push_back(std::max(p, 0.0));
    if (p <= kZeroProbability) {
      stats.conditional_states.emplace_back(std::nullopt);
      continue;
    }
    stats.conditional_states.emplace_back(
        DensityOperator::from(hermitian_part(partial_trace(projected, dims, {0})) / p, rho.dims()));
  }
  return stats;
}

ConditionalState extension_partner_state(const NaimarkExtension& ext, const DensityOperator& rho_ab,
                                         std::size_t outcome) {
  const SystemDims& dims = rho_ab.dims();
  if (dims.factors() != 2 || dims[0] != ext.system_dim) {
    throw Error(ErrorKind::DimensionMismatch, "extension_partner_state: expected a bipartite state with A first");
  }
  if (outcome >= ext.ancilla_dim) throw Error(ErrorKind::InvalidArgument, "outcome out of range");
  const std::size_t d_b = dims[1];
  const auto db = static_cast<Eigen::Index>(d_b);
  const auto da = static_cast<Eigen::Index>(ext.system_dim);

  // U acts on (A, anc); move it to the ordering (A, B, anc).
  const CMatrix u_a_anc_b = kron(ext.unitary, CMatrix::Identity(db, db));
  const std::size_t perm[] = {0, 2, 1};
  const CMatrix u = permute_factors(u_a_anc_b, SystemDims{ext.system_dim, ext.ancilla_dim, d_b}, perm);

  const SystemDims global_dims{ext.system_dim, d_b, ext.ancilla_dim};
  const CMatrix global = u * kron(rho_ab.matrix(), projector(ext.ancilla_state)) * u.adjoint();
  const CMatrix px = kron(CMatrix::Identity(da * db, da * db), projector(basis_vector(ext.ancilla_dim, outcome)));
  const CMatrix projected = px * global * px;
  const double p = projected.trace().real();
  if (p <= kZeroProbability) return {std::max(p, 0.0), std::nullopt};
  const CMatrix partner = partial_trace(projected, global_dims, {1}) / p;
  return {p, DensityOperator::from(hermitian_part(partner), SystemDims::single(d_b))};
}

Roulette quantum_roulette(std::span<const CMatrix> bases, std::span<const double> weights,
                          std::vector<std::string> labels, const Tolerances& tol) {
  if (bases.empty()) throw Error(ErrorKind::InvalidArgument, "quantum_roulette needs at least one basis");
  if (bases.size() != weights.size()) {
    throw Error(ErrorKind::InvalidArgument, "quantum_roulette: one weight per basis required");
  }
  double total = 0.0;
  for (double z : weights) {
    if (!(z >= 0.0)) throw Error(ErrorKind::Normalization, "quantum_roulette: weights must be non-negative");
    total += z;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::Normalization, "quantum_roulette: weights sum to " + std::to_string(total));
  }
  const Eigen::Index d = bases.front().rows();
  for (const auto& b : bases) {
    if (b.rows() != d) throw Error(ErrorKind::DimensionMismatch, "quantum_roulette: bases differ in dimension");
    require_unitary_basis(b, tol, "quantum_roulette basis");
  }
  check_labels(labels, static_cast<std::size_t>(d), "quantum_roulette");

  const std::size_t k_count = bases.size();
  const auto kk = static_cast<Eigen::Index>(k_count);
  Roulette r;
  r.bases.assign(bases.begin(), bases.end());
  r.weights.assign(weights.begin(), weights.end());

  std::vector<CMatrix> elements;
  for (Eigen::Index x = 0; x < d; ++x) {
    CMatrix pi = CMatrix::Zero(d, d);
    for (std::size_t k = 0; k < k_count; ++k) pi += weights[k] * projector(bases[k].col(x));
    elements.push_back(hermitian_part(pi));
  }
  auto povm = assert_povm(std::move(elements), labels, tol);
  if (!povm) throw Error(ErrorKind::InvalidArgument, "quantum_roulette: " + povm.diagnostic().to_string());
  r.povm = std::move(povm).value();

  r.probe.probe_dim = k_count;
  r.probe.probe_state = CVector::Zero(kk);
  for (std::size_t k = 0; k < k_count; ++k) r.probe.probe_state(static_cast<Eigen::Index>(k)) = std::sqrt(weights[k]);
  for (Eigen::Index x = 0; x < d; ++x) {
    CMatrix q = CMatrix::Zero(d * kk, d * kk);
    for (std::size_t k = 0; k < k_count; ++k) {
      q += kron(projector(bases[k].col(x)), projector(basis_vector(k_count, k)));
    }
    r.probe.projectors.push_back(std::move(q));
  }
  double defect = 0.0;
  for (std::size_t x = 0; x < r.probe.projectors.size(); ++x) {
    for (std::size_t y = 0; y < r.probe.projectors.size(); ++y) {
      const CMatrix prod = r.probe.projectors[x] * r.probe.projectors[y];
      const CMatrix expected = (x == y) ? r.probe.projectors[x] : CMatrix::Zero(d * kk, d * kk);
      defect = std::max(defect, max_abs(prod - expected));
    }
  }
  r.probe.projector_defect = defect;
  return r;
}

std::vector<double> roulette_probe_statistics(const Roulette& roulette, const DensityOperator& rho) {
  require_dim(rho, roulette.povm.dim(), "roulette_probe_statistics");
  const CMatrix global = kron(rho.matrix(), projector(roulette.probe.probe_state));
  std::vector<double> p;
  for (const auto& q : roulette.probe.projectors) p.push_back(std::max((global * q).trace().real(), 0.0));
  return p;
}

ConditionalState roulette_probe_post_state(const Roulette& roulette, const DensityOperator& rho, std::size_t outcome) {
  require_dim(rho, roulette.povm.dim(), "roulette_probe_post_state");
  if (outcome >= roulette.probe.projectors.size()) throw Error(ErrorKind::InvalidArgument, "outcome out of range");
  const CMatrix& q = roulette.probe.projectors[outcome];
  const CMatrix projected = q * kron(rho.matrix(), projector(roulette.probe.probe_state)) * q;
  const double p = projected.trace().real();
  if (p <= kZeroProbability) return {std::max(p, 0.0), std::nullopt};
  const SystemDims dims{rho.dim(), roulette.probe.probe_dim};
  return {p, DensityOperator::from(hermitian_part(partial_trace(projected, dims, {0})) / p, rho.dims())};
}

ConditionalState roulette_mixed_post_state(const Roulette& roulette, const DensityOperator& rho, std::size_t outcome) {
  require_dim(rho, roulette.povm.dim(), "roulette_mixed_post_state");
  if (outcome >= roulette.povm.size()) throw Error(ErrorKind::InvalidArgument, "outcome out of range");
  CMatrix acc = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t k = 0; k < roulette.bases.size(); ++k) {
    const CMatrix pk = projector(roulette.bases[k].col(static_cast<Eigen::Index>(outcome)));
    acc += roulette.weights[k] * pk * rho.matrix() * pk;
  }
  const double p = acc.trace().real();
  if (p <= kZeroProbability) return {std::max(p, 0.0), std::nullopt};
  return {p, DensityOperator::from(hermitian_part(acc) / p, rho.dims())};
}

CMatrix sigma_alpha_basis(double alpha) {
  const Complex phase = std::polar(1.0, alpha);
  CMatrix b(2, 2);
  b << M_SQRT1_2, M_SQRT1_2, phase * M_SQRT1_2, -phase * M_SQRT1_2;
  return b;
}

CMatrix sigma_z_basis() { return CMatrix::Identity(2, 2); }

CMatrix sigma_x_basis() { return sigma_alpha_basis(0.0); }

Instrument heisenberg_instrument(const CMatrix& basis_a, const CMatrix& basis_b, std::size_t target,
                                 const Tolerances& tol) {
  require_unitary_basis(basis_a, tol, "heisenberg_instrument basis A");
  require_unitary_basis(basis_b, tol, "heisenberg_instrument basis B");
  if (basis_a.rows() != basis_b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "heisenberg_instrument: bases differ in dimension");
  }
  if (target >= static_cast<std::size_t>(basis_b.cols())) {
    throw Error(ErrorKind::InvalidArgument, "heisenberg_instrument: target index out of range");
  }
  const CVector b = basis_b.col(static_cast<Eigen::Index>(target));
  Instrument inst;
  for (Eigen::Index a = 0; a < basis_a.cols(); ++a) inst.detection_ops.push_back(outer(b, basis_a.col(a)));
  inst.labels = default_labels(inst.detection_ops.size());
  return inst;
}

Instrument photodetector_instrument(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "photodetector_instrument needs d >= 2");
  require_dim_cap(d, d);
  Instrument inst;
  for (std::size_t n = 0; n < d; ++n) inst.detection_ops.push_back(outer(basis_vector(d, 0), basis_vector(d, n)));
  inst.labels = default_labels(d);
  return inst;
}

POVM trine_povm() {
  POVM p;
  for (int x = 0; x < 3; ++x) {
    const double angle = 2.0 * std::numbers::pi * x / 3.0;
    CVector theta(2);
    theta << std::cos(angle), std::sin(angle);
    p.elements.push_back((2.0 / 3.0) * projector(theta));
  }
  p.labels = default_labels(3);
  return p;
}

SampleResult sample_outcomes(const DensityOperator& rho, const Instrument& inst, std::uint64_t n_shots,
                             std::uint64_t seed) {
  if (n_shots == 0) throw Error(ErrorKind::InvalidArgument, "sample_outcomes needs at least one shot");
  SampleResult res;
  res.probabilities = born_rule(rho, detection_to_povm(inst));
  const std::size_t n = res.probabilities.size();

  std::vector<double> cumulative(n);
  double acc = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    acc += std::max(res.probabilities[x], 0.0);
    cumulative[x] = acc;
  }
  for (double& c : cumulative) c /= acc;

  Rng rng(seed);
  res.counts.assign(n, 0);
  for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t x = it == cumulative.end() ? n - 1 : static_cast<std::size_t>(it - cumulative.begin());
    ++res.counts[x];
  }

  const double shots = static_cast<double>(n_shots);
  for (std::size_t x = 0; x < n; ++x) {
    const double freq = static_cast<double>(res.counts[x]) / shots;
    res.frequencies.push_back(freq);
    const double p = res.probabilities[x];
    const double sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / shots);
    const double dev = std::abs(freq - p);
    double z = 0.0;
    if (sigma > 0.0) {
      z = dev / sigma;
    } else if (dev > 1e-12) {
      z = std::numeric_limits<double>::infinity();
    }
    res.max_sigma = std::max(res.max_sigma, z);
  }
  res.within_bound = res.max_sigma <= kSampleSigmaBound;
  return res;
}

}  // namespace qkit
