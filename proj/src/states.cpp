#include "qkit/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qkit/tensor.hpp"

namespace qkit {

namespace {

constexpr double kTraceTolerance = 1e-9;
constexpr double kEnsembleTolerance = 1e-9;
constexpr double kUnitNormTolerance = 1e-12;
constexpr double kBlochTolerance = 1e-9;

SystemDims resolve_dims(const CMatrix& m, const std::optional<SystemDims>& dims) {
  if (!dims) return SystemDims::single(static_cast<std::size_t>(m.rows()));
  if (dims->total() != static_cast<std::size_t>(m.rows())) {
    throw Error(ErrorKind::DimensionMismatch,
                "dims " + dims->to_string() + " do not match matrix of size " + std::to_string(m.rows()));
  }
  return *dims;
}

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

Validated<DensityOperator> assert_density(const CMatrix& m, std::optional<SystemDims> dims, const Tolerances& tol) {
  require_square(m, "density operator");
  require_dim_cap(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  SystemDims resolved = resolve_dims(m, dims);

  Diagnostic diag;
  if (!m.allFinite()) {
    diag.violations.push_back({"finite", std::numeric_limits<double>::infinity(), "non-finite entries"});
    return diag;
  }
  const double scale = Tolerances::scale(m);
  const double herm = hermiticity_violation(m);
  if (herm > tol.hermiticity * scale) diag.violations.push_back({"hermiticity", herm, "max |M - M^dagger|"});

  // Positivity is judged on the Hermitian part so that a non-Hermitian input
  // still gets a full report.
  const Spectrum spec = hermitian_eig(hermitian_part(m), tol);
  if (spec.min() < -tol.positivity * scale) {
    diag.violations.push_back({"positivity", -spec.min(), "most negative eigenvalue"});
  }
  const Complex tr = m.trace();
  const double trace_dev = std::abs(tr - 1.0);
  if (trace_dev > kTraceTolerance) diag.violations.push_back({"trace", trace_dev, "|Tr - 1|"});

  if (!diag.empty()) return diag;
  return DensityOperator(hermitian_part(m), std::move(resolved));
}

DensityOperator DensityOperator::from(const CMatrix& m, std::optional<SystemDims> dims, const Tolerances& tol) {
  auto checked = assert_density(m, std::move(dims), tol);
  if (!checked) throw Error(ErrorKind::NotAState, "not a density operator: " + checked.diagnostic().to_string());
  return std::move(checked).value();
}

DensityOperator DensityOperator::pure(const CVector& psi, std::optional<SystemDims> dims) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw Error(ErrorKind::Normalization, "pure state vector is not unit-norm (norm " + std::to_string(norm) + ")");
  }
  return from(projector(psi), std::move(dims));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return from(CMatrix::Identity(n, n) / static_cast<double>(d));
}

DensityOperator density_from_ensemble(const Ensemble& ensemble) {
  if (ensemble.empty()) throw Error(ErrorKind::Normalization, "empty ensemble");
  const Eigen::Index d = ensemble.front().state.size();
  double total = 0.0;
  CMatrix rho = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const auto& member = ensemble[k];
    if (member.state.size() != d) throw Error(ErrorKind::DimensionMismatch, "ensemble members differ in dimension");
    if (!(member.probability >= 0.0)) {
      throw Error(ErrorKind::Normalization, "ensemble weight " + std::to_string(k) + " is negative");
    }
    const double norm = member.state.norm();
    if (std::abs(norm - 1.0) > kUnitNormTolerance) {
      throw Error(ErrorKind::Normalization, "ensemble state " + std::to_string(k) + " is not unit-norm");
    }
    total += member.probability;
    rho += member.probability * projector(member.state);
  }
  if (std::abs(total - 1.0) > kEnsembleTolerance) {
    throw Error(ErrorKind::Normalization, "ensemble weights sum to " + std::to_string(total));
  }
  return DensityOperator::from(rho);
}

RVector clipped_spectrum(const DensityOperator& rho, const Tolerances& tol) {
  RVector ev = hermitian_eig(rho.matrix(), tol).eigenvalues;
  const double floor = -tol.positivity * Tolerances::scale(rho.matrix());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) < floor) throw Error(ErrorKind::NotAState, "negative eigenvalue " + std::to_string(ev(k)));
    ev(k) = std::clamp(ev(k), 0.0, 1.0);
  }
  return ev;
}

PurityEntropy purity_and_entropy(const DensityOperator& rho, LogBase base, const Tolerances& tol) {
  const RVector ev = clipped_spectrum(rho, tol);
  double purity = 0.0;
  double entropy = 0.0;
  for (double lambda : ev) {
    purity += lambda * lambda;
    if (lambda > 0.0) entropy -= lambda * std::log(lambda);
  }
  if (base == LogBase::Two) entropy /= std::log(2.0);
  return {purity, std::max(entropy, 0.0)};
}

Purification purify(const DensityOperator& rho, const std::optional<CMatrix>& ancilla_unitary) {
  const Spectrum spec = hermitian_eig(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    if (spec.eigenvalues(k) > kZeroProbability) support.push_back(k);
  }
  const auto k_dim = static_cast<Eigen::Index>(support.size());
  CMatrix v = CMatrix::Identity(k_dim, k_dim);
  if (ancilla_unitary) {
    if (ancilla_unitary->rows() != k_dim || ancilla_unitary->cols() != k_dim) {
      throw Error(ErrorKind::DimensionMismatch, "purify: ancilla unitary must be " + std::to_string(k_dim) + "x" +
                                                    std::to_string(k_dim));
    }
    if (unitarity_violation(*ancilla_unitary) > 1e-9) {
      throw Error(ErrorKind::InvalidArgument, "purify: ancilla operator is not unitary");
    }
    v = *ancilla_unitary;
  }
  const auto d = static_cast<Eigen::Index>(rho.dim());
  CVector phi = CVector::Zero(d * k_dim);
  for (Eigen::Index j = 0; j < k_dim; ++j) {
    const double weight = std::sqrt(spec.eigenvalues(support[static_cast<std::size_t>(j)]));
    phi += weight * kron(CVector(spec.eigenvectors.col(support[static_cast<std::size_t>(j)])), CVector(v.col(j)));
  }
  return {phi, SystemDims{rho.dim(), static_cast<std::size_t>(k_dim)}};
}

DensityOperator reduce(const DensityOperator& rho, std::span<const std::size_t> keep) {
  CMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> kept_dims;
  for (std::size_t k : sorted) kept_dims.push_back(rho.dims()[k]);
  return DensityOperator::from(reduced, SystemDims(kept_dims));
}

DensityOperator reduce(const DensityOperator& rho, std::initializer_list<std::size_t> keep) {
  return reduce(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

ConditionalState conditional_state(const DensityOperator& rho_ab, const CMatrix& effect_on_a, const Tolerances& tol) {
  const SystemDims& dims = rho_ab.dims();
  if (dims.factors() < 2) throw Error(ErrorKind::InvalidArgument, "conditional_state needs a multipartite state");
  const auto d_a = static_cast<Eigen::Index>(dims[0]);
  if (effect_on_a.rows() != d_a || effect_on_a.cols() != d_a) {
    throw Error(ErrorKind::DimensionMismatch, "conditional_state: effect does not act on factor 0");
  }
  const Spectrum eff = hermitian_eig(effect_on_a, tol);
  const double scale = Tolerances::scale(effect_on_a);
  if (eff.min() < -tol.positivity * scale || eff.max() > 1.0 + tol.positivity * scale) {
    throw Error(ErrorKind::Precondition, "conditional_state: effect must satisfy 0 <= Pi <= I");
  }
  const auto d_rest = static_cast<Eigen::Index>(dims.total() / dims[0]);
  const CMatrix lifted = kron(effect_on_a, CMatrix::Identity(d_rest, d_rest));
  const CMatrix weighted = rho_ab.matrix() * lifted;
  const double p = weighted.trace().real();
  if (p <= kZeroProbability) return {std::max(p, 0.0), std::nullopt};

  std::vector<std::size_t> rest;
  for (std::size_t f = 1; f < dims.factors(); ++f) rest.push_back(f);
  CMatrix reduced = partial_trace(weighted, dims, rest) / p;
  std::vector<std::size_t> rest_dims(dims.values().begin() + 1, dims.values().end());
  return {p, DensityOperator::from(hermitian_part(reduced), SystemDims(rest_dims), tol)};
}

double BlochVector::norm() const { return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3); }

BlochVector bloch_vector(const DensityOperator& rho) {
  if (rho.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "bloch_vector needs a qubit state");
  const CMatrix& m = rho.matrix();
  return {(m * pauli(1)).trace().real(), (m * pauli(2)).trace().real(), (m * pauli(3)).trace().real()};
}

DensityOperator density_from_bloch(const BlochVector& r) {
  if (!std::isfinite(r.r1) || !std::isfinite(r.r2) || !std::isfinite(r.r3)) {
    throw Error(ErrorKind::NotAState, "Bloch vector has non-finite components");
  }
  const double n = r.norm();
  if (n > 1.0 + kBlochTolerance) {
    throw Error(ErrorKind::NotAState, "Bloch vector norm " + std::to_string(n) + " exceeds 1");
  }
  const CMatrix m = 0.5 * (pauli(0) + r.r1 * pauli(1) + r.r2 * pauli(2) + r.r3 * pauli(3));
  return DensityOperator::from(m);
}

}  // namespace qkit
