#include "qkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qkit {

SystemDims::SystemDims(std::initializer_list<std::size_t> dims) : SystemDims(std::vector<std::size_t>(dims)) {}

SystemDims::SystemDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorKind::InvalidArgument, "SystemDims needs at least one factor");
  std::size_t product = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "SystemDims factors must be positive");
    product *= d;
    if (product > kDimensionCap) {
      throw Error(ErrorKind::DimensionCap, "dimension product " + std::to_string(product) + " exceeds cap");
    }
  }
}

std::size_t SystemDims::total() const {
  std::size_t product = 1;
  for (std::size_t d : dims_) product *= d;
  return product;
}

std::string SystemDims::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ']';
  return os.str();
}

double Tolerances::scale(const CMatrix& m) { return std::max(1.0, max_abs(m)); }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionCap: return "dimension-cap";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::NotFinite: return "not-finite";
    case ErrorKind::Hermiticity: return "hermiticity";
    case ErrorKind::Isometry: return "isometry";
    case ErrorKind::Normalization: return "normalization";
    case ErrorKind::NotAState: return "not-a-state";
    case ErrorKind::NotCompletelyPositive: return "not-completely-positive";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Schema: return "schema";
  }
  return "unknown";
}

namespace {
std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}
}  // namespace

HermiticityError::HermiticityError(double violation)
    : Error(ErrorKind::Hermiticity, "matrix is not Hermitian: max |M - M^dagger| = " + fmt_double(violation)),
      violation_(violation) {}

IsometryError::IsometryError(double deviation)
    : Error(ErrorKind::Isometry, "columns are not orthonormal: max inner-product deviation = " + fmt_double(deviation)),
      deviation_(deviation) {}

NotCompletelyPositiveError::NotCompletelyPositiveError(double eigenvalue, CVector witness)
    : Error(ErrorKind::NotCompletelyPositive,
            "map is not completely positive: Choi eigenvalue " + fmt_double(eigenvalue)),
      eigenvalue_(eigenvalue),
      witness_(std::move(witness)) {}

std::optional<double> Diagnostic::magnitude(const std::string& condition) const {
  for (const auto& v : violations) {
    if (v.condition == condition) return v.magnitude;
  }
  return std::nullopt;
}

std::string Diagnostic::to_string() const {
  if (violations.empty()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].condition << " violated by " << fmt_double(violations[i].magnitude);
    if (!violations[i].detail.empty()) os << " (" << violations[i].detail << ')';
  }
  return os.str();
}

CMatrix dagger(const CMatrix& m) { return m.adjoint(); }

Complex trace(const CMatrix& m) { return m.trace(); }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool all_finite(const CMatrix& m) { return m.allFinite(); }

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::NotFinite, std::string(what) + " has non-finite entries");
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be square, got " +
                                                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_dim_cap(std::size_t rows, std::size_t cols) {
  if (rows > kDimensionCap || cols > kDimensionCap) {
    throw Error(ErrorKind::DimensionCap, "matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                                             " exceeds dimension cap " + std::to_string(kDimensionCap));
  }
}

double hermiticity_violation(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

double unitarity_violation(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

CMatrix outer(const CVector& a, const CVector& b) { return a * b.adjoint(); }

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CVector basis_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

CMatrix pauli(int k) {
  const Complex i{0.0, 1.0};
  CMatrix s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw Error(ErrorKind::InvalidArgument, "Pauli index must be 0..3");
  }
  return s;
}

}  // namespace qkit
