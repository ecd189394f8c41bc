// Core types shared by every qkit module: dense complex matrices, factor
// dimensions, numerical tolerances and the error hierarchy.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest row or column count any qkit operation will construct.
inline constexpr std::size_t kDimensionCap = 4096;

/// Ordered tensor-factor dimensions [d_A, d_B, ...] annotating a square matrix.
/// Factor 0 is the most significant index (first-factor-major convention).
class SystemDims {
 public:
  SystemDims() = default;
  SystemDims(std::initializer_list<std::size_t> dims);
  explicit SystemDims(std::vector<std::size_t> dims);

  /// Single-factor annotation for a d-dimensional space.
  static SystemDims single(std::size_t d) { return SystemDims{std::vector<std::size_t>{d}}; }

  std::size_t total() const;
  std::size_t factors() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& values() const { return dims_; }
  bool operator==(const SystemDims&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::size_t> dims_;
};

/// Validation thresholds. Each is multiplied by max(1, max-abs-entry) of the
/// matrix under test before comparison.
struct Tolerances {
  double hermiticity = 1e-9;
  double orthonormality = 1e-8;
  double positivity = 1e-9;

  static double scale(const CMatrix& m);
};

enum class ErrorKind {
  DimensionCap,
  DimensionMismatch,
  NotFinite,
  Hermiticity,
  Isometry,
  Normalization,
  NotAState,
  NotCompletelyPositive,
  InvalidArgument,
  Precondition,
  Unsupported,
  Schema,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class HermiticityError : public Error {
 public:
  explicit HermiticityError(double violation);
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

class IsometryError : public Error {
 public:
  explicit IsometryError(double deviation);
  /// Largest |<c_i|c_j> - delta_ij| over the supplied columns.
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class NotCompletelyPositiveError : public Error {
 public:
  NotCompletelyPositiveError(double eigenvalue, CVector witness);
  double eigenvalue() const noexcept { return eigenvalue_; }
  const CVector& witness() const noexcept { return witness_; }

 private:
  double eigenvalue_;
  CVector witness_;
};

/// One violated condition reported by an assert_* validator.
struct Violation {
  std::string condition;  // "hermiticity", "positivity", "trace", "completeness", ...
  double magnitude = 0.0;
  std::string detail;
};

struct Diagnostic {
  std::vector<Violation> violations;

  bool empty() const { return violations.empty(); }
  /// Magnitude of the named violation, or nullopt when that condition held.
  std::optional<double> magnitude(const std::string& condition) const;
  std::string to_string() const;
};

/// Either a validated value or the diagnostic explaining why validation failed.
template <class T>
class Validated {
 public:
  Validated(T value) : state_(std::move(value)) {}
  Validated(Diagnostic diag) : state_(std::move(diag)) {}

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw Error(ErrorKind::Precondition, "validation failed: " + diagnostic().to_string());
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!ok()) throw Error(ErrorKind::Precondition, "validation failed: " + diagnostic().to_string());
    return std::get<T>(std::move(state_));
  }
  const Diagnostic& diagnostic() const {
    static const Diagnostic kNone{};
    return ok() ? kNone : std::get<Diagnostic>(state_);
  }

 private:
  std::variant<T, Diagnostic> state_;
};

// Small matrix helpers used across modules.
CMatrix dagger(const CMatrix& m);
Complex trace(const CMatrix& m);
double max_abs(const CMatrix& m);
bool all_finite(const CMatrix& m);
void require_finite(const CMatrix& m, const char* what);
void require_square(const CMatrix& m, const char* what);
void require_dim_cap(std::size_t rows, std::size_t cols);
/// max |m - m^dagger|.
double hermiticity_violation(const CMatrix& m);
/// max |u^dagger u - I|.
double unitarity_violation(const CMatrix& u);
CMatrix outer(const CVector& a, const CVector& b);
CMatrix projector(const CVector& v);
CVector basis_vector(std::size_t dim, std::size_t index);

/// Pauli matrices; index 0 is the identity.
CMatrix pauli(int k);

}  // namespace qkit
