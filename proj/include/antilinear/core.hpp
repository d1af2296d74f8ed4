#pragma once

// Shared scalar/matrix aliases and the error type used across the library.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace antilinear {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

enum class ErrorKind {
  // input validation
  ThreeOnCircle,
  DuplicatePoint,
  NonPositiveWeight,
  MassNotNormalizable,
  InvalidAngle,
  InvalidJacobi,
  InsufficientMoments,
  IndefiniteMoments,
  IndexOutOfRange,
  DimensionMismatch,
  NotSymmetric,
  NotHermitian,
  ZeroStart,
  ZeroRhs,
  SingularSystem,
  SingularMatrix,
  InvalidArgument,
  ParseError,
  // numerical
  Breakdown,
  ZeroFirstEntry,
};

std::string_view to_string(ErrorKind kind);

/// Thrown by every library operation that can fail; `kind()` is the typed
/// reason, `what()` carries the kind name followed by detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace antilinear
