#pragma once

#include <cstddef>
#include <vector>

#include "antilinear/core.hpp"

namespace antilinear {

/// Diagonal alpha_1..alpha_n (complex) and off-diagonal beta_1..beta_{n-1}
/// (positive) of a complex symmetric tridiagonal matrix J.
struct JacobiParams {
  std::vector<cplx> alphas;
  std::vector<double> betas;

  std::size_t size() const noexcept { return alphas.size(); }

  /// Throws InvalidJacobi unless sizes match and every beta is positive.
  void validate() const;

  /// Leading n x n block (n <= size()).
  JacobiParams truncated(std::size_t n) const;

  /// The dense tridiagonal J.
  CMatrix matrix() const;
};

/// Largest elementwise deviation, infinity when the sizes differ.
double max_param_difference(const JacobiParams& a, const JacobiParams& b);

}  // namespace antilinear
