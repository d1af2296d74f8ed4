#pragma once

#include <cstddef>
#include <vector>

#include "antilinear/core.hpp"

namespace antilinear {

/// Moments m_k = integral of lambda^<k> against a probability measure.
/// Not validated on construction so that tampered sequences can be
/// inspected (psd_check reports them); `is_normalized()` checks
/// m_0 = 1 and real nonnegative even moments.
struct MomentSequence {
  std::vector<cplx> m;

  std::size_t size() const noexcept { return m.size(); }
  cplx operator[](std::size_t k) const { return m.at(k); }
  bool is_normalized(double tol = 1e-10) const;
};

}  // namespace antilinear
