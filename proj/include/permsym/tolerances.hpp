#pragma once

#include <cstdint>

namespace permsym {

/// Numeric thresholds shared by geometry and angle snapping. Passed by value
/// into every operation that needs them; there is no process-wide instance.
struct Tolerances {
  /// Degeneracy, orthogonality and residual checks.
  double geometric = 1e-9;
  /// Zero tests on norms and on the Eq.-style transverse sums.
  double normalization = 1e-12;
  /// A float azimuth snaps to p/q (in turns) only within this distance...
  double snap = 1e-9;
  /// ...and only when q does not exceed this bound.
  std::int64_t snap_max_denominator = 1'000'000;
};

} // namespace permsym
