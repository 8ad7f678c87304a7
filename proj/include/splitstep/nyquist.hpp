#pragma once

#include <array>

#include "splitstep/field.hpp"

namespace splitstep {

/// Fraction of an axis' bins, counted from the highest |frequency| down, that
/// makes up the tail window of the sampling monitor.
inline constexpr double kDefaultTailWindow = 0.10;

struct NyquistReport {
  /// Per axis (x, y, tau): share of spectral power in the tail window.
  std::array<double, 3> tail_fraction{0.0, 0.0, 0.0};
  bool flagged = false;
};

/// Spectral-sampling check. Each axis of length > 1 is transformed on its own and
/// the power summed over the other axes; axes of length 1 report 0.
NyquistReport nyquist_margin(const ComplexField& field, double threshold,
                             double tail_window = kDefaultTailWindow);

}  // namespace splitstep
