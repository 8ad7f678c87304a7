#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace splitstep {

enum class Axis : int { x = 0, y = 1, tau = 2 };

inline constexpr std::array<Axis, 3> kAllAxes{Axis::x, Axis::y, Axis::tau};

/// Periodic (x, y, tau) box with its angular-frequency axes and the propagation step.
///
/// Real axes are uniform and centred, x_j = (j - n/2) dx. Spectral axes follow the
/// usual DFT bin ordering: index 0 is the zero frequency, the upper half of the
/// array holds negative frequencies and, for even n, bin n/2 is the Nyquist bin
/// at -pi/spacing. Immutable after construction.
class Grid {
public:
  Grid(std::size_t nx, std::size_t ny, std::size_t nt, double dx, double dy, double dt,
       double dzeta, std::size_t n_steps);

  std::size_t nx() const noexcept { return counts_[0]; }
  std::size_t ny() const noexcept { return counts_[1]; }
  std::size_t nt() const noexcept { return counts_[2]; }
  double dx() const noexcept { return spacings_[0]; }
  double dy() const noexcept { return spacings_[1]; }
  double dt() const noexcept { return spacings_[2]; }
  double dzeta() const noexcept { return dzeta_; }
  std::size_t n_steps() const noexcept { return n_steps_; }

  std::size_t count(Axis a) const noexcept { return counts_[static_cast<int>(a)]; }
  double spacing(Axis a) const noexcept { return spacings_[static_cast<int>(a)]; }
  /// Total number of samples nx*ny*nt.
  std::size_t size() const noexcept { return counts_[0] * counts_[1] * counts_[2]; }
  std::size_t transverse_size() const noexcept { return counts_[0] * counts_[1]; }

  /// Row-major offset, tau fastest.
  std::size_t index(std::size_t ix, std::size_t iy, std::size_t it) const noexcept {
    return (ix * counts_[1] + iy) * counts_[2] + it;
  }

  const std::vector<double>& coordinates(Axis a) const noexcept { return coords_[static_cast<int>(a)]; }
  const std::vector<double>& frequencies(Axis a) const noexcept { return freqs_[static_cast<int>(a)]; }
  const std::vector<double>& x_axis() const noexcept { return coords_[0]; }
  const std::vector<double>& y_axis() const noexcept { return coords_[1]; }
  const std::vector<double>& tau_axis() const noexcept { return coords_[2]; }
  const std::vector<double>& kx_axis() const noexcept { return freqs_[0]; }
  const std::vector<double>& ky_axis() const noexcept { return freqs_[1]; }
  const std::vector<double>& w_axis() const noexcept { return freqs_[2]; }

  /// Returns the same box with a different propagation step.
  Grid with_step(double dzeta, std::size_t n_steps) const;

  bool same_shape(const Grid& other) const noexcept { return counts_ == other.counts_; }

private:
  std::array<std::size_t, 3> counts_;
  std::array<double, 3> spacings_;
  double dzeta_;
  std::size_t n_steps_;
  std::array<std::vector<double>, 3> coords_;
  std::array<std::vector<double>, 3> freqs_;
};

using GridPtr = std::shared_ptr<const Grid>;

Grid build_grid(std::size_t nx, std::size_t ny, std::size_t nt, double dx, double dy, double dt,
                double dzeta, std::size_t n_steps);

GridPtr make_grid(std::size_t nx, std::size_t ny, std::size_t nt, double dx, double dy, double dt,
                  double dzeta, std::size_t n_steps);

/// Angular frequencies 2*pi*fftfreq(n, spacing) in DFT bin order.
std::vector<double> angular_frequencies(std::size_t n, double spacing);

/// Signed bin number of DFT index i (i for i < n - n/2, i - n otherwise).
inline long signed_bin(std::size_t i, std::size_t n) noexcept {
  const std::size_t positive = (n - 1) / 2 + 1;
  return i < positive ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

}  // namespace splitstep
