#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "splitstep/grid.hpp"

namespace splitstep {

using cplx = std::complex<double>;

enum class Domain : unsigned char { real = 0, spectral = 1 };

/// Set of axes, used to name which axes a transform acts on.
class AxisSet {
public:
  constexpr AxisSet() = default;
  constexpr AxisSet(std::initializer_list<Axis> axes) {
    for (Axis a : axes) bits_ |= bit(a);
  }
  static constexpr AxisSet all() { return {Axis::x, Axis::y, Axis::tau}; }
  static constexpr AxisSet transverse() { return {Axis::x, Axis::y}; }
  static constexpr AxisSet tau() { return {Axis::tau}; }

  constexpr AxisSet with(Axis a) const {
    AxisSet s = *this;
    s.bits_ |= bit(a);
    return s;
  }
  constexpr bool contains(Axis a) const { return bits_ & bit(a); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned bits() const { return bits_; }
  constexpr bool operator==(const AxisSet&) const = default;

private:
  static constexpr unsigned bit(Axis a) { return 1u << static_cast<int>(a); }
  unsigned bits_ = 0;
};

/// Complex samples of u on a grid, row-major (x outer, y middle, tau inner), with a
/// per-axis record of whether that axis currently holds real-space or spectral data.
class ComplexField {
public:
  ComplexField() = default;
  explicit ComplexField(GridPtr grid);
  ComplexField(GridPtr grid, std::vector<cplx> values,
               std::array<Domain, 3> domains = {Domain::real, Domain::real, Domain::real});

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  std::span<cplx> values() noexcept { return values_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::vector<cplx>& data() noexcept { return values_; }
  const std::vector<cplx>& data() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  cplx& operator()(std::size_t ix, std::size_t iy, std::size_t it) { return values_[grid_->index(ix, iy, it)]; }
  const cplx& operator()(std::size_t ix, std::size_t iy, std::size_t it) const {
    return values_[grid_->index(ix, iy, it)];
  }

  /// Contiguous tau line at transverse point (ix, iy).
  std::span<cplx> line(std::size_t ix, std::size_t iy) {
    return std::span<cplx>(values_).subspan(grid_->index(ix, iy, 0), grid_->nt());
  }
  std::span<const cplx> line(std::size_t ix, std::size_t iy) const {
    return std::span<const cplx>(values_).subspan(grid_->index(ix, iy, 0), grid_->nt());
  }

  Domain domain(Axis a) const noexcept { return domains_[static_cast<int>(a)]; }
  void set_domain(Axis a, Domain d) noexcept { domains_[static_cast<int>(a)] = d; }
  const std::array<Domain, 3>& domains() const noexcept { return domains_; }
  bool all_real() const noexcept;

  bool is_finite() const noexcept;

private:
  GridPtr grid_;
  std::vector<cplx> values_;
  std::array<Domain, 3> domains_{Domain::real, Domain::real, Domain::real};
};

/// sqrt(sum |u|^2 * dx dy dt) with the real-space quadrature weight.
double l2_norm(const ComplexField& field);
/// Plain Euclidean norm of the sample vector.
double l2_norm(std::span<const cplx> values);
/// ||a - b|| / ||b|| over the raw samples.
double relative_l2_error(std::span<const cplx> a, std::span<const cplx> b);
double max_abs(std::span<const cplx> values);
double peak_intensity(const ComplexField& field);

/// Samples a function of (x, y, tau) onto the grid in real representation.
template <typename F>
ComplexField sample(GridPtr grid, F&& f) {
  ComplexField u(grid);
  const auto& xs = grid->x_axis();
  const auto& ys = grid->y_axis();
  const auto& ts = grid->tau_axis();
  for (std::size_t ix = 0; ix < grid->nx(); ++ix)
    for (std::size_t iy = 0; iy < grid->ny(); ++iy)
      for (std::size_t it = 0; it < grid->nt(); ++it) u(ix, iy, it) = f(xs[ix], ys[iy], ts[it]);
  return u;
}

}  // namespace splitstep
