#include "splitstep/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "splitstep/errors.hpp"

namespace splitstep {

namespace {

void require_count(std::size_t n, const char* name) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, std::string(name) + " must be >= 1");
}

void require_spacing(double d, const char* name) {
  if (!(d > 0.0) || !std::isfinite(d))
    throw Error(ErrorKind::invalid_argument, std::string(name) + " must be a positive finite spacing");
}

std::vector<double> centred_coordinates(std::size_t n, double spacing) {
  std::vector<double> c(n);
  const double half = static_cast<double>(n / 2);
  for (std::size_t j = 0; j < n; ++j) c[j] = (static_cast<double>(j) - half) * spacing;
  return c;
}

}  // namespace

std::vector<double> angular_frequencies(std::size_t n, double spacing) {
  // Same operation order as numpy: (bin * (1/(n d))) * 2 pi.
  const double val = 1.0 / (static_cast<double>(n) * spacing);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 2.0 * std::numbers::pi * (static_cast<double>(signed_bin(i, n)) * val);
  return w;
}

Grid::Grid(std::size_t nx, std::size_t ny, std::size_t nt, double dx, double dy, double dt,
           double dzeta, std::size_t n_steps)
    : counts_{nx, ny, nt}, spacings_{dx, dy, dt}, dzeta_(dzeta), n_steps_(n_steps) {
  require_count(nx, "nx");
  require_count(ny, "ny");
  require_count(nt, "nt");
  require_spacing(dx, "dx");
  require_spacing(dy, "dy");
  require_spacing(dt, "dt");
  require_spacing(dzeta, "dzeta");
  for (int a = 0; a < 3; ++a) {
    coords_[a] = centred_coordinates(counts_[a], spacings_[a]);
    freqs_[a] = angular_frequencies(counts_[a], spacings_[a]);
  }
}

Grid Grid::with_step(double dzeta, std::size_t n_steps) const {
  return Grid(nx(), ny(), nt(), dx(), dy(), dt(), dzeta, n_steps);
}

Grid build_grid(std::size_t nx, std::size_t ny, std::size_t nt, double dx, double dy, double dt,
                double dzeta, std::size_t n_steps) {
  return Grid(nx, ny, nt, dx, dy, dt, dzeta, n_steps);
}

GridPtr make_grid(std::size_t nx, std::size_t ny, std::size_t nt, double dx, double dy, double dt,
                  double dzeta, std::size_t n_steps) {
  return std::make_shared<const Grid>(nx, ny, nt, dx, dy, dt, dzeta, n_steps);
}

}  // namespace splitstep
