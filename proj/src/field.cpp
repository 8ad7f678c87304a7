#include "splitstep/field.hpp"

#include <algorithm>
#include <cmath>

#include "splitstep/errors.hpp"

namespace splitstep {

ComplexField::ComplexField(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw Error(ErrorKind::invalid_argument, "field requires a grid");
  values_.assign(grid_->size(), cplx{0.0, 0.0});
}

ComplexField::ComplexField(GridPtr grid, std::vector<cplx> values, std::array<Domain, 3> domains)
    : grid_(std::move(grid)), values_(std::move(values)), domains_(domains) {
  if (!grid_) throw Error(ErrorKind::invalid_argument, "field requires a grid");
  if (values_.size() != grid_->size())
    throw Error(ErrorKind::invalid_argument, "field sample count " + std::to_string(values_.size()) +
                                                 " does not match grid size " + std::to_string(grid_->size()));
}

bool ComplexField::all_real() const noexcept {
  return std::all_of(domains_.begin(), domains_.end(), [](Domain d) { return d == Domain::real; });
}

bool ComplexField::is_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double l2_norm(std::span<const cplx> values) {
  double s = 0.0;
  for (const auto& z : values) s += std::norm(z);
  return std::sqrt(s);
}

double l2_norm(const ComplexField& field) {
  const Grid& g = field.grid();
  return l2_norm(field.values()) * std::sqrt(g.dx() * g.dy() * g.dt());
}

double relative_l2_error(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::invalid_argument, "relative_l2_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

double max_abs(std::span<const cplx> values) {
  double m = 0.0;
  for (const auto& z : values) m = std::max(m, std::abs(z));
  return m;
}

double peak_intensity(const ComplexField& field) {
  double m = 0.0;
  for (const auto& z : field.values()) m = std::max(m, std::norm(z));
  return m;
}

}  // namespace splitstep
