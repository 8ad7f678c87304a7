#include "splitstep/linear_operator.hpp"

#include <cmath>
#include <sstream>

#include "splitstep/fourier.hpp"

namespace splitstep {

namespace {

// powers[n][i] = (-i k_i)^n
std::vector<std::vector<cplx>> derivative_powers(const std::vector<double>& k, int max_order) {
  std::vector<std::vector<cplx>> p(max_order + 1, std::vector<cplx>(k.size(), cplx{1.0, 0.0}));
  for (int n = 1; n <= max_order; ++n)
    for (std::size_t i = 0; i < k.size(); ++i) p[n][i] = p[n - 1][i] * cplx{0.0, -k[i]};
  return p;
}

void check_finite(const Grid& g, const std::vector<cplx>& values) {
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy)
      for (std::size_t it = 0; it < g.nt(); ++it) {
        const cplx z = values[g.index(ix, iy, it)];
        if (std::isfinite(z.real()) && std::isfinite(z.imag())) continue;
        std::ostringstream os;
        os << "symbol is not finite at bin (" << ix << ", " << iy << ", " << it << "), (kx, ky, w) = ("
           << g.kx_axis()[ix] << ", " << g.ky_axis()[iy] << ", " << g.w_axis()[it] << ")";
        throw Error(ErrorKind::singular_symbol, os.str());
      }
}

void check_domain(const std::optional<FrequencyInterval>& dom, const std::vector<double>& axis, const char* name) {
  if (!dom) return;
  for (double v : axis)
    if (!dom->contains(v)) {
      std::ostringstream os;
      os << "grid frequency " << name << " = " << v << " lies outside the convergence domain [" << dom->lo
         << ", " << dom->hi << "]";
      throw Error(ErrorKind::domain_violation, os.str());
    }
}

}  // namespace

CoefficientSeries CoefficientSeries::from_table(const std::map<std::pair<int, int>, cplx>& table) {
  CoefficientSeries s;
  for (const auto& [nj, c] : table) {
    if (nj.first < 0 || nj.second < 0)
      throw Error(ErrorKind::invalid_argument, "series orders must be non-negative");
    s.n_max = std::max(s.n_max, nj.first);
    s.j_max = std::max(s.j_max, nj.second);
  }
  s.coefficient = [table](int n, int j) {
    auto it = table.find({n, j});
    return it == table.end() ? cplx{} : it->second;
  };
  return s;
}

LinearSymbol::LinearSymbol(GridPtr grid, std::vector<cplx> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_ || values_.size() != grid_->size())
    throw Error(ErrorKind::invalid_argument, "symbol cache does not match the grid");
}

bool LinearSymbol::is_zero() const {
  for (const auto& z : values_)
    if (z != cplx{}) return false;
  return true;
}

bool LinearSymbol::is_purely_imaginary(double tol) const {
  for (const auto& z : values_)
    if (std::abs(z.real()) > tol) return false;
  return true;
}

std::vector<cplx> LinearSymbol::exponential(double step, WarningLog* log) const {
  std::vector<cplx> e(values_.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    e[i] = std::exp(values_[i] * step);
    peak = std::max(peak, std::abs(e[i]));
  }
  if (!(peak <= kAmplificationLimit))
    warn(log, WarningKind::amplification, "linear exponential amplifies by up to " + std::to_string(peak), peak);
  return e;
}

std::vector<cplx> evaluate_series(const Grid& grid, const CoefficientSeries& series, int n_max, int j_max) {
  if (!series.coefficient) throw Error(ErrorKind::invalid_argument, "coefficient series has no generator");
  if (n_max < 0 || j_max < 0) throw Error(ErrorKind::invalid_argument, "series truncation orders must be >= 0");
  const auto px = derivative_powers(grid.kx_axis(), n_max);
  const auto py = derivative_powers(grid.ky_axis(), n_max);
  const auto pw = derivative_powers(grid.w_axis(), j_max);

  std::vector<cplx> out(grid.size(), cplx{});
  for (int n = 0; n <= n_max; ++n)
    for (int j = 0; j <= j_max; ++j) {
      const cplx c = series.coefficient(n, j);
      if (c == cplx{}) continue;
      for (std::size_t ix = 0; ix < grid.nx(); ++ix)
        for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
          const cplx transverse = c * (px[n][ix] + py[n][iy]);
          cplx* row = out.data() + grid.index(ix, iy, 0);
          for (std::size_t it = 0; it < grid.nt(); ++it) row[it] += transverse * pw[j][it];
        }
    }
  return out;
}

LinearSymbol build_symbol(GridPtr grid, const SymbolForm& form, WarningLog* log) {
  if (!grid) throw Error(ErrorKind::invalid_argument, "build_symbol requires a grid");
  const Grid& g = *grid;
  std::vector<cplx> values;

  if (const auto* series = std::get_if<CoefficientSeries>(&form)) {
    values = evaluate_series(g, *series, series->n_max, series->j_max);
    check_finite(g, values);
    const auto extended = evaluate_series(g, *series, series->n_max + 2, series->j_max + 2);
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      scale = std::max(scale, std::abs(extended[i]));
      diff = std::max(diff, std::abs(extended[i] - values[i]));
    }
    const double rel = scale > 0.0 ? diff / scale : diff;
    if (!(rel <= series->truncation_tolerance))
      warn(log, WarningKind::truncation,
           "series truncation at (" + std::to_string(series->n_max) + ", " + std::to_string(series->j_max) +
               ") changes by " + std::to_string(rel) + " when extended by two orders",
           rel);
  } else {
    const auto& closed = std::get<ClosedForm>(form);
    if (!closed.evaluator) throw Error(ErrorKind::invalid_argument, "closed-form symbol has no evaluator");
    check_domain(closed.kx_domain, g.kx_axis(), "kx");
    check_domain(closed.ky_domain, g.ky_axis(), "ky");
    check_domain(closed.w_domain, g.w_axis(), "w");
    values.resize(g.size());
    for (std::size_t ix = 0; ix < g.nx(); ++ix)
      for (std::size_t iy = 0; iy < g.ny(); ++iy)
        for (std::size_t it = 0; it < g.nt(); ++it)
          values[g.index(ix, iy, it)] = closed.evaluator(g.kx_axis()[ix], g.ky_axis()[iy], g.w_axis()[it]);
    check_finite(g, values);
  }
  return LinearSymbol(std::move(grid), std::move(values));
}

ComplexField apply_spectral_multiplier(const ComplexField& field, std::span<const cplx> multiplier) {
  if (!field.all_real()) throw Error(ErrorKind::invalid_state, "spectral multiplier expects a real-space field");
  if (multiplier.size() != field.size()) throw Error(ErrorKind::invalid_argument, "multiplier size mismatch");
  ComplexField out = field;
  transform(out.values(), out.grid(), AxisSet::all(), Direction::forward);
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= multiplier[i];
  transform(out.values(), out.grid(), AxisSet::all(), Direction::inverse);
  return out;
}

ComplexField apply_symbol(const ComplexField& field, const LinearSymbol& symbol) {
  return apply_spectral_multiplier(field, symbol.values());
}

ComplexField apply_exp_linear(const ComplexField& field, const LinearSymbol& symbol, double effective_step,
                              WarningLog* log) {
  if (effective_step < 0.0) throw Error(ErrorKind::invalid_argument, "effective step must be >= 0");
  const auto e = symbol.exponential(effective_step, log);
  return apply_spectral_multiplier(field, e);
}

}  // namespace splitstep
