#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "splitstep/errors.hpp"
#include "splitstep/field.hpp"

namespace splitstep {

/// Coefficients c_nj of the derivative series sum_nj c_nj nabla^n (d/dtau)^j with
/// nabla^n = d^n/dx^n + d^n/dy^n (so nabla^0 = 2), truncated at n <= n_max, j <= j_max.
struct CoefficientSeries {
  std::function<cplx(int n, int j)> coefficient;
  int n_max = 0;
  int j_max = 0;
  /// Tolerance of the (n_max+2, j_max+2) truncation self-check.
  double truncation_tolerance = 1e-10;

  /// Finite table; orders beyond the largest key are zero.
  static CoefficientSeries from_table(const std::map<std::pair<int, int>, cplx>& table);
};

struct FrequencyInterval {
  double lo;
  double hi;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Closed-form symbol evaluated directly on (k_x, k_y, w).
struct ClosedForm {
  std::function<cplx(double kx, double ky, double w)> evaluator;
  std::optional<FrequencyInterval> kx_domain;
  std::optional<FrequencyInterval> ky_domain;
  std::optional<FrequencyInterval> w_domain;
};

using SymbolForm = std::variant<CoefficientSeries, ClosedForm>;

/// The linear operator as a per-bin multiplier on the full (k_x, k_y, w) grid.
class LinearSymbol {
public:
  LinearSymbol(GridPtr grid, std::vector<cplx> values);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  cplx at(std::size_t ix, std::size_t iy, std::size_t it) const { return values_[grid_->index(ix, iy, it)]; }

  bool is_zero() const;
  bool is_purely_imaginary(double tol = 0.0) const;

  /// e^{symbol * step}, bin by bin.
  std::vector<cplx> exponential(double step, WarningLog* log = nullptr) const;

private:
  GridPtr grid_;
  std::vector<cplx> values_;
};

/// Multiplier above which an exponential factor is reported as amplifying.
inline constexpr double kAmplificationLimit = 1e6;

/// Direct evaluation of the truncated series on every grid bin.
std::vector<cplx> evaluate_series(const Grid& grid, const CoefficientSeries& series, int n_max, int j_max);

LinearSymbol build_symbol(GridPtr grid, const SymbolForm& form, WarningLog* log = nullptr);

/// F^{-1}[ multiplier * F[u] ] over all three axes. Field must be all-real.
ComplexField apply_spectral_multiplier(const ComplexField& field, std::span<const cplx> multiplier);

/// The symbol itself applied to u (no exponential).
ComplexField apply_symbol(const ComplexField& field, const LinearSymbol& symbol);

/// e^{symbol * effective_step} u via the spectral identity.
ComplexField apply_exp_linear(const ComplexField& field, const LinearSymbol& symbol, double effective_step,
                              WarningLog* log = nullptr);

}  // namespace splitstep
