#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splitstep/field.hpp"

namespace splitstep {

struct PointContext {
  double x = 0.0;
  double y = 0.0;
  double tau = 0.0;
  std::size_t ix = 0;
  std::size_t iy = 0;
  std::size_t it = 0;
};

/// beta(u, v, coordinates): the nonlinear functional N sampled pointwise.
using BetaFunction = std::function<cplx(cplx u, cplx v, const PointContext& at)>;

/// First-order ODE dv/dtau = rate(v, u, at) integrated along tau per transverse point.
struct AuxiliaryModel {
  std::function<cplx(cplx v, cplx u, const PointContext& at)> rate;
  /// Value at the first tau bin.
  cplx initial{0.0, 0.0};
};

enum class Alpha2Order {
  commuting,  ///< e^{-c2 N i w' dz} only
  third,      ///< plus the dz^2/2! commutator term
  fourth,     ///< plus the dz^3/3! terms
};

/// Convolution kernel f on the tau axis. f_time[m] is the sample at t_m = m dt taken
/// periodically (negative times occupy the top of the array); f_freq is its forward
/// transform, so that (f o u) = F^{-1}[f_freq F[u]] is the circular convolution
/// dt * sum_m f[m] u[j - m].
class RamanKernel {
public:
  static RamanKernel from_time(std::vector<cplx> f_time, double dt);
  static RamanKernel from_frequency(std::vector<cplx> f_freq, double dt);

  const std::vector<cplx>& f_time() const noexcept { return f_time_; }
  const std::vector<cplx>& f_freq() const noexcept { return f_freq_; }
  std::size_t size() const noexcept { return f_time_.size(); }

private:
  RamanKernel(std::vector<cplx> t, std::vector<cplx> f) : f_time_(std::move(t)), f_freq_(std::move(f)) {}
  std::vector<cplx> f_time_;
  std::vector<cplx> f_freq_;
};

/// du/dzeta = P u + (c1 + c2 d/dtau) N u  [+ f o u], with N = beta(u, v, x, y, tau).
struct EquationModel {
  std::string name;
  cplx c1{0.0, 0.0};
  cplx c2{0.0, 0.0};
  BetaFunction beta;
  std::optional<AuxiliaryModel> auxiliary;
  std::optional<RamanKernel> kernel;
  Alpha2Order alpha2_order = Alpha2Order::fourth;

  bool has_alpha2() const noexcept { return c2 != cplx{}; }
};

std::string to_string(Alpha2Order order);
Alpha2Order parse_alpha2_order(const std::string& text);

}  // namespace splitstep
