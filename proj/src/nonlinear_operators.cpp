#include "splitstep/nonlinear_operators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "splitstep/fourier.hpp"
#include "splitstep/linear_operator.hpp"

namespace splitstep {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

PointContext context(const Grid& g, std::size_t ix, std::size_t iy, std::size_t it) {
  return {g.x_axis()[ix], g.y_axis()[iy], g.tau_axis()[it], ix, iy, it};
}

void require_real(const ComplexField& f, const char* op) {
  if (!f.all_real()) throw Error(ErrorKind::invalid_state, std::string(op) + " expects a real-space field");
}

void require_size(std::span<const cplx> a, const Grid& g, const char* what) {
  if (a.size() != g.size()) throw Error(ErrorKind::invalid_argument, std::string(what) + " does not match the grid");
}

// u shifted by +dt/2 along tau, band-limited.
std::vector<cplx> half_step_values(const ComplexField& field) {
  const Grid& g = field.grid();
  std::vector<cplx> shifted(field.values().begin(), field.values().end());
  transform(shifted, g, AxisSet::tau(), Direction::forward);
  const auto& w = g.w_axis();
  std::vector<cplx> phase(g.nt());
  for (std::size_t l = 0; l < g.nt(); ++l) phase[l] = std::exp(cplx{0.0, -w[l] * 0.5 * g.dt()});
  for (std::size_t p = 0; p < g.transverse_size(); ++p)
    for (std::size_t l = 0; l < g.nt(); ++l) shifted[p * g.nt() + l] *= phase[l];
  transform(shifted, g, AxisSet::tau(), Direction::inverse);
  return shifted;
}

}  // namespace

std::vector<cplx> eval_N(const EquationModel& model, const ComplexField& field, std::span<const cplx> aux) {
  require_real(field, "eval_N");
  const Grid& g = field.grid();
  std::vector<cplx> n(g.size(), cplx{});
  if (!model.beta) return n;
  if (!aux.empty()) require_size(aux, g, "auxiliary values");
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy)
      for (std::size_t it = 0; it < g.nt(); ++it) {
        const std::size_t i = g.index(ix, iy, it);
        const cplx v = aux.empty() ? cplx{} : aux[i];
        const auto at = context(g, ix, iy, it);
        n[i] = model.beta(field.data()[i], v, at);
        if (!finite(n[i])) {
          std::ostringstream os;
          os << "nonlinear functional is not finite at (" << ix << ", " << iy << ", " << it << "), (x, y, tau) = (" << at.x << ", " << at.y << ", " << at.tau
             << ")";
          throw Error(ErrorKind::model_evaluation, os.str());
        }
      }
  return n;
}

std::vector<cplx> integrate_auxiliary(const EquationModel& model, const ComplexField& field) {
  if (!model.auxiliary || !model.auxiliary->rate)
    throw Error(ErrorKind::invalid_argument, "model has no auxiliary state");
  require_real(field, "integrate_auxiliary");
  const Grid& g = field.grid();
  const auto& rate = model.auxiliary->rate;
  const double h = g.dt();
  const std::size_t nt = g.nt();
  const auto half = nt > 1 ? half_step_values(field) : std::vector<cplx>{};

  std::vector<cplx> v(g.size());
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      const std::size_t base = g.index(ix, iy, 0);
      cplx state = model.auxiliary->initial;
      v[base] = state;
      for (std::size_t it = 0; it + 1 < nt; ++it) {
        const cplx u0 = field.data()[base + it];
        const cplx um = half[base + it];
        const cplx u1 = field.data()[base + it + 1];
        PointContext at0 = context(g, ix, iy, it);
        PointContext atm = at0;
        atm.tau += 0.5 * h;
        const PointContext at1 = context(g, ix, iy, it + 1);
        const cplx k1 = rate(state, u0, at0);
        const cplx k2 = rate(state + 0.5 * h * k1, um, atm);
        const cplx k3 = rate(state + 0.5 * h * k2, um, atm);
        const cplx k4 = rate(state + h * k3, u1, at1);
        state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!finite(state)) {
          std::ostringstream os;
          os << "auxiliary state blew up at (x, y, tau) = (" << at1.x << ", " << at1.y << ", " << at1.tau << ")";
          throw Error(ErrorKind::auxiliary_blowup, os.str());
        }
        v[base + it + 1] = state;
      }
    }
  return v;
}

ComplexField apply_exp_alpha1(const ComplexField& field, const EquationModel& model,
                              std::span<const cplx> n_frozen, double effective_step, WarningLog* log) {
  require_real(field, "apply_exp_alpha1");
  const Grid& g = field.grid();
  require_size(n_frozen, g, "frozen N");
  ComplexField out = field;
  std::vector<cplx> dn;
  if (model.c2 != cplx{}) dn = tau_derivative(n_frozen, g, 1);
  double peak = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx a = model.c1 * n_frozen[i];
    if (!dn.empty()) a += model.c2 * dn[i];
    const cplx e = std::exp(a * effective_step);
    peak = std::max(peak, std::abs(e));
    out.data()[i] *= e;
  }
  if (!(peak <= kAmplificationLimit))
    warn(log, WarningKind::amplification, "alpha1 exponential amplifies by up to " + std::to_string(peak), peak);
  return out;
}

std::vector<cplx> alpha2_line(std::span<const cplx> spectrum, std::span<const cplx> r, std::span<const cplx> dr,
                              std::span<const cplx> ddr, double dt, double dz, Alpha2Order order,
                              double* peak_multiplier) {
  const std::size_t n = spectrum.size();
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
  const std::size_t positive = (n - 1) / 2 + 1;
  const double norm = 1.0 / (static_cast<double>(n) * dt);
  const bool corrected = order != Alpha2Order::commuting;
  const bool fourth = order == Alpha2Order::fourth;

  // The correction terms act on the unshifted line: (-i w') U contracts to du/dtau.
  std::vector<cplx> du, ddu;
  if (corrected) {
    du.resize(n);
    ddu.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      const cplx iw{0.0, -dw * static_cast<double>(signed_bin(s, n))};
      du[s] = iw * spectrum[s];
      ddu[s] = iw * iw * spectrum[s];
    }
    transform_line(du, dt, Direction::inverse);
    transform_line(ddu, dt, Direction::inverse);
  }

  std::vector<cplx> out(n);
  double peak = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // e^{-i w_s (dz r_j + t_j)} = q^s with w_s = s dw, t_j = j dt.
    const cplx q = std::exp(cplx{0.0, -dw} * (dz * r[j] + static_cast<double>(j) * dt));
    cplx s0{};
    cplx p{1.0, 0.0};
    for (std::size_t s = 0; s < positive; ++s) {
      s0 += p * spectrum[s];
      p *= q;
    }
    const cplx qinv = 1.0 / q;
    p = qinv;
    for (std::size_t k = 1; k <= n - positive; ++k) {
      s0 += p * spectrum[n - k];
      p *= qinv;
    }
    // |e^{-dz r i w}| is extremal at the band edges.
    const double edge = dz * std::abs(r[j].imag()) * dw * static_cast<double>(n / 2);
    peak = std::max(peak, std::exp(edge));

    out[j] = norm * s0;
    if (corrected) {
      cplx a = 0.5 * dz * dz * r[j] * dr[j];
      cplx b{};
      if (fourth) {
        a += (dz * dz * dz / 6.0) * (r[j] * r[j] * ddr[j] + r[j] * dr[j] * dr[j]);
        b = 0.5 * dz * dz * dz * r[j] * r[j] * dr[j];
      }
      out[j] += a * du[j] + b * ddu[j];
    }
  }
  if (peak_multiplier) *peak_multiplier = peak;
  return out;
}

ComplexField apply_exp_alpha2(const ComplexField& field, const EquationModel& model,
                              std::span<const cplx> n_frozen, double effective_step, WarningLog* log) {
  if (field.domain(Axis::tau) != Domain::spectral || field.domain(Axis::x) != Domain::real ||
      field.domain(Axis::y) != Domain::real)
    throw Error(ErrorKind::invalid_state, "alpha2 expects u(x, y, w'): tau spectral, x and y real");
  const Grid& g = field.grid();
  require_size(n_frozen, g, "frozen N");

  if (model.c2 == cplx{} || effective_step == 0.0) return inverse(field, AxisSet::tau());
  ComplexField out = field;
  out.set_domain(Axis::tau, Domain::real);

  std::vector<cplx> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = model.c2 * n_frozen[i];
  std::vector<cplx> dr, ddr;
  if (model.alpha2_order != Alpha2Order::commuting) {
    dr = tau_derivative(r, g, 1);
    ddr = tau_derivative(dr, g, 1);
  } else {
    dr.assign(g.size(), cplx{});
    ddr.assign(g.size(), cplx{});
  }

  const std::size_t nt = g.nt();
  double peak = 0.0;
  for (std::size_t p = 0; p < g.transverse_size(); ++p) {
    const std::size_t base = p * nt;
    auto sub = [&](const std::vector<cplx>& v) { return std::span<const cplx>(v).subspan(base, nt); };
    double line_peak = 0.0;
    const auto line = alpha2_line(field.values().subspan(base, nt), sub(r), sub(dr), sub(ddr), g.dt(),
                                  effective_step, model.alpha2_order, &line_peak);
    std::copy(line.begin(), line.end(), out.data().begin() + static_cast<std::ptrdiff_t>(base));
    peak = std::max(peak, line_peak);
  }
  if (!(peak <= kAmplificationLimit))
    warn(log, WarningKind::amplification, "alpha2 mixed multiplier amplifies by up to " + std::to_string(peak), peak);
  return out;
}

ComplexField apply_exp_convolution(const ComplexField& field, const RamanKernel& kernel, double effective_step,
                                   WarningLog* log) {
  require_real(field, "apply_exp_convolution");
  if (effective_step < 0.0) throw Error(ErrorKind::invalid_argument, "effective step must be >= 0");
  const Grid& g = field.grid();
  if (kernel.size() != g.nt()) throw Error(ErrorKind::invalid_argument, "kernel length does not match nt");
  std::vector<cplx> factor(g.nt());
  double peak = 0.0;
  for (std::size_t l = 0; l < g.nt(); ++l) {
    factor[l] = std::exp(effective_step * kernel.f_freq()[l]);
    peak = std::max(peak, std::abs(factor[l]));
  }
  if (!(peak <= kAmplificationLimit))
    warn(log, WarningKind::amplification, "convolution exponential amplifies by up to " + std::to_string(peak), peak);

  ComplexField out = field;
  transform(out.values(), g, AxisSet::tau(), Direction::forward);
  for (std::size_t p = 0; p < g.transverse_size(); ++p)
    for (std::size_t l = 0; l < g.nt(); ++l) out.data()[p * g.nt() + l] *= factor[l];
  transform(out.values(), g, AxisSet::tau(), Direction::inverse);
  return out;
}

}  // namespace splitstep
