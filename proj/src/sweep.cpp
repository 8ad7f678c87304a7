#include "splitstep/sweep.hpp"

#include <cmath>

#include "splitstep/oracle.hpp"

namespace splitstep {

namespace {

std::size_t steps_for(double zeta_end, double dz) {
  const double n = zeta_end / dz;
  const double r = std::round(n);
  if (r < 1.0 || std::abs(n - r) > 1e-9 * r)
    throw Error(ErrorKind::invalid_argument, "convergence sweep: step " + std::to_string(dz) +
                                                 " does not divide the interval " + std::to_string(zeta_end));
  return static_cast<std::size_t>(r);
}

}  // namespace

double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2) throw Error(ErrorKind::invalid_argument, "loglog_slope: need two points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    mx += std::log(h[i]) / n;
    my += std::log(err[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(err[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

ComplexField sweep_reference(const ComplexField& initial, const EquationModel& model, const LinearSymbol& symbol,
                             double zeta_end, double reference_dzeta) {
  return reference_integrate(initial, model, symbol, reference_dzeta, steps_for(zeta_end, reference_dzeta));
}

SweepResult convergence_sweep(const ComplexField& initial, const EquationModel& model, const LinearSymbol& symbol,
                              const StepSchedule& schedule, const std::vector<double>& dzetas, double zeta_end,
                              const ComplexField& reference, const StepperOptions& options) {
  SweepResult out;
  for (double dz : dzetas) {
    const Stepper stepper(model, symbol, schedule, dz, options);
    RunHooks hooks;
    hooks.record_every = steps_for(zeta_end, dz);
    hooks.monitor_nyquist = false;
    hooks.options = options;
    const PropagationState state = stepper.run(initial, steps_for(zeta_end, dz), hooks);
    out.dzetas.push_back(dz);
    out.errors.push_back(relative_l2_error(state.field.values(), reference.values()));
  }
  out.slope = loglog_slope(out.dzetas, out.errors);
  return out;
}

SweepResult convergence_sweep(const ComplexField& initial, const EquationModel& model, const LinearSymbol& symbol,
                              const StepSchedule& schedule, const std::vector<double>& dzetas, double zeta_end,
                              double reference_dzeta, const StepperOptions& options) {
  const ComplexField reference = sweep_reference(initial, model, symbol, zeta_end, reference_dzeta);
  SweepResult out = convergence_sweep(initial, model, symbol, schedule, dzetas, zeta_end, reference, options);
  out.reference_dzeta = reference_dzeta;
  return out;
}

}  // namespace splitstep
