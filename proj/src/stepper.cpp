#include "splitstep/stepper.hpp"

#include <algorithm>

#include "splitstep/fourier.hpp"
#include "splitstep/nonlinear_operators.hpp"

namespace splitstep {

std::string to_string(FreezePolicy policy) { return policy == FreezePolicy::entry ? "entry" : "midpoint"; }

FreezePolicy parse_freeze_policy(const std::string& text) {
  if (text == "entry") return FreezePolicy::entry;
  if (text == "midpoint") return FreezePolicy::midpoint;
  throw Error(ErrorKind::invalid_argument, "unknown freeze policy '" + text + "' (entry, midpoint)");
}

Stepper::Stepper(EquationModel model, LinearSymbol symbol, StepSchedule schedule, double dzeta,
                 StepperOptions options, WarningLog* warnings)
    : model_(std::move(model)), symbol_(std::move(symbol)), schedule_(std::move(schedule)), dzeta_(dzeta),
      options_(options), warnings_(warnings) {
  if (!(dzeta_ > 0.0)) throw Error(ErrorKind::invalid_argument, "dzeta must be positive");
  schedule_.validate();
  if (!schedule_.contains(OperatorId::linear) || !schedule_.contains(OperatorId::alpha1))
    throw Error(ErrorKind::invalid_argument, "schedule '" + schedule_.name() + "' must contain linear and alpha1");
  if (model_.has_alpha2() && !schedule_.contains(OperatorId::alpha2))
    throw Error(ErrorKind::invalid_argument, "model has c2 != 0 but schedule '" + schedule_.name() +
                                                 "' has no alpha2 entries");
  if (model_.kernel && !schedule_.contains(OperatorId::convolution))
    throw Error(ErrorKind::invalid_argument, "model has a convolution kernel but schedule '" + schedule_.name() +
                                                 "' has no convolution entries");
  if (model_.kernel && model_.kernel->size() != symbol_.grid().nt())
    throw Error(ErrorKind::invalid_argument, "kernel length does not match nt");
  for (const auto& e : schedule_.entries())
    if (e.op == OperatorId::linear && !linear_factors_.count({e.fraction.num, e.fraction.den}))
      linear_factors_.emplace(std::pair{e.fraction.num, e.fraction.den},
                              symbol_.exponential(e.fraction.value() * dzeta_, warnings_));
}

std::vector<cplx> Stepper::frozen_N(const ComplexField& field) const {
  if (model_.auxiliary) {
    const auto aux = integrate_auxiliary(model_, field);
    return eval_N(model_, field, aux);
  }
  return eval_N(model_, field);
}

ComplexField Stepper::apply_frozen(OperatorId op, const ComplexField& field, std::span<const cplx> n,
                                   double h) const {
  if (op == OperatorId::alpha1) return apply_exp_alpha1(field, model_, n, h, warnings_);
  const ComplexField spectral = forward(field, AxisSet::tau());
  return apply_exp_alpha2(spectral, model_, n, h, warnings_);
}

ComplexField Stepper::nonlinear_substep(OperatorId op, const ComplexField& field, double h) const {
  const auto n_entry = frozen_N(field);
  if (options_.freeze == FreezePolicy::entry) return apply_frozen(op, field, n_entry, h);
  const ComplexField predictor = apply_frozen(op, field, n_entry, 0.5 * h);
  const auto n_mid = frozen_N(predictor);
  return apply_frozen(op, field, n_mid, h);
}

void Stepper::step(PropagationState& state) const {
  if (!state.field.all_real()) throw Error(ErrorKind::invalid_state, "stepper expects a real-space field");
  const auto& entries = schedule_.entries();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const double h = e.fraction.value() * dzeta_;
    const std::string label = std::to_string(k + 1) + " (" + to_string(e.op) + " " + e.fraction.str() + ")";
    try {
      switch (e.op) {
        case OperatorId::linear:
          state.field = apply_spectral_multiplier(state.field, linear_factors_.at({e.fraction.num, e.fraction.den}));
          break;
        case OperatorId::alpha1:
          state.field = nonlinear_substep(OperatorId::alpha1, state.field, h);
          break;
        case OperatorId::alpha2:
          if (options_.skip_identity_operators && !model_.has_alpha2()) break;
          state.field = nonlinear_substep(OperatorId::alpha2, state.field, h);
          break;
        case OperatorId::convolution:
          if (!model_.kernel) break;
          state.field = apply_exp_convolution(state.field, *model_.kernel, h, warnings_);
          break;
      }
    } catch (const StepError&) {
      throw;
    } catch (const Error& err) {
      throw StepError(state.slice_index + 1, label, err.kind(), err.what());
    }
    if (!state.field.is_finite())
      throw StepError(state.slice_index + 1, label, ErrorKind::non_finite, "field became non-finite");
  }
  ++state.slice_index;
  state.zeta = static_cast<double>(state.slice_index) * dzeta_;
}

SliceRecord make_record(const PropagationState& state, bool monitor_nyquist, double nyquist_threshold) {
  SliceRecord r;
  r.slice = state.slice_index;
  r.zeta = state.zeta;
  r.l2_norm = l2_norm(state.field);
  r.peak_intensity = peak_intensity(state.field);
  if (monitor_nyquist) {
    const auto report = nyquist_margin(state.field, nyquist_threshold);
    r.nyquist_tail = report.tail_fraction;
    r.nyquist_flag = report.flagged;
  }
  return r;
}

PropagationState Stepper::run(const ComplexField& initial, std::size_t n_steps, const RunHooks& hooks) const {
  if (hooks.record_every < 1) throw Error(ErrorKind::invalid_argument, "record interval must be >= 1");
  if (!initial.is_finite()) throw Error(ErrorKind::invalid_argument, "initial field is not finite");
  PropagationState state{initial, 0.0, 0, {}};
  for (std::size_t s = 0; s < n_steps; ++s) {
    try {
      step(state);
    } catch (const StepError& err) {
      if (err.cause() == ErrorKind::non_finite) throw RunAborted(state.slice_index, err.what());
      throw;
    }
    if (state.slice_index % hooks.record_every == 0) {
      state.diagnostics_log.push_back(make_record(state, hooks.monitor_nyquist, hooks.nyquist_threshold));
      const auto& rec = state.diagnostics_log.back();
      if (rec.nyquist_flag)
        warn(hooks.warnings, WarningKind::nyquist,
             "slice " + std::to_string(rec.slice) + ": spectral tail exceeds the Nyquist threshold",
             std::max({rec.nyquist_tail[0], rec.nyquist_tail[1], rec.nyquist_tail[2]}));
      if (hooks.on_record) hooks.on_record(state);
    }
  }
  return state;
}

PropagationState step(PropagationState state, const EquationModel& model, const LinearSymbol& symbol,
                      const StepSchedule& schedule, const StepperOptions& options) {
  const Stepper stepper(model, symbol, schedule, state.field.grid().dzeta(), options);
  stepper.step(state);
  return state;
}

PropagationState run(const ComplexField& initial, const EquationModel& model, const LinearSymbol& symbol,
                     const StepSchedule& schedule, const Grid& grid, const RunHooks& hooks) {
  const Stepper stepper(model, symbol, schedule, grid.dzeta(), hooks.options, hooks.warnings);
  return stepper.run(initial, grid.n_steps(), hooks);
}

}  // namespace splitstep
