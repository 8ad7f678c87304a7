#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "splitstep/linear_operator.hpp"
#include "splitstep/model.hpp"
#include "splitstep/nyquist.hpp"
#include "splitstep/schedule.hpp"

namespace splitstep {

/// Where the nonlinear coefficient N (and the auxiliary state) is sampled for a
/// nonlinear substep of length h.
enum class FreezePolicy {
  /// N from the field entering the substep. Exact when N is invariant under the
  /// substep's own flow (e.g. cubic NLSE); otherwise the scheme is first order.
  entry,
  /// N from the field after a predictor half substep frozen at entry; the full
  /// substep is then taken from the entry field. Second-order global accuracy.
  midpoint,
};

std::string to_string(FreezePolicy policy);
FreezePolicy parse_freeze_policy(const std::string& text);

struct StepperOptions {
  FreezePolicy freeze = FreezePolicy::midpoint;
  /// Drop alpha2 entries when c2 = 0 and convolution entries when no kernel is set.
  bool skip_identity_operators = true;
};

struct SliceRecord {
  std::size_t slice = 0;
  double zeta = 0.0;
  double l2_norm = 0.0;
  double peak_intensity = 0.0;
  std::array<double, 3> nyquist_tail{0.0, 0.0, 0.0};
  bool nyquist_flag = false;
};

struct PropagationState {
  ComplexField field;
  double zeta = 0.0;
  std::size_t slice_index = 0;
  std::vector<SliceRecord> diagnostics_log;
};

struct RunHooks {
  std::size_t record_every = 1;
  bool monitor_nyquist = true;
  double nyquist_threshold = 0.01;
  /// Called after each recorded slice, once the record is appended.
  std::function<void(const PropagationState&)> on_record;
  WarningLog* warnings = nullptr;
  StepperOptions options;
};

/// Propagator for one model: holds the schedule and the precomputed linear exponentials.
class Stepper {
public:
  Stepper(EquationModel model, LinearSymbol symbol, StepSchedule schedule, double dzeta,
          StepperOptions options = {}, WarningLog* warnings = nullptr);

  /// Advances one slice of length dzeta. The field must be all-real.
  void step(PropagationState& state) const;

  /// n_steps slices from the initial field; records every hooks.record_every slices.
  PropagationState run(const ComplexField& initial, std::size_t n_steps, const RunHooks& hooks) const;

  const EquationModel& model() const noexcept { return model_; }
  const LinearSymbol& symbol() const noexcept { return symbol_; }
  const StepSchedule& schedule() const noexcept { return schedule_; }
  double dzeta() const noexcept { return dzeta_; }

private:
  std::vector<cplx> frozen_N(const ComplexField& field) const;
  ComplexField nonlinear_substep(OperatorId op, const ComplexField& field, double h) const;
  ComplexField apply_frozen(OperatorId op, const ComplexField& field, std::span<const cplx> n, double h) const;

  EquationModel model_;
  LinearSymbol symbol_;
  StepSchedule schedule_;
  double dzeta_;
  StepperOptions options_;
  WarningLog* warnings_;
  std::map<std::pair<long, long>, std::vector<cplx>> linear_factors_;
};

/// Single slice with a freshly built stepper (state.field.grid().dzeta() as the step).
PropagationState step(PropagationState state, const EquationModel& model, const LinearSymbol& symbol,
                      const StepSchedule& schedule, const StepperOptions& options = {});

/// grid.n_steps() slices of grid.dzeta().
PropagationState run(const ComplexField& initial, const EquationModel& model, const LinearSymbol& symbol,
                     const StepSchedule& schedule, const Grid& grid, const RunHooks& hooks = {});

SliceRecord make_record(const PropagationState& state, bool monitor_nyquist, double nyquist_threshold);

}  // namespace splitstep
