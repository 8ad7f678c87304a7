#pragma once

#include <vector>

#include "splitstep/linear_operator.hpp"
#include "splitstep/model.hpp"
#include "splitstep/schedule.hpp"
#include "splitstep/stepper.hpp"

namespace splitstep {

struct SweepResult {
  std::vector<double> dzetas;
  std::vector<double> errors;
  /// Least-squares slope of log(error) against log(dzeta).
  double slope = 0.0;
  double reference_dzeta = 0.0;
};

double loglog_slope(const std::vector<double>& h, const std::vector<double>& err);

/// Runs the split-step scheme at each dzeta up to zeta_end and compares the final field
/// with an RK4 reference at reference_dzeta. Every dzeta must divide zeta_end.
SweepResult convergence_sweep(const ComplexField& initial, const EquationModel& model, const LinearSymbol& symbol,
                              const StepSchedule& schedule, const std::vector<double>& dzetas, double zeta_end,
                              double reference_dzeta, const StepperOptions& options = {});

/// Same against a precomputed reference field at zeta_end.
SweepResult convergence_sweep(const ComplexField& initial, const EquationModel& model, const LinearSymbol& symbol,
                              const StepSchedule& schedule, const std::vector<double>& dzetas, double zeta_end,
                              const ComplexField& reference, const StepperOptions& options = {});

/// The RK4 reference used by the sweep.
ComplexField sweep_reference(const ComplexField& initial, const EquationModel& model, const LinearSymbol& symbol,
                             double zeta_end, double reference_dzeta);

}  // namespace splitstep
