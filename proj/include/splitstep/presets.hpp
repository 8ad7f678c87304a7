#pragma once

#include <map>
#include <string>
#include <vector>

#include "splitstep/linear_operator.hpp"
#include "splitstep/model.hpp"
#include "splitstep/schedule.hpp"

namespace splitstep {

enum class Profile { gaussian, sech, plane_wave, file };

std::string to_string(Profile p);
Profile parse_profile(const std::string& text);

/// Initial field description. gaussian: A exp(-x^2/2wx^2 - y^2/2wy^2 - (tau-t0)^2/2wt^2);
/// sech: A sech((tau-t0)/wt); plane_wave: A exp(-i(kx x + ky y + w tau)); file: a field dump.
struct InitialCondition {
  Profile profile = Profile::gaussian;
  cplx amplitude{1.0, 0.0};
  double width_x = 1.0;
  double width_y = 1.0;
  double width_t = 1.0;
  double offset_t = 0.0;
  double kx = 0.0;
  double ky = 0.0;
  double w = 0.0;
  std::string path;

  bool operator==(const InitialCondition&) const = default;
};

struct PresetSpec {
  std::string name;
  std::map<std::string, cplx> constants;
  InitialCondition initial;
  /// Empty selects the preset's default schedule.
  std::string schedule_name;

  bool operator==(const PresetSpec&) const = default;
};

struct PresetInstance {
  EquationModel model;
  LinearSymbol symbol;
  ComplexField initial;
  StepSchedule schedule;
};

struct PresetDescriptor {
  std::string name;
  std::string summary;
  std::vector<std::string> required;
  std::map<std::string, cplx> optional;
  Profile default_profile;
};

const std::vector<PresetDescriptor>& preset_catalog();
const PresetDescriptor& find_preset(const std::string& name);

/// Builds model, symbol, initial field and schedule. Missing required constants and
/// unknown constant names raise ErrorKind::config.
PresetInstance instantiate(const PresetSpec& spec, GridPtr grid);

ComplexField make_initial_field(const InitialCondition& ic, GridPtr grid);

/// Q = i(1 + (i/a) d/dtau) expanded: c1 = i, c2 = i * (i/a) = -1/a.
std::pair<cplx, cplx> gdnlse_q_constants(double a);

/// The derivative-series table of the gdnlse-eq5 linear operator:
/// c_n (-1)^j (i/a)^j + d_nj with c_2 = i/4 (otherwise 0) and d_02 = -i b g / 2, where
/// g is gvd_factor (nabla^0 = 2 doubles d_02 back to the -i b of the closed form).
cplx gdnlse_c(int n);
cplx gdnlse_d(int n, int j, double b, double gvd_factor);
CoefficientSeries gdnlse_series(double a, double b, double gvd_factor, int j_max);

/// -(i/4)(kx^2 + ky^2) / (1 + w/a) + i b g w^2.
ClosedForm gdnlse_closed_form(double a, double b, double gvd_factor);

}  // namespace splitstep
