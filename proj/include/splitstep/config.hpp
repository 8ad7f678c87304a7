#pragma once

#include <optional>
#include <string>
#include <vector>

#include "splitstep/dump.hpp"
#include "splitstep/presets.hpp"
#include "splitstep/stepper.hpp"

namespace splitstep {

enum class Quantity { l2_norm, peak_intensity, time_spectrum, transverse_spectrum, full_field };

std::string to_string(Quantity q);
Quantity parse_quantity(const std::string& text);

struct GridConfig {
  std::size_t nx = 1;
  std::size_t ny = 1;
  std::size_t nt = 0;
  double dx = 1.0;
  double dy = 1.0;
  double dt = 0.0;
  double dzeta = 0.0;
  std::size_t n_steps = 0;

  bool operator==(const GridConfig&) const = default;
};

struct DiagnosticsConfig {
  std::size_t record_every = 1;
  std::vector<Quantity> quantities{Quantity::l2_norm, Quantity::peak_intensity};
  double nyquist_threshold = 0.01;

  bool operator==(const DiagnosticsConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "output";
  /// Field dump format; "binary" is the only one.
  std::string format = "binary";
  Precision precision = Precision::double_;

  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  GridConfig grid;
  PresetSpec preset;
  /// Explicit schedule; overrides preset.schedule_name when set.
  std::optional<std::vector<ScheduleEntry>> schedule_entries;
  Alpha2Order alpha2_order = Alpha2Order::fourth;
  FreezePolicy freeze = FreezePolicy::midpoint;
  DiagnosticsConfig diagnostics;
  OutputConfig output;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the sectioned "key = value" format. Every error is a ConfigError carrying
/// the offending line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Canonical text form; parse_config(print_config(c)) == c.
std::string print_config(const RunConfig& config);

GridPtr config_grid(const RunConfig& config);

/// Everything needed to propagate a configured run.
struct RunSetup {
  GridPtr grid;
  PresetInstance instance;
  RunHooks hooks;
};

RunSetup prepare_run(const RunConfig& config, WarningLog* warnings = nullptr);

}  // namespace splitstep
