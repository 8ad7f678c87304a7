// splitstep: batch driver for configured split-step runs.
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "splitstep/config.hpp"
#include "splitstep/diagnostics.hpp"
#include "splitstep/sweep.hpp"
#include "splitstep/validation.hpp"

using namespace splitstep;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;

void print_warnings(const WarningLog& log) {
  for (const auto& w : log.entries()) std::cerr << "warning: " << w.message << "\n";
}

int cmd_run(const std::string& config_path, const std::string& output_override, bool quiet) {
  const RunConfig config = load_config(config_path);
  WarningLog warnings;
  RunSetup setup = prepare_run(config, &warnings);
  const std::string out_dir = output_override.empty() ? config.output.directory : output_override;
  DiagnosticsWriter writer(out_dir, config.diagnostics.quantities, config.output.precision);
  setup.hooks.on_record = [&](const PropagationState& s) {
    writer.record(s);
    if (!quiet) {
      const auto& r = s.diagnostics_log.back();
      std::printf("slice %zu  zeta %.6g  l2 %.12g  peak %.6g%s\n", r.slice, r.zeta, r.l2_norm, r.peak_intensity,
                  r.nyquist_flag ? "  [nyquist]" : "");
    }
  };
  const auto& p = setup.instance;
  try {
    const PropagationState final_state = run(p.initial, p.model, p.symbol, p.schedule, *setup.grid, setup.hooks);
    writer.flush();
    write_dump(final_state.field, (writer.directory() / "final.ssfm").string(), final_state.zeta,
               config.output.precision);
    print_warnings(warnings);
    if (!quiet)
      std::printf("done: %zu slices, zeta %.6g, output in %s\n", final_state.slice_index, final_state.zeta,
                  out_dir.c_str());
  } catch (const RunAborted& e) {
    writer.flush();
    print_warnings(warnings);
    std::cerr << "run aborted: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const StepError& e) {
    writer.flush();
    print_warnings(warnings);
    std::cerr << "run aborted: " << e.what() << " (last good slice " << (e.slice() ? e.slice() - 1 : 0) << ")\n";
    return kExitBlowUp;
  }
  return 0;
}

int cmd_validate(const std::vector<std::string>& only) {
  bool all_passed = true;
  std::size_t ran = 0;
  for (const auto& check : validation_suite()) {
    if (!only.empty() && std::find(only.begin(), only.end(), check.name) == only.end()) continue;
    ++ran;
    CheckResult r;
    try {
      r = check.run();
    } catch (const std::exception& e) {
      r = {check.name, false, std::string("error: ") + e.what(), {}};
    }
    std::printf("%s  %-16s %s: %s\n", r.passed ? "PASS" : "FAIL", check.name.c_str(), r.name.c_str(),
                r.detail.c_str());
    for (const auto& n : r.notes) std::printf("      %s\n", n.c_str());
    std::fflush(stdout);
    all_passed = all_passed && r.passed;
  }
  if (ran == 0) {
    std::cerr << "no check matched\n";
    return kExitFailure;
  }
  return all_passed ? 0 : kExitFailure;
}

int cmd_sweep(const std::string& config_path, std::vector<double> dzetas, double ratio) {
  const RunConfig config = load_config(config_path);
  const RunSetup setup = prepare_run(config);
  const Grid& g = *setup.grid;
  const double zeta_end = g.dzeta() * static_cast<double>(g.n_steps());
  if (!(zeta_end > 0.0)) throw ConfigError(0, "convergence-sweep needs n_steps > 0");
  if (dzetas.empty()) dzetas = {g.dzeta(), g.dzeta() / 2.0, g.dzeta() / 4.0};
  const double ref_dz = *std::min_element(dzetas.begin(), dzetas.end()) / ratio;
  const auto& p = setup.instance;
  const SweepResult r =
      convergence_sweep(p.initial, p.model, p.symbol, p.schedule, dzetas, zeta_end, ref_dz, setup.hooks.options);
  std::printf("reference: RK4 at dzeta %.6g to zeta %.6g\n", ref_dz, zeta_end);
  std::printf("dzeta,relative_l2_error\n");
  for (std::size_t i = 0; i < r.dzetas.size(); ++i) std::printf("%.6g,%.6e\n", r.dzetas[i], r.errors[i]);
  std::printf("measured order: %.4f\n", r.slope);
  return 0;
}

int cmd_describe() {
  for (const auto& d : preset_catalog()) {
    std::printf("%s\n  %s\n  default profile: %s\n", d.name.c_str(), d.summary.c_str(),
                to_string(d.default_profile).c_str());
    std::string req;
    for (const auto& k : d.required) req += (req.empty() ? "" : ", ") + k;
    std::printf("  required: %s\n", req.empty() ? "(none)" : req.c_str());
    std::string opt;
    for (const auto& [k, v] : d.optional) {
      std::ostringstream os;
      if (v.imag() == 0.0)
        os << v.real();
      else
        os << "(" << v.real() << ", " << v.imag() << ")";
      opt += (opt.empty() ? "" : ", ") + k + " = " + os.str();
    }
    std::printf("  optional: %s\n", opt.empty() ? "(none)" : opt.c_str());
  }
  std::string names;
  for (const auto& n : StepSchedule::names()) names += (names.empty() ? "" : ", ") + n;
  std::printf("schedules: %s\n", names.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-step Fourier propagation of generalized nonlinear Schrodinger equations"};
  app.require_subcommand(1);

  std::string config_path, output_dir;
  bool quiet = false;
  auto* run_cmd = app.add_subcommand("run", "propagate a configured problem and write diagnostics");
  run_cmd->add_option("config", config_path, "configuration file")->required();
  run_cmd->add_option("-o,--output", output_dir, "override the output directory");
  run_cmd->add_flag("-q,--quiet", quiet, "no per-slice progress");

  std::vector<std::string> only;
  auto* validate_cmd = app.add_subcommand("validate", "run the oracle comparison suite");
  validate_cmd->add_option("--only", only, "run only the named checks");

  std::vector<double> dzetas;
  double ratio = 50.0;
  auto* sweep_cmd = app.add_subcommand("convergence-sweep", "measure the global order over a dzeta ladder");
  sweep_cmd->add_option("config", config_path, "configuration file")->required();
  sweep_cmd->add_option("--dzeta", dzetas, "step sizes (default: dzeta, dzeta/2, dzeta/4)")->delimiter(',');
  sweep_cmd->add_option("--ratio", ratio, "reference step is the smallest dzeta divided by this")
      ->check(CLI::PositiveNumber);

  auto* describe_cmd = app.add_subcommand("describe-presets", "list presets and their constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(config_path, output_dir, quiet);
    if (*validate_cmd) return cmd_validate(only);
    if (*sweep_cmd) return cmd_sweep(config_path, dzetas, ratio);
    if (*describe_cmd) return cmd_describe();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::config) return kExitConfig;
    if (e.kind() == ErrorKind::oracle || e.kind() == ErrorKind::run_aborted || e.kind() == ErrorKind::step)
      return kExitBlowUp;
    return kExitFailure;
  }
  return kExitFailure;
}
