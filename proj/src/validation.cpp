#include "splitstep/validation.hpp"

#include <cmath>
#include <cstring>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

#include "splitstep/config.hpp"
#include "splitstep/dump.hpp"
#include "splitstep/fourier.hpp"
#include "splitstep/nonlinear_operators.hpp"
#include "splitstep/oracle.hpp"
#include "splitstep/presets.hpp"
#include "splitstep/stepper.hpp"
#include "splitstep/sweep.hpp"

namespace splitstep {

namespace {

constexpr cplx I{0.0, 1.0};

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string slope_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

/// Sum of a few Fourier modes on the tau axis of a 1x1xn grid.
ComplexField band_limited_line(GridPtr grid, int max_bin, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::pair<double, cplx>> modes;
  for (int l = -max_bin; l <= max_bin; ++l)
    modes.push_back({2.0 * std::numbers::pi * l / (grid->nt() * grid->dt()), {normal(rng), normal(rng)}});
  return sample(grid, [&](double, double, double t) {
    cplx s{};
    for (const auto& [w, a] : modes) s += a * std::exp(-I * w * t);
    return s;
  });
}

// 1. Global order of the split-step scheme against the RK4 reference.
CheckResult splitting_order() {
  constexpr double kMinSlope = 1.8;
  GridPtr grid = make_grid(64, 1, 128, 0.5, 1.0, 0.15, 1e-3, 0);
  PresetSpec spec{"derivative-nlse", {}, {}, ""};
  spec.initial.amplitude = 1.2;
  spec.initial.width_x = 3.0;
  const PresetInstance p = instantiate(spec, grid);
  const std::vector<double> dz{4e-3, 2e-3, 1e-3};
  const ComplexField reference = sweep_reference(p.initial, p.model, p.symbol, 0.2, 2e-5);
  const SweepResult mid = convergence_sweep(p.initial, p.model, p.symbol, p.schedule, dz, 0.2, reference);
  StepperOptions entry;
  entry.freeze = FreezePolicy::entry;
  const SweepResult ent = convergence_sweep(p.initial, p.model, p.symbol, p.schedule, dz, 0.2, reference, entry);

  CheckResult r{"splitting order (derivative NLSE, 64x1x128)", mid.slope >= kMinSlope, "", {}};
  r.detail = "slope " + slope_str(mid.slope) + " (>= " + slope_str(kMinSlope) + "), errors";
  for (double e : mid.errors) r.detail += " " + g(e);
  r.notes.push_back("entry-frozen N: slope " + slope_str(ent.slope) + ", errors " + g(ent.errors[0]) + " " +
                    g(ent.errors[1]) + " " + g(ent.errors[2]));
  return r;
}

// 2. Single alpha2 substep against the dense matrix exponential.
CheckResult alpha2_ladder() {
  constexpr double kSlopeTolerance = 0.3;
  GridPtr grid = make_grid(1, 1, 64, 1.0, 1.0, 0.25, 1e-2, 1);
  const auto& t = grid->tau_axis();
  std::vector<cplx> n(grid->nt());
  for (std::size_t j = 0; j < n.size(); ++j) n[j] = std::exp(-t[j] * t[j] / (1.5 * 1.5));
  const cplx c2 = -2.0;
  const ComplexField u = sample(grid, [](double, double, double tau) {
    return std::exp(-(tau - 0.3) * (tau - 0.3) / 2.0) * std::exp(-0.5 * I * tau);
  });
  const ComplexField spectral = forward(u, AxisSet::tau());
  const std::vector<double> dz{1e-2, 5e-3, 2.5e-3};

  CheckResult r{"alpha2 correction-order ladder (nt = 64)", true, "", {}};
  const std::pair<Alpha2Order, double> orders[] = {
      {Alpha2Order::commuting, 2.0}, {Alpha2Order::third, 3.0}, {Alpha2Order::fourth, 4.0}};
  for (const auto& [order, expected] : orders) {
    EquationModel model;
    model.c2 = c2;
    model.alpha2_order = order;
    std::vector<double> errs;
    for (double h : dz) {
      const auto exact = dense_alpha2_expm(n, c2, h, u.values(), grid->dt());
      const ComplexField out = apply_exp_alpha2(spectral, model, n, h);
      errs.push_back(relative_l2_error(out.values(), exact));
    }
    const double s = loglog_slope(dz, errs);
    const bool ok = std::abs(s - expected) <= kSlopeTolerance;
    r.passed = r.passed && ok;
    r.detail += (r.detail.empty() ? "" : "; ") + to_string(order) + " " + slope_str(s) + " (" +
                slope_str(expected) + " +- " + slope_str(kSlopeTolerance) + ")";
  }
  return r;
}

// 3. Constant c2 N: alpha2 is a pure shift.
CheckResult alpha2_shift() {
  constexpr double kTolerance = 1e-10;
  GridPtr grid = make_grid(1, 1, 64, 1.0, 1.0, 0.2, 1.0, 1);
  EquationModel model;
  model.c2 = -0.25;
  const double n_const = 2.0, dz = 0.3;
  const double shift = (model.c2 * n_const).real() * dz;
  std::mt19937 rng(7);
  std::normal_distribution<double> normal;
  std::vector<std::pair<double, cplx>> modes;
  for (int l = -6; l <= 6; ++l)
    modes.push_back({2.0 * std::numbers::pi * l / (grid->nt() * grid->dt()), {normal(rng), normal(rng)}});
  auto field_at = [&](double offset) {
    return sample(grid, [&](double, double, double t) {
      cplx s{};
      for (const auto& [w, a] : modes) s += a * std::exp(-I * w * (t + offset));
      return s;
    });
  };
  const std::vector<cplx> n(grid->nt(), n_const);
  const ComplexField out = apply_exp_alpha2(forward(field_at(0.0), AxisSet::tau()), model, n, dz);
  // exp(dz r d/dtau) u(tau) = u(tau + dz r)
  const double err = relative_l2_error(out.values(), field_at(shift).values());
  return {"alpha2 exact shift (constant c2 N)", err < kTolerance, "rel L2 " + g(err) + " (< " + g(kTolerance) + ")", {}};
}

// 4. Fundamental soliton of the cubic NLSE.
CheckResult soliton() {
  constexpr double kError = 1e-4, kProfileDrift = 1e-5, kNormDrift = 1e-10;
  GridPtr grid = make_grid(1, 1, 256, 1.0, 1.0, 0.15, 1e-3, 1000);
  PresetSpec spec{"cubic-nlse-1d", {}, {}, ""};
  spec.initial.profile = Profile::sech;
  const PresetInstance p = instantiate(spec, grid);
  RunHooks hooks;
  hooks.record_every = 1000;
  const PropagationState s = run(p.initial, p.model, p.symbol, p.schedule, *grid, hooks);
  const double zeta = s.zeta;
  const ComplexField exact =
      sample(grid, [&](double, double, double t) { return std::exp(0.5 * I * zeta) / std::cosh(t); });
  const double err = relative_l2_error(s.field.values(), exact.values());
  double drift = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i)
    drift = std::max(drift, std::abs(std::abs(s.field.data()[i]) - std::abs(exact.data()[i])));
  const double norm_drift = std::abs(l2_norm(s.field) - l2_norm(p.initial)) / l2_norm(p.initial);
  const bool ok = err < kError && drift < kProfileDrift && norm_drift < kNormDrift;
  return {"soliton regression (cubic NLSE, zeta = 1)",
          ok,
          "rel L2 " + g(err) + " (< " + g(kError) + "), |u| drift " + g(drift) + " (< " + g(kProfileDrift) +
              "), norm drift " + g(norm_drift) + " (< " + g(kNormDrift) + ")",
          {}};
}

// 5. Linear-only run against one exponential of the whole interval.
CheckResult linear_exactness() {
  constexpr double kTolerance = 1e-10;
  GridPtr grid = make_grid(16, 8, 32, 0.7, 0.9, 0.3, 0.01, 100);
  EquationModel model;
  model.name = "linear";
  model.beta = [](cplx, cplx, const PointContext&) { return cplx{}; };
  const LinearSymbol symbol = build_symbol(
      grid, ClosedForm{[](double kx, double ky, double w) { return -I * (0.5 * w * w + 0.2 * (kx * kx + ky * ky)) ; },
                       std::nullopt, std::nullopt, std::nullopt});
  std::mt19937 rng(11);
  std::normal_distribution<double> normal;
  ComplexField u(grid);
  for (auto& z : u.data()) z = {normal(rng), normal(rng)};
  RunHooks hooks;
  hooks.record_every = 100;
  hooks.monitor_nyquist = false;
  const PropagationState s = run(u, model, symbol, StepSchedule::strang(), *grid, hooks);
  const ComplexField once = apply_exp_linear(u, symbol, 100 * 0.01);
  const double err = relative_l2_error(s.field.values(), once.values());
  return {"linear exactness (100 slices vs one exponential)", err < kTolerance,
          "rel L2 " + g(err) + " (< " + g(kTolerance) + ")", {}};
}

// 6. Spectral exponential against the truncated operator series.
CheckResult maclaurin() {
  constexpr double kTolerance = 1e-10;
  constexpr int kTerms = 8;
  GridPtr grid = make_grid(1, 1, 16, 1.0, 1.0, 0.5, 0.01, 1);
  const std::map<std::pair<int, int>, cplx> table{{{0, 1}, 0.1 * I}, {{0, 2}, -0.25 * I}, {{0, 3}, 0.05}};
  const LinearSymbol symbol = build_symbol(grid, CoefficientSeries::from_table(table));
  const ComplexField u = band_limited_line(grid, 5, 3);
  const double h = 0.01;
  // P v = sum c_0j nabla^0 d^j v/dtau^j with nabla^0 = 2
  auto apply_p = [&](const std::vector<cplx>& v) {
    std::vector<cplx> out(v.size());
    for (const auto& [nj, c] : table) {
      const auto d = tau_derivative(v, *grid, nj.second);
      for (std::size_t i = 0; i < v.size(); ++i) out[i] += 2.0 * c * d[i];
    }
    return out;
  };
  std::vector<cplx> term(u.values().begin(), u.values().end()), sum = term;
  for (int m = 1; m <= kTerms; ++m) {
    term = apply_p(term);
    for (std::size_t i = 0; i < term.size(); ++i) {
      term[i] *= h / m;
      sum[i] += term[i];
    }
  }
  const ComplexField spectral = apply_exp_linear(u, symbol, h);
  const double err = relative_l2_error(spectral.values(), sum);
  return {"Maclaurin/Fourier equivalence (nt = 16, 8 terms)", err < kTolerance,
          "rel L2 " + g(err) + " (< " + g(kTolerance) + ")", {}};
}

// 7. Convolution exponential against a series of direct circular convolutions.
CheckResult convolution() {
  constexpr double kTolerance = 1e-10, kDeltaTolerance = 1e-13;
  constexpr int kTerms = 10;
  GridPtr grid = make_grid(1, 1, 32, 1.0, 1.0, 0.3, 0.01, 1);
  const std::size_t n = grid->nt();
  const double dt = grid->dt(), dz = 0.01;
  std::vector<cplx> f(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double t = static_cast<double>(signed_bin(m, n)) * dt;
    f[m] = cplx(0.8, 0.3) * std::exp(-(t - 0.4) * (t - 0.4));
  }
  std::mt19937 rng(5);
  std::normal_distribution<double> normal;
  ComplexField u(grid);
  for (auto& z : u.data()) z = {normal(rng), normal(rng)};

  auto circular = [&](const std::vector<cplx>& v) {
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) out[j] += dt * f[m] * v[(j + n - m) % n];
    return out;
  };
  std::vector<cplx> term(u.data()), sum = term;
  for (int k = 1; k < kTerms; ++k) {
    term = circular(term);
    for (std::size_t i = 0; i < n; ++i) {
      term[i] *= dz / k;
      sum[i] += term[i];
    }
  }
  const ComplexField out = apply_exp_convolution(u, RamanKernel::from_time(f, dt), dz);
  const double err = relative_l2_error(out.values(), sum);

  std::vector<cplx> delta(n);
  delta[0] = 1.0 / dt;
  const ComplexField d_out = apply_exp_convolution(u, RamanKernel::from_time(delta, dt), dz);
  std::vector<cplx> scaled(u.data());
  for (auto& z : scaled) z *= std::exp(dz);
  const double d_err = relative_l2_error(d_out.values(), scaled);
  const bool ok = err < kTolerance && d_err < kDeltaTolerance;
  return {"convolution exponential (nt = 32)", ok,
          "series rel L2 " + g(err) + " (< " + g(kTolerance) + "), delta kernel rel L2 " + g(d_err) + " (< " +
              g(kDeltaTolerance) + ")",
          {}};
}

// 8. Full-model smoke run and the sampling monitor.
CheckResult gdnlse_smoke() {
  GridPtr grid = make_grid(32, 32, 128, 0.5, 0.5, 0.25, 0.01, 50);
  PresetSpec spec{"gdnlse-eq5",
                  {{"a", 20.0}, {"b", 0.5}, {"c", 1.0}, {"d", 0.1}, {"e", 2.0}, {"f", 0.05}, {"m", 2.0}},
                  {},
                  ""};
  const PresetInstance p = instantiate(spec, grid);
  WarningLog resolved_log;
  RunHooks hooks;
  hooks.warnings = &resolved_log;
  const PropagationState s = run(p.initial, p.model, p.symbol, p.schedule, *grid, hooks);
  const bool finite = s.field.is_finite() && s.slice_index == 50;
  const bool resolved_clean = resolved_log.count(WarningKind::nyquist) == 0;

  PresetSpec narrow = spec;
  narrow.initial.width_t = 0.1;
  GridPtr short_grid = make_grid(32, 32, 128, 0.5, 0.5, 0.25, 0.01, 1);
  const PresetInstance q = instantiate(narrow, short_grid);
  WarningLog narrow_log;
  hooks.warnings = &narrow_log;
  const PropagationState bad = run(q.initial, q.model, q.symbol, q.schedule, *short_grid, hooks);
  const bool flagged = !bad.diagnostics_log.empty() && bad.diagnostics_log.back().nyquist_flag &&
                       narrow_log.count(WarningKind::nyquist) > 0;

  CheckResult r{"generalized NLSE smoke (32x32x128, 50 slices) and Nyquist flag", finite && flagged && resolved_clean,
                "", {}};
  r.detail = std::string("finite ") + (finite ? "yes" : "no") + ", resolved run unflagged " +
             (resolved_clean ? "yes" : "no") + ", tau tail " + g(s.diagnostics_log.back().nyquist_tail[2]) +
             "; under-resolved input flagged " + (flagged ? "yes" : "no") + ", tau tail " +
             g(bad.diagnostics_log.empty() ? 0.0 : bad.diagnostics_log.back().nyquist_tail[2]);
  return r;
}

// 9. Dump round trip and config fixpoint.
CheckResult io_roundtrip() {
  GridPtr grid = make_grid(4, 3, 8, 0.1, 0.2, 0.3, 0.01, 5);
  std::mt19937 rng(13);
  std::normal_distribution<double> normal;
  std::vector<cplx> values(grid->size());
  for (auto& z : values) z = {normal(rng), normal(rng)};
  const ComplexField u(grid, values, {Domain::real, Domain::spectral, Domain::real});
  const auto path = std::filesystem::temp_directory_path() / ("splitstep_validate_" + std::to_string(rng()) + ".ssfm");
  write_dump(u, path.string(), 0.125);
  const FieldDump back = read_dump(path.string());
  std::filesystem::remove(path);
  bool exact = back.zeta == 0.125 && back.field.domains() == u.domains() && back.field.grid().size() == grid->size();
  for (std::size_t i = 0; exact && i < u.size(); ++i)
    exact = std::memcmp(&u.data()[i], &back.field.data()[i], sizeof(cplx)) == 0;

  const std::string text =
      "[grid]\nnx = 32\nny = 32\nnt = 128\ndx = 0.5\ndy = 0.5\ndt = 0.25\ndzeta = 0.01\nn_steps = 50\n"
      "[preset]\nname = gdnlse-eq5\n"
      "[constants]\na = 4\nb = 0.5\nc = (1, 0.25)\nd = 0.1\ne = 3\nf = 0.05\nm = 3\ngvd_factor = 0.5\n"
      "[initial]\nprofile = gaussian\namplitude = 0.7\nwidth_t = 0.1\n"
      "[diagnostics]\nrecord_every = 5\nquantities = l2_norm, time_spectrum\n";
  const RunConfig c1 = parse_config(text);
  const std::string printed = print_config(c1);
  const RunConfig c2 = parse_config(printed);
  const bool fixpoint = c1 == c2 && print_config(c2) == printed;
  return {"I/O round trips", exact && fixpoint,
          std::string("dump bit-exact ") + (exact ? "yes" : "no") + ", config parse/print fixpoint " +
              (fixpoint ? "yes" : "no"),
          {}};
}

}  // namespace

const std::vector<ValidationCheck>& validation_suite() {
  static const std::vector<ValidationCheck> suite{
      {"splitting-order", splitting_order}, {"alpha2-ladder", alpha2_ladder},
      {"alpha2-shift", alpha2_shift},       {"soliton", soliton},
      {"linear-exactness", linear_exactness}, {"maclaurin", maclaurin},
      {"convolution", convolution},         {"gdnlse-smoke", gdnlse_smoke},
      {"io", io_roundtrip},
  };
  return suite;
}

std::vector<CheckResult> run_validation(const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> out;
  for (const auto& check : validation_suite()) {
    CheckResult r;
    try {
      r = check.run();
    } catch (const std::exception& e) {
      r = {check.name, false, std::string("error: ") + e.what(), {}};
    }
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace splitstep
