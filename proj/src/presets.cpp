#include "splitstep/presets.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "splitstep/dump.hpp"
#include "splitstep/fourier.hpp"

namespace splitstep {

namespace {

constexpr cplx I{0.0, 1.0};

std::map<std::string, cplx> resolve_constants(const PresetDescriptor& d, const PresetSpec& spec) {
  std::set<std::string> known(d.required.begin(), d.required.end());
  for (const auto& [k, v] : d.optional) known.insert(k);
  for (const auto& [k, v] : spec.constants) {
    if (!known.count(k)) throw Error(ErrorKind::config, "preset " + d.name + ": unknown constant '" + k + "'");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::config, "preset " + d.name + ": constant '" + k + "' is not finite");
  }
  std::map<std::string, cplx> out = d.optional;
  for (const auto& name : d.required) {
    auto it = spec.constants.find(name);
    if (it == spec.constants.end())
      throw Error(ErrorKind::config, "preset " + d.name + ": missing constant '" + name + "'");
    out[name] = it->second;
  }
  for (const auto& [k, v] : spec.constants) out[k] = v;
  return out;
}

double real_constant(const std::map<std::string, cplx>& c, const std::string& name) {
  const cplx v = c.at(name);
  if (v.imag() != 0.0) throw Error(ErrorKind::config, "constant '" + name + "' must be real");
  return v.real();
}

AuxiliaryModel density_auxiliary(double gain, cplx initial, double m) {
  // drho/dtau = gain |u|^{2m}
  return {[gain, m](cplx, cplx u, const PointContext&) -> cplx { return gain * std::pow(std::norm(u), m); },
          initial};
}

RamanKernel gaussian_kernel(cplx strength, double width, const Grid& grid) {
  const std::size_t nt = grid.nt();
  std::vector<cplx> f(nt);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * width);
  for (std::size_t m = 0; m < nt; ++m) {
    const double t = static_cast<double>(signed_bin(m, nt)) * grid.dt();
    f[m] = strength * norm * std::exp(-t * t / (2.0 * width * width));
  }
  return RamanKernel::from_time(std::move(f), grid.dt());
}

ClosedForm quadratic_symbol(cplx tau2, cplx transverse2) {
  return {[tau2, transverse2](double kx, double ky, double w) { return tau2 * w * w + transverse2 * (kx * kx + ky * ky); },
          std::nullopt, std::nullopt, std::nullopt};
}

BetaFunction cubic_beta() {
  return [](cplx u, cplx, const PointContext&) -> cplx { return std::norm(u); };
}

StepSchedule pick_schedule(const PresetSpec& spec, const EquationModel& model) {
  if (!spec.schedule_name.empty()) return StepSchedule::named(spec.schedule_name);
  return model.kernel ? StepSchedule::strang_convolution() : StepSchedule::strang();
}

}  // namespace

std::string to_string(Profile p) {
  switch (p) {
    case Profile::gaussian: return "gaussian";
    case Profile::sech: return "sech";
    case Profile::plane_wave: return "plane_wave";
    case Profile::file: return "file";
  }
  return "?";
}

Profile parse_profile(const std::string& text) {
  if (text == "gaussian") return Profile::gaussian;
  if (text == "sech") return Profile::sech;
  if (text == "plane_wave") return Profile::plane_wave;
  if (text == "file") return Profile::file;
  throw Error(ErrorKind::config, "unknown profile '" + text + "' (gaussian, sech, plane_wave, file)");
}

const std::vector<PresetDescriptor>& preset_catalog() {
  static const std::vector<PresetDescriptor> catalog{
      {"cubic-nlse-1d", "du/dz = (i/2) d2u/dtau2 + i|u|^2 u", {}, {}, Profile::sech},
      {"gdnlse-eq5",
       "generalized NLSE with space-time focusing, self-steepening, density coupling and multiphoton loss",
       {"a", "b", "c", "d", "e", "f", "m"},
       {{"gvd_factor", 1.0}, {"rho_gain", 1.0}, {"rho_initial", 0.0}},
       Profile::gaussian},
      {"derivative-nlse", "NLSE with self-steepening: i gamma (1 + i s d/dtau) |u|^2 u",
       {},
       {{"dispersion", 0.5}, {"diffraction", 0.25}, {"s", 0.1}, {"gamma", 1.0}},
       Profile::gaussian},
      {"nlse-convolution", "cubic NLSE plus a Gaussian convolution term f o u",
       {},
       {{"kernel_strength", cplx{0.0, 0.1}}, {"kernel_width", 1.0}},
       Profile::sech},
  };
  return catalog;
}

const PresetDescriptor& find_preset(const std::string& name) {
  for (const auto& d : preset_catalog())
    if (d.name == name) return d;
  std::string known;
  for (const auto& d : preset_catalog()) known += (known.empty() ? "" : ", ") + d.name;
  throw Error(ErrorKind::config, "unknown preset '" + name + "' (" + known + ")");
}

std::pair<cplx, cplx> gdnlse_q_constants(double a) { return {I, I * (I / a)}; }

cplx gdnlse_c(int n) { return n == 2 ? I / 4.0 : cplx{}; }

cplx gdnlse_d(int n, int j, double b, double gvd_factor) {
  return (n == 0 && j == 2) ? -I * b * gvd_factor / 2.0 : cplx{};
}

CoefficientSeries gdnlse_series(double a, double b, double gvd_factor, int j_max) {
  CoefficientSeries s;
  s.coefficient = [a, b, gvd_factor](int n, int j) {
    return gdnlse_c(n) * std::pow(-I / a, j) + gdnlse_d(n, j, b, gvd_factor);
  };
  s.n_max = 2;
  s.j_max = j_max;
  return s;
}

ClosedForm gdnlse_closed_form(double a, double b, double gvd_factor) {
  return {[a, b, gvd_factor](double kx, double ky, double w) {
            return -(I / 4.0) * (kx * kx + ky * ky) / (1.0 + w / a) + I * b * gvd_factor * w * w;
          },
          std::nullopt, std::nullopt, std::nullopt};
}

ComplexField make_initial_field(const InitialCondition& ic, GridPtr grid) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::config, std::string("initial condition: ") + what + " must be positive");
  };
  switch (ic.profile) {
    case Profile::gaussian: {
      positive(ic.width_x, "width_x");
      positive(ic.width_y, "width_y");
      positive(ic.width_t, "width_t");
      // A single-sample transverse axis carries no transverse profile.
      const bool use_x = grid->nx() > 1, use_y = grid->ny() > 1;
      return sample(grid, [&](double x, double y, double t) {
        double e = (t - ic.offset_t) * (t - ic.offset_t) / (2.0 * ic.width_t * ic.width_t);
        if (use_x) e += x * x / (2.0 * ic.width_x * ic.width_x);
        if (use_y) e += y * y / (2.0 * ic.width_y * ic.width_y);
        return ic.amplitude * std::exp(-e);
      });
    }
    case Profile::sech:
      positive(ic.width_t, "width_t");
      return sample(grid, [&](double, double, double t) {
        return ic.amplitude / std::cosh((t - ic.offset_t) / ic.width_t);
      });
    case Profile::plane_wave:
      return sample(grid, [&](double x, double y, double t) {
        return ic.amplitude * std::exp(-I * (ic.kx * x + ic.ky * y + ic.w * t));
      });
    case Profile::file: {
      if (ic.path.empty()) throw Error(ErrorKind::config, "initial condition: file profile needs a path");
      FieldDump dump = read_dump(ic.path);
      const Grid& g = dump.field.grid();
      if (!g.same_shape(*grid))
        throw Error(ErrorKind::config, "initial condition: dump '" + ic.path + "' has shape " +
                                           std::to_string(g.nx()) + "x" + std::to_string(g.ny()) + "x" +
                                           std::to_string(g.nt()) + ", grid does not match");
      for (Axis a : kAllAxes)
        if (std::abs(g.spacing(a) - grid->spacing(a)) > 1e-12 * grid->spacing(a))
          throw Error(ErrorKind::config, "initial condition: dump '" + ic.path + "' spacing does not match grid");
      to_domain(dump.field, {Domain::real, Domain::real, Domain::real});
      return ComplexField(grid, std::move(dump.field.data()));
    }
  }
  throw Error(ErrorKind::config, "initial condition: unknown profile");
}

PresetInstance instantiate(const PresetSpec& spec, GridPtr grid) {
  const PresetDescriptor& d = find_preset(spec.name);
  const auto c = resolve_constants(d, spec);

  EquationModel model;
  model.name = d.name;
  SymbolForm form;

  if (d.name == "cubic-nlse-1d" || d.name == "nlse-convolution") {
    model.c1 = I;
    model.beta = cubic_beta();
    form = quadratic_symbol(-I / 2.0, 0.0);
    if (d.name == "nlse-convolution") {
      const double width = real_constant(c, "kernel_width");
      if (!(width > 0.0)) throw Error(ErrorKind::config, "constant 'kernel_width' must be positive");
      model.kernel = gaussian_kernel(c.at("kernel_strength"), width, *grid);
    }
  } else if (d.name == "gdnlse-eq5") {
    const double a = real_constant(c, "a"), b = real_constant(c, "b"), e = real_constant(c, "e");
    const double m = real_constant(c, "m"), g = real_constant(c, "gvd_factor");
    const double gain = real_constant(c, "rho_gain");
    if (a == 0.0) throw Error(ErrorKind::config, "constant 'a' must be nonzero");
    if (e == 0.0) throw Error(ErrorKind::config, "constant 'e' must be nonzero");
    std::tie(model.c1, model.c2) = gdnlse_q_constants(a);
    const cplx cc = c.at("c"), dd = c.at("d"), ff = c.at("f");
    const cplx loss = dd * (1.0 - I / e);
    model.beta = [cc, loss, ff, m](cplx u, cplx rho, const PointContext&) -> cplx {
      const double i2 = std::norm(u);
      return cc * i2 - loss * rho + I * ff * std::pow(i2, m - 1.0);
    };
    model.auxiliary = density_auxiliary(gain, c.at("rho_initial"), m);
    form = gdnlse_closed_form(a, b, g);
  } else if (d.name == "derivative-nlse") {
    const cplx gamma = c.at("gamma");
    model.c1 = I * gamma;
    model.c2 = -gamma * c.at("s");
    model.beta = cubic_beta();
    form = quadratic_symbol(-I * c.at("dispersion"), -I * c.at("diffraction"));
  }

  LinearSymbol symbol = build_symbol(grid, form);
  ComplexField initial = make_initial_field(spec.initial, grid);
  StepSchedule schedule = pick_schedule(spec, model);
  return {std::move(model), std::move(symbol), std::move(initial), std::move(schedule)};
}

}  // namespace splitstep
