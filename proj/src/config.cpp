#include "splitstep/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace splitstep {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

double parse_real(const Entry& e) {
  const char* begin = e.value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || trim(end) != "" || !std::isfinite(v))
    throw ConfigError(e.line, e.key + ": expected a finite number, got '" + e.value + "'");
  return v;
}

double parse_positive(const Entry& e) {
  const double v = parse_real(e);
  if (!(v > 0.0)) throw ConfigError(e.line, e.key + " must be > 0, got '" + e.value + "'");
  return v;
}

std::size_t parse_count(const Entry& e, std::size_t min) {
  const std::string& s = e.value;
  const bool digits = !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  unsigned long long v = 0;
  if (digits) {
    try {
      v = std::stoull(s);
    } catch (const std::out_of_range&) {
      throw ConfigError(e.line, e.key + ": value out of range");
    }
  }
  if (!digits || v < min)
    throw ConfigError(e.line, e.key + " must be an integer >= " + std::to_string(min) + ", got '" + s + "'");
  return static_cast<std::size_t>(v);
}

cplx parse_complex(const Entry& e) {
  const std::string& s = e.value;
  if (!s.empty() && s.front() == '(') {
    const auto comma = s.find(',');
    if (s.back() != ')' || comma == std::string::npos)
      throw ConfigError(e.line, e.key + ": expected (re, im), got '" + s + "'");
    const Entry re{e.key, trim(s.substr(1, comma - 1)), e.line};
    const Entry im{e.key, trim(s.substr(comma + 1, s.size() - comma - 2)), e.line};
    return {parse_real(re), parse_real(im)};
  }
  return {parse_real(e), 0.0};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(cplx v) { return v.imag() == 0.0 ? fmt(v.real()) : "(" + fmt(v.real()) + ", " + fmt(v.imag()) + ")"; }

template <typename F>
auto rethrow_at(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    throw ConfigError(line, err.what());
  }
}

using Section = std::vector<Entry>;
using Handler = std::function<void(const Entry&)>;

void dispatch(const std::string& section, const Section& entries, const std::map<std::string, Handler>& handlers) {
  for (const auto& e : entries) {
    auto it = handlers.find(e.key);
    if (it == handlers.end()) throw ConfigError(e.line, "unknown key '" + e.key + "' in [" + section + "]");
    it->second(e);
  }
}

}  // namespace

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::l2_norm: return "l2_norm";
    case Quantity::peak_intensity: return "peak_intensity";
    case Quantity::time_spectrum: return "time_spectrum";
    case Quantity::transverse_spectrum: return "transverse_spectrum";
    case Quantity::full_field: return "full_field";
  }
  return "?";
}

Quantity parse_quantity(const std::string& text) {
  for (Quantity q : {Quantity::l2_norm, Quantity::peak_intensity, Quantity::time_spectrum,
                     Quantity::transverse_spectrum, Quantity::full_field})
    if (to_string(q) == text) return q;
  throw Error(ErrorKind::config, "unknown diagnostic quantity '" + text + "'");
}

RunConfig parse_config(const std::string& text) {
  static const std::vector<std::string> kSections{"grid",   "preset", "constants",   "initial",
                                                  "schedule", "solver", "diagnostics", "output"};
  std::map<std::string, Section> sections;
  std::map<std::string, std::size_t> section_line;
  std::string current;
  std::set<std::pair<std::string, std::string>> seen;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header '" + line + "'");
      current = trim(line.substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), current) == kSections.end())
        throw ConfigError(line_no, "unknown section [" + current + "]");
      if (section_line.count(current)) throw ConfigError(line_no, "duplicate section [" + current + "]");
      section_line[current] = line_no;
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value', got '" + line + "'");
    if (current.empty()) throw ConfigError(line_no, "key outside of any section");
    Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
    if (e.key.empty()) throw ConfigError(line_no, "empty key");
    if (e.value.empty()) throw ConfigError(line_no, e.key + ": empty value");
    if (!seen.insert({current, e.key}).second)
      throw ConfigError(line_no, "duplicate key '" + e.key + "' in [" + current + "]");
    sections[current].push_back(std::move(e));
  }

  RunConfig cfg;
  auto require = [&](const std::string& section, const std::vector<std::string>& keys) {
    if (!section_line.count(section)) throw ConfigError(0, "missing section [" + section + "]");
    for (const auto& k : keys) {
      const auto& s = sections[section];
      if (std::none_of(s.begin(), s.end(), [&](const Entry& e) { return e.key == k; }))
        throw ConfigError(section_line[section], "[" + section + "] is missing required key '" + k + "'");
    }
  };

  require("grid", {"nt", "dt", "dzeta", "n_steps"});
  auto& g = cfg.grid;
  dispatch("grid", sections["grid"],
           {{"nx", [&](const Entry& e) { g.nx = parse_count(e, 1); }},
            {"ny", [&](const Entry& e) { g.ny = parse_count(e, 1); }},
            {"nt", [&](const Entry& e) { g.nt = parse_count(e, 1); }},
            {"dx", [&](const Entry& e) { g.dx = parse_positive(e); }},
            {"dy", [&](const Entry& e) { g.dy = parse_positive(e); }},
            {"dt", [&](const Entry& e) { g.dt = parse_positive(e); }},
            {"dzeta", [&](const Entry& e) { g.dzeta = parse_positive(e); }},
            {"n_steps", [&](const Entry& e) { g.n_steps = parse_count(e, 0); }}});

  require("preset", {"name"});
  std::size_t preset_line = section_line["preset"];
  dispatch("preset", sections["preset"], {{"name", [&](const Entry& e) {
                                             rethrow_at(e.line, [&] { return find_preset(e.value); });
                                             cfg.preset.name = e.value;
                                             preset_line = e.line;
                                           }}});
  const PresetDescriptor& preset = find_preset(cfg.preset.name);

  std::set<std::string> known(preset.required.begin(), preset.required.end());
  for (const auto& [k, v] : preset.optional) known.insert(k);
  for (const auto& e : sections["constants"]) {
    if (!known.count(e.key))
      throw ConfigError(e.line, "unknown constant '" + e.key + "' for preset " + preset.name);
    cfg.preset.constants[e.key] = parse_complex(e);
  }
  for (const auto& k : preset.required)
    if (!cfg.preset.constants.count(k))
      throw ConfigError(preset_line, "preset " + preset.name + " requires constant '" + k + "'");

  auto& ic = cfg.preset.initial;
  ic.profile = preset.default_profile;
  dispatch("initial", sections["initial"],
           {{"profile", [&](const Entry& e) { ic.profile = rethrow_at(e.line, [&] { return parse_profile(e.value); }); }},
            {"amplitude", [&](const Entry& e) { ic.amplitude = parse_complex(e); }},
            {"width_x", [&](const Entry& e) { ic.width_x = parse_positive(e); }},
            {"width_y", [&](const Entry& e) { ic.width_y = parse_positive(e); }},
            {"width_t", [&](const Entry& e) { ic.width_t = parse_positive(e); }},
            {"offset_t", [&](const Entry& e) { ic.offset_t = parse_real(e); }},
            {"kx", [&](const Entry& e) { ic.kx = parse_real(e); }},
            {"ky", [&](const Entry& e) { ic.ky = parse_real(e); }},
            {"w", [&](const Entry& e) { ic.w = parse_real(e); }},
            {"path", [&](const Entry& e) { ic.path = e.value; }}});
  if (ic.profile == Profile::file && ic.path.empty())
    throw ConfigError(section_line.count("initial") ? section_line["initial"] : 0,
                      "profile = file needs a path");

  std::size_t name_line = 0;
  dispatch("schedule", sections["schedule"],
           {{"name", [&](const Entry& e) {
              rethrow_at(e.line, [&] { return StepSchedule::named(e.value); });
              cfg.preset.schedule_name = e.value;
              name_line = e.line;
            }},
            {"entries", [&](const Entry& e) {
               cfg.schedule_entries = rethrow_at(e.line, [&] {
                 StepSchedule s = StepSchedule::parse_entries("custom", e.value);
                 s.validate();
                 return s.entries();
               });
             }}});
  if (name_line && cfg.schedule_entries) throw ConfigError(name_line, "[schedule] takes either name or entries");

  dispatch("solver", sections["solver"],
           {{"alpha2_order",
             [&](const Entry& e) { cfg.alpha2_order = rethrow_at(e.line, [&] { return parse_alpha2_order(e.value); }); }},
            {"freeze",
             [&](const Entry& e) { cfg.freeze = rethrow_at(e.line, [&] { return parse_freeze_policy(e.value); }); }}});

  auto& d = cfg.diagnostics;
  dispatch("diagnostics", sections["diagnostics"],
           {{"record_every", [&](const Entry& e) { d.record_every = parse_count(e, 1); }},
            {"quantities", [&](const Entry& e) {
               d.quantities.clear();
               for (const auto& q : split_list(e.value)) {
                 const Quantity parsed = rethrow_at(e.line, [&] { return parse_quantity(q); });
                 if (std::find(d.quantities.begin(), d.quantities.end(), parsed) != d.quantities.end())
                   throw ConfigError(e.line, "quantity '" + q + "' listed twice");
                 d.quantities.push_back(parsed);
               }
             }},
            {"nyquist_threshold", [&](const Entry& e) {
               d.nyquist_threshold = parse_positive(e);
               if (d.nyquist_threshold >= 1.0) throw ConfigError(e.line, "nyquist_threshold must be < 1");
             }}});

  auto& o = cfg.output;
  dispatch("output", sections["output"],
           {{"directory", [&](const Entry& e) { o.directory = e.value; }},
            {"format", [&](const Entry& e) {
               if (e.value != "binary") throw ConfigError(e.line, "unknown dump format '" + e.value + "' (binary)");
               o.format = e.value;
             }},
            {"precision",
             [&](const Entry& e) { o.precision = rethrow_at(e.line, [&] { return parse_precision(e.value); }); }}});
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(0, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string print_config(const RunConfig& c) {
  std::ostringstream os;
  const auto& g = c.grid;
  os << "[grid]\n"
     << "nx = " << g.nx << "\nny = " << g.ny << "\nnt = " << g.nt << "\n"
     << "dx = " << fmt(g.dx) << "\ndy = " << fmt(g.dy) << "\ndt = " << fmt(g.dt) << "\n"
     << "dzeta = " << fmt(g.dzeta) << "\nn_steps = " << g.n_steps << "\n\n";
  os << "[preset]\nname = " << c.preset.name << "\n\n";
  if (!c.preset.constants.empty()) {
    os << "[constants]\n";
    for (const auto& [k, v] : c.preset.constants) os << k << " = " << fmt(v) << "\n";
    os << "\n";
  }
  const auto& ic = c.preset.initial;
  os << "[initial]\nprofile = " << to_string(ic.profile) << "\n"
     << "amplitude = " << fmt(ic.amplitude) << "\n"
     << "width_x = " << fmt(ic.width_x) << "\nwidth_y = " << fmt(ic.width_y) << "\n"
     << "width_t = " << fmt(ic.width_t) << "\noffset_t = " << fmt(ic.offset_t) << "\n"
     << "kx = " << fmt(ic.kx) << "\nky = " << fmt(ic.ky) << "\nw = " << fmt(ic.w) << "\n";
  if (!ic.path.empty()) os << "path = " << ic.path << "\n";
  os << "\n";
  if (c.schedule_entries) {
    os << "[schedule]\nentries = " << StepSchedule("custom", *c.schedule_entries).format_entries() << "\n\n";
  } else if (!c.preset.schedule_name.empty()) {
    os << "[schedule]\nname = " << c.preset.schedule_name << "\n\n";
  }
  os << "[solver]\nalpha2_order = " << to_string(c.alpha2_order) << "\nfreeze = " << to_string(c.freeze) << "\n\n";
  os << "[diagnostics]\nrecord_every = " << c.diagnostics.record_every << "\nquantities = ";
  for (std::size_t i = 0; i < c.diagnostics.quantities.size(); ++i)
    os << (i ? ", " : "") << to_string(c.diagnostics.quantities[i]);
  os << "\nnyquist_threshold = " << fmt(c.diagnostics.nyquist_threshold) << "\n\n";
  os << "[output]\ndirectory = " << c.output.directory << "\nformat = " << c.output.format
     << "\nprecision = " << to_string(c.output.precision) << "\n";
  return os.str();
}

GridPtr config_grid(const RunConfig& c) {
  const auto& g = c.grid;
  return make_grid(g.nx, g.ny, g.nt, g.dx, g.dy, g.dt, g.dzeta, g.n_steps);
}

RunSetup prepare_run(const RunConfig& config, WarningLog* warnings) {
  GridPtr grid = rethrow_at(0, [&] { return config_grid(config); });
  PresetInstance instance = [&] {
    try {
      return instantiate(config.preset, grid);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::config) throw ConfigError(0, e.what());
      throw;
    }
  }();
  instance.model.alpha2_order = config.alpha2_order;
  if (config.schedule_entries) instance.schedule = StepSchedule("custom", *config.schedule_entries);

  RunHooks hooks;
  hooks.record_every = config.diagnostics.record_every;
  hooks.nyquist_threshold = config.diagnostics.nyquist_threshold;
  hooks.warnings = warnings;
  hooks.options.freeze = config.freeze;
  return {std::move(grid), std::move(instance), std::move(hooks)};
}

}  // namespace splitstep
