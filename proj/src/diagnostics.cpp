#include "splitstep/diagnostics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "splitstep/fourier.hpp"

namespace splitstep {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw Error(ErrorKind::io, "write to '" + path.string() + "' failed");
}

}  // namespace

std::vector<double> time_spectrum(const ComplexField& field) {
  const Grid& g = field.grid();
  std::vector<cplx> spec(field.values().begin(), field.values().end());
  transform(spec, g, AxisSet::tau(), Direction::forward);
  std::vector<double> p(g.nt(), 0.0);
  for (std::size_t i = 0; i < spec.size(); ++i) p[i % g.nt()] += std::norm(spec[i]);
  return p;
}

std::vector<double> transverse_spectrum(const ComplexField& field) {
  const Grid& g = field.grid();
  std::vector<cplx> spec(field.values().begin(), field.values().end());
  transform(spec, g, AxisSet::transverse(), Direction::forward);
  std::vector<double> p(g.transverse_size(), 0.0);
  for (std::size_t i = 0; i < spec.size(); ++i) p[i / g.nt()] += std::norm(spec[i]);
  return p;
}

std::string format_slice_table(const std::vector<SliceRecord>& records, bool l2, bool peak) {
  std::string out = "slice,zeta";
  if (l2) out += ",l2_norm";
  if (peak) out += ",peak_intensity";
  out += ",nyquist_x,nyquist_y,nyquist_tau,nyquist_flag\n";
  for (const auto& r : records) {
    out += std::to_string(r.slice) + "," + num(r.zeta);
    if (l2) out += "," + num(r.l2_norm);
    if (peak) out += "," + num(r.peak_intensity);
    for (double t : r.nyquist_tail) out += "," + num(t);
    out += r.nyquist_flag ? ",1\n" : ",0\n";
  }
  return out;
}

DiagnosticsWriter::DiagnosticsWriter(std::filesystem::path directory, std::vector<Quantity> quantities,
                                     Precision precision)
    : directory_(std::move(directory)), quantities_(std::move(quantities)), precision_(precision) {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create '" + directory_.string() + "': " + ec.message());
}

bool DiagnosticsWriter::wants(Quantity q) const {
  return std::find(quantities_.begin(), quantities_.end(), q) != quantities_.end();
}

void DiagnosticsWriter::record(const PropagationState& state) {
  if (state.diagnostics_log.empty()) return;
  const SliceRecord& rec = state.diagnostics_log.back();
  records_.push_back(rec);
  const Grid& g = state.field.grid();
  const std::string prefix = std::to_string(rec.slice) + "," + num(rec.zeta) + ",";
  if (wants(Quantity::time_spectrum)) {
    const auto p = time_spectrum(state.field);
    for (std::size_t l = 0; l < p.size(); ++l) time_rows_ += prefix + num(g.w_axis()[l]) + "," + num(p[l]) + "\n";
  }
  if (wants(Quantity::transverse_spectrum)) {
    const auto p = transverse_spectrum(state.field);
    for (std::size_t ix = 0; ix < g.nx(); ++ix)
      for (std::size_t iy = 0; iy < g.ny(); ++iy)
        transverse_rows_ += prefix + num(g.kx_axis()[ix]) + "," + num(g.ky_axis()[iy]) + "," +
                            num(p[ix * g.ny() + iy]) + "\n";
  }
  if (wants(Quantity::full_field))
    write_dump(state.field, (directory_ / ("field_" + std::to_string(rec.slice) + ".ssfm")).string(), rec.zeta,
               precision_);
}

void DiagnosticsWriter::flush() const {
  write_text(directory_ / "slices.csv",
             format_slice_table(records_, wants(Quantity::l2_norm), wants(Quantity::peak_intensity)));
  if (wants(Quantity::time_spectrum)) write_text(directory_ / "time_spectrum.csv", "slice,zeta,w,power\n" + time_rows_);
  if (wants(Quantity::transverse_spectrum))
    write_text(directory_ / "transverse_spectrum.csv", "slice,zeta,kx,ky,power\n" + transverse_rows_);
}

}  // namespace splitstep
