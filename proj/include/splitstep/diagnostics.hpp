#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "splitstep/config.hpp"

namespace splitstep {

/// |U(w)|^2 over tau frequency, summed over the transverse points.
std::vector<double> time_spectrum(const ComplexField& field);
/// |U(kx, ky)|^2, summed over tau; row-major (kx outer).
std::vector<double> transverse_spectrum(const ComplexField& field);

/// Collects recorded slices and writes them as comma-separated tables:
///   slices.csv               slice,zeta[,l2_norm][,peak_intensity],nyquist_x,nyquist_y,nyquist_tau,nyquist_flag
///   time_spectrum.csv        slice,zeta,w,power
///   transverse_spectrum.csv  slice,zeta,kx,ky,power
/// and full_field as field_<slice>.ssfm dumps.
class DiagnosticsWriter {
public:
  DiagnosticsWriter(std::filesystem::path directory, std::vector<Quantity> quantities,
                    Precision precision = Precision::double_);

  /// Handles the newest record of state.diagnostics_log.
  void record(const PropagationState& state);
  /// Rewrites the tables from everything recorded so far.
  void flush() const;

  const std::filesystem::path& directory() const noexcept { return directory_; }
  const std::vector<SliceRecord>& records() const noexcept { return records_; }

private:
  bool wants(Quantity q) const;

  std::filesystem::path directory_;
  std::vector<Quantity> quantities_;
  Precision precision_;
  std::vector<SliceRecord> records_;
  std::string time_rows_;
  std::string transverse_rows_;
};

std::string format_slice_table(const std::vector<SliceRecord>& records, bool l2, bool peak);

}  // namespace splitstep
