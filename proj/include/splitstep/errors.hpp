#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace splitstep {

enum class ErrorKind {
  invalid_argument,
  invalid_state,
  domain_violation,
  singular_symbol,
  model_evaluation,
  auxiliary_blowup,
  oracle,
  config,
  io,
  step,
  run_aborted,
  non_finite,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Configuration problem; line is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
public:
  ConfigError(std::size_t line, const std::string& what)
      : Error(ErrorKind::config, line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A substep failure, tagged with where in the propagation it happened.
class StepError : public Error {
public:
  StepError(std::size_t slice, std::string substep, ErrorKind cause, const std::string& what)
      : Error(ErrorKind::step, "slice " + std::to_string(slice) + ", substep " + substep + ": " + what),
        slice_(slice), substep_(std::move(substep)), cause_(cause) {}
  std::size_t slice() const noexcept { return slice_; }
  const std::string& substep() const noexcept { return substep_; }
  ErrorKind cause() const noexcept { return cause_; }

private:
  std::size_t slice_;
  std::string substep_;
  ErrorKind cause_;
};

class RunAborted : public Error {
public:
  RunAborted(std::size_t last_good_slice, const std::string& what)
      : Error(ErrorKind::run_aborted,
              what + " (last good slice " + std::to_string(last_good_slice) + ")"),
        last_good_slice_(last_good_slice) {}
  std::size_t last_good_slice() const noexcept { return last_good_slice_; }

private:
  std::size_t last_good_slice_;
};

enum class WarningKind { amplification, truncation, nyquist };

struct Warning {
  WarningKind kind;
  std::string message;
  double value = 0.0;
};

/// Collects non-fatal conditions raised while building or applying operators.
class WarningLog {
public:
  void add(WarningKind kind, std::string message, double value = 0.0) {
    entries_.push_back({kind, std::move(message), value});
  }
  const std::vector<Warning>& entries() const noexcept { return entries_; }
  std::size_t count(WarningKind kind) const {
    std::size_t n = 0;
    for (const auto& w : entries_) n += (w.kind == kind);
    return n;
  }
  bool empty() const noexcept { return entries_.empty(); }
  void clear() { entries_.clear(); }

private:
  std::vector<Warning> entries_;
};

inline void warn(WarningLog* log, WarningKind kind, std::string message, double value = 0.0) {
  if (log) log->add(kind, std::move(message), value);
}

}  // namespace splitstep
