#pragma once

#include <string>
#include <vector>

namespace splitstep {

enum class OperatorId { linear, alpha1, alpha2, convolution };

std::string to_string(OperatorId op);
OperatorId parse_operator_id(const std::string& text);

/// Exact rational step fraction, kept in lowest terms.
struct Fraction {
  long num = 1;
  long den = 1;

  Fraction() = default;
  Fraction(long n, long d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Fraction operator+(const Fraction& o) const { return {num * o.den + o.num * den, den * o.den}; }
  bool operator==(const Fraction& o) const = default;
  std::string str() const;
  static Fraction parse(const std::string& text);
};

struct ScheduleEntry {
  OperatorId op;
  Fraction fraction;
  bool operator==(const ScheduleEntry&) const = default;
};

/// Ordered substeps of one propagation slice; each operator's fractions sum to one.
class StepSchedule {
public:
  StepSchedule() = default;
  StepSchedule(std::string name, std::vector<ScheduleEntry> entries);

  /// L 1/4, A2 1/2, L 1/4, A1 1, L 1/4, A2 1/2, L 1/4.
  static StepSchedule strang();
  /// strang() with the convolution split as C 1/2, A1 1, C 1/2 around alpha1.
  static StepSchedule strang_convolution();
  static StepSchedule named(const std::string& name);
  static std::vector<std::string> names();

  const std::string& name() const noexcept { return name_; }
  const std::vector<ScheduleEntry>& entries() const noexcept { return entries_; }

  /// Throws ErrorKind::invalid_argument when an operator's fractions do not sum to one
  /// or a fraction lies outside (0, 1].
  void validate() const;
  bool contains(OperatorId op) const;
  bool is_palindromic() const;
  StepSchedule reversed() const;
  /// "linear:1/4, alpha2:1/2, ..."
  std::string format_entries() const;
  static StepSchedule parse_entries(const std::string& name, const std::string& text);

private:
  std::string name_;
  std::vector<ScheduleEntry> entries_;
};

}  // namespace splitstep
