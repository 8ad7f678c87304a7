#include "splitstep/schedule.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "splitstep/errors.hpp"

namespace splitstep {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string to_string(OperatorId op) {
  switch (op) {
    case OperatorId::linear: return "linear";
    case OperatorId::alpha1: return "alpha1";
    case OperatorId::alpha2: return "alpha2";
    case OperatorId::convolution: return "convolution";
  }
  return "linear";
}

OperatorId parse_operator_id(const std::string& text) {
  if (text == "linear") return OperatorId::linear;
  if (text == "alpha1") return OperatorId::alpha1;
  if (text == "alpha2") return OperatorId::alpha2;
  if (text == "convolution") return OperatorId::convolution;
  throw Error(ErrorKind::invalid_argument,
              "unknown operator '" + text + "' (linear, alpha1, alpha2, convolution)");
}

Fraction::Fraction(long n, long d) {
  if (d == 0) throw Error(ErrorKind::invalid_argument, "fraction with zero denominator");
  if (d < 0) n = -n, d = -d;
  const long g = std::gcd(n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

std::string Fraction::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Fraction Fraction::parse(const std::string& text) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const auto slash = t.find('/');
    if (slash == std::string::npos) {
      const long n = std::stol(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return {n, 1};
    }
    const std::string a = trim(t.substr(0, slash)), b = trim(t.substr(slash + 1));
    const long n = std::stol(a, &used);
    if (used != a.size()) throw std::invalid_argument(t);
    const long d = std::stol(b, &used);
    if (used != b.size()) throw std::invalid_argument(t);
    return {n, d};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::invalid_argument, "cannot parse fraction '" + t + "' (expected n or n/d)");
  }
}

StepSchedule::StepSchedule(std::string name, std::vector<ScheduleEntry> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {}

StepSchedule StepSchedule::strang() {
  using O = OperatorId;
  return StepSchedule("strang", {{O::linear, {1, 4}},
                                 {O::alpha2, {1, 2}},
                                 {O::linear, {1, 4}},
                                 {O::alpha1, {1, 1}},
                                 {O::linear, {1, 4}},
                                 {O::alpha2, {1, 2}},
                                 {O::linear, {1, 4}}});
}

StepSchedule StepSchedule::strang_convolution() {
  using O = OperatorId;
  return StepSchedule("strang-convolution", {{O::linear, {1, 4}},
                                             {O::alpha2, {1, 2}},
                                             {O::linear, {1, 4}},
                                             {O::convolution, {1, 2}},
                                             {O::alpha1, {1, 1}},
                                             {O::convolution, {1, 2}},
                                             {O::linear, {1, 4}},
                                             {O::alpha2, {1, 2}},
                                             {O::linear, {1, 4}}});
}

StepSchedule StepSchedule::named(const std::string& name) {
  if (name == "strang") return strang();
  if (name == "strang-convolution") return strang_convolution();
  throw Error(ErrorKind::invalid_argument, "unknown schedule '" + name + "' (strang, strang-convolution, custom)");
}

std::vector<std::string> StepSchedule::names() { return {"strang", "strang-convolution"}; }

void StepSchedule::validate() const {
  if (entries_.empty()) throw Error(ErrorKind::invalid_argument, "schedule '" + name_ + "' has no entries");
  std::map<OperatorId, Fraction> sums;
  for (const auto& e : entries_) {
    if (e.fraction.num <= 0 || e.fraction.num > e.fraction.den)
      throw Error(ErrorKind::invalid_argument,
                  "schedule '" + name_ + "': fraction " + e.fraction.str() + " lies outside (0, 1]");
    auto [it, inserted] = sums.try_emplace(e.op, e.fraction);
    if (!inserted) it->second = it->second + e.fraction;
  }
  for (const auto& [op, sum] : sums)
    if (!(sum == Fraction{1, 1}))
      throw Error(ErrorKind::invalid_argument, "schedule '" + name_ + "': fractions of " + to_string(op) +
                                                   " sum to " + sum.str() + ", expected 1");
}

bool StepSchedule::contains(OperatorId op) const {
  return std::any_of(entries_.begin(), entries_.end(), [op](const ScheduleEntry& e) { return e.op == op; });
}

bool StepSchedule::is_palindromic() const { return std::equal(entries_.begin(), entries_.end(), entries_.rbegin()); }

StepSchedule StepSchedule::reversed() const {
  return StepSchedule(name_ + "-reversed", {entries_.rbegin(), entries_.rend()});
}

std::string StepSchedule::format_entries() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    os << (i ? ", " : "") << to_string(entries_[i].op) << ':' << entries_[i].fraction.str();
  return os.str();
}

StepSchedule StepSchedule::parse_entries(const std::string& name, const std::string& text) {
  std::vector<ScheduleEntry> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorKind::invalid_argument, "schedule entry '" + item + "' is not operator:fraction");
    entries.push_back({parse_operator_id(trim(item.substr(0, colon))), Fraction::parse(item.substr(colon + 1))});
  }
  StepSchedule s(name, std::move(entries));
  s.validate();
  return s;
}

}  // namespace splitstep
