#include "splitstep/model.hpp"

#include <cmath>

#include "splitstep/errors.hpp"
#include "splitstep/fourier.hpp"

namespace splitstep {

namespace {

void require_finite(const std::vector<cplx>& v, const char* what) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::invalid_argument, std::string(what) + " contains non-finite values");
}

}  // namespace

RamanKernel RamanKernel::from_time(std::vector<cplx> f_time, double dt) {
  if (f_time.empty()) throw Error(ErrorKind::invalid_argument, "kernel must have at least one sample");
  require_finite(f_time, "kernel");
  std::vector<cplx> f_freq = f_time;
  transform_line(f_freq, dt, Direction::forward);
  return RamanKernel(std::move(f_time), std::move(f_freq));
}

RamanKernel RamanKernel::from_frequency(std::vector<cplx> f_freq, double dt) {
  if (f_freq.empty()) throw Error(ErrorKind::invalid_argument, "kernel must have at least one sample");
  require_finite(f_freq, "kernel");
  std::vector<cplx> f_time = f_freq;
  transform_line(f_time, dt, Direction::inverse);
  return RamanKernel(std::move(f_time), std::move(f_freq));
}

std::string to_string(Alpha2Order order) {
  switch (order) {
    case Alpha2Order::commuting: return "commuting";
    case Alpha2Order::third: return "third";
    case Alpha2Order::fourth: return "fourth";
  }
  return "fourth";
}

Alpha2Order parse_alpha2_order(const std::string& text) {
  if (text == "commuting") return Alpha2Order::commuting;
  if (text == "third") return Alpha2Order::third;
  if (text == "fourth") return Alpha2Order::fourth;
  throw Error(ErrorKind::invalid_argument, "unknown alpha2 order '" + text + "' (commuting, third, fourth)");
}

}  // namespace splitstep
