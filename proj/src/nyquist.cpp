#include "splitstep/nyquist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "splitstep/errors.hpp"
#include "splitstep/fourier.hpp"

namespace splitstep {

namespace {

double axis_tail_fraction(const ComplexField& field, Axis axis, double tail_window) {
  const Grid& g = field.grid();
  const std::size_t n = g.count(axis);
  if (n < 2) return 0.0;

  ComplexField spec = field;
  if (spec.domain(axis) == Domain::real) forward_in_place(spec, AxisSet{axis});

  std::vector<double> power(n, 0.0);
  for (std::size_t ix = 0; ix < g.nx(); ++ix)
    for (std::size_t iy = 0; iy < g.ny(); ++iy)
      for (std::size_t it = 0; it < g.nt(); ++it) {
        const std::array<std::size_t, 3> idx{ix, iy, it};
        power[idx[static_cast<int>(axis)]] += std::norm(spec(ix, iy, it));
      }
  const double total = std::accumulate(power.begin(), power.end(), 0.0);
  if (!(total > 0.0)) return 0.0;

  // Highest |frequency| first; ties resolve toward the lower index.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [n](std::size_t a, std::size_t b) {
    return std::labs(signed_bin(a, n)) > std::labs(signed_bin(b, n));
  });
  const auto tail = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(tail_window * n)));
  double tail_power = 0.0;
  for (std::size_t i = 0; i < tail; ++i) tail_power += power[order[i]];
  return tail_power / total;
}

}  // namespace

NyquistReport nyquist_margin(const ComplexField& field, double threshold, double tail_window) {
  if (!(tail_window > 0.0 && tail_window <= 1.0))
    throw Error(ErrorKind::invalid_argument, "tail window must lie in (0, 1]");
  NyquistReport report;
  for (Axis a : kAllAxes) {
    const double f = axis_tail_fraction(field, a, tail_window);
    report.tail_fraction[static_cast<int>(a)] = f;
    if (f > threshold) report.flagged = true;
  }
  return report;
}

}  // namespace splitstep
