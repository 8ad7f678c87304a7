#include "splitstep/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "splitstep/errors.hpp"

namespace splitstep {

namespace {

// FFTW's planner is not thread-safe, fftw_execute_dft is; plans are created once
// per (shape, axes, sign) under a lock and reused on any array with UNALIGNED.
class PlanCache {
public:
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, unsigned, int>;

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t nx, std::size_t ny, std::size_t nt, AxisSet axes, int sign) {
    const Key key{nx, ny, nt, axes.bits(), sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::array<std::size_t, 3> n{nx, ny, nt};
    const std::array<std::size_t, 3> stride{ny * nt, nt, 1};
    std::vector<fftw_iodim> dims, loops;
    for (int a = 0; a < 3; ++a) {
      fftw_iodim d{static_cast<int>(n[a]), static_cast<int>(stride[a]), static_cast<int>(stride[a])};
      if (axes.contains(static_cast<Axis>(a)))
        dims.push_back(d);
      else
        loops.push_back(d);
    }
    std::vector<cplx> scratch(nx * ny * nt);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(),
                                        static_cast<int>(loops.size()), loops.data(), buf, buf, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw Error(ErrorKind::invalid_state, "FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void run(std::span<cplx> data, std::size_t nx, std::size_t ny, std::size_t nt,
         const std::array<double, 3>& spacing, AxisSet axes, Direction dir) {
  if (axes.empty()) return;
  // e^{+i...} kernel is FFTW_BACKWARD.
  const int sign = dir == Direction::forward ? FFTW_BACKWARD : FFTW_FORWARD;
  fftw_plan plan = plan_cache().get(nx, ny, nt, axes, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);

  const std::array<std::size_t, 3> n{nx, ny, nt};
  double scale = 1.0;
  for (int a = 0; a < 3; ++a) {
    if (!axes.contains(static_cast<Axis>(a))) continue;
    scale *= dir == Direction::forward ? spacing[a] : 1.0 / (static_cast<double>(n[a]) * spacing[a]);
  }
  if (scale != 1.0)
    for (auto& z : data) z *= scale;
}

}  // namespace

void transform(std::span<cplx> data, const Grid& grid, AxisSet axes, Direction dir) {
  if (data.size() != grid.size()) throw Error(ErrorKind::invalid_argument, "transform: size mismatch");
  run(data, grid.nx(), grid.ny(), grid.nt(), {grid.dx(), grid.dy(), grid.dt()}, axes, dir);
}

void transform_line(std::span<cplx> line, double spacing, Direction dir) {
  run(line, 1, 1, line.size(), {1.0, 1.0, spacing}, AxisSet::tau(), dir);
}

void forward_in_place(ComplexField& field, AxisSet axes) {
  for (Axis a : kAllAxes)
    if (axes.contains(a) && field.domain(a) != Domain::real)
      throw Error(ErrorKind::invalid_state, "forward transform requested on an axis that is already spectral");
  transform(field.values(), field.grid(), axes, Direction::forward);
  for (Axis a : kAllAxes)
    if (axes.contains(a)) field.set_domain(a, Domain::spectral);
}

void inverse_in_place(ComplexField& field, AxisSet axes) {
  for (Axis a : kAllAxes)
    if (axes.contains(a) && field.domain(a) != Domain::spectral)
      throw Error(ErrorKind::invalid_state, "inverse transform requested on an axis that is already real");
  transform(field.values(), field.grid(), axes, Direction::inverse);
  for (Axis a : kAllAxes)
    if (axes.contains(a)) field.set_domain(a, Domain::real);
}

ComplexField forward(const ComplexField& field, AxisSet axes) {
  ComplexField out = field;
  forward_in_place(out, axes);
  return out;
}

ComplexField inverse(const ComplexField& field, AxisSet axes) {
  ComplexField out = field;
  inverse_in_place(out, axes);
  return out;
}

void to_domain(ComplexField& field, std::array<Domain, 3> target) {
  AxisSet to_spectral, to_real;
  for (Axis a : kAllAxes) {
    const Domain want = target[static_cast<int>(a)];
    if (field.domain(a) == want) continue;
    if (want == Domain::spectral)
      to_spectral = to_spectral.with(a);
    else
      to_real = to_real.with(a);
  }
  if (!to_spectral.empty()) forward_in_place(field, to_spectral);
  if (!to_real.empty()) inverse_in_place(field, to_real);
}

std::vector<cplx> tau_derivative(std::span<const cplx> values, const Grid& grid, int order) {
  std::vector<cplx> out(values.begin(), values.end());
  if (order == 0) return out;
  transform(out, grid, AxisSet::tau(), Direction::forward);
  const auto& w = grid.w_axis();
  const std::size_t nt = grid.nt();
  std::vector<cplx> factor(nt);
  for (std::size_t l = 0; l < nt; ++l) factor[l] = std::pow(cplx{0.0, -w[l]}, order);
  for (std::size_t p = 0; p < grid.transverse_size(); ++p)
    for (std::size_t l = 0; l < nt; ++l) out[p * nt + l] *= factor[l];
  transform(out, grid, AxisSet::tau(), Direction::inverse);
  return out;
}

}  // namespace splitstep
