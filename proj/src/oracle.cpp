#include "splitstep/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "splitstep/fourier.hpp"
#include "splitstep/nonlinear_operators.hpp"

namespace splitstep {

namespace {

constexpr double kDivergenceLimit = 1e150;

std::vector<cplx> convolve(std::span<const cplx> u, const Grid& grid, const RamanKernel& kernel) {
  std::vector<cplx> out(u.begin(), u.end());
  transform(out, grid, AxisSet::tau(), Direction::forward);
  const std::size_t nt = grid.nt();
  for (std::size_t p = 0; p < grid.transverse_size(); ++p)
    for (std::size_t l = 0; l < nt; ++l) out[p * nt + l] *= kernel.f_freq()[l];
  transform(out, grid, AxisSet::tau(), Direction::inverse);
  return out;
}

}  // namespace

RhsEvaluation rhs(const ComplexField& field, const EquationModel& model, const LinearSymbol& symbol) {
  if (!field.all_real()) throw Error(ErrorKind::invalid_state, "rhs: field must be in real representation");
  const Grid& grid = field.grid();
  if (model.kernel && model.kernel->size() != grid.nt())
    throw Error(ErrorKind::invalid_argument, "rhs: kernel length does not match nt");

  std::vector<cplx> du = apply_symbol(field, symbol).data();
  if (model.beta) {
    std::vector<cplx> aux;
    if (model.auxiliary) aux = integrate_auxiliary(model, field);
    const std::vector<cplx> n = eval_N(model, field, aux);
    std::vector<cplx> nu(grid.size());
    for (std::size_t i = 0; i < nu.size(); ++i) nu[i] = n[i] * field.data()[i];
    for (std::size_t i = 0; i < nu.size(); ++i) du[i] += model.c1 * nu[i];
    if (model.c2 != cplx{}) {
      const std::vector<cplx> dnu = tau_derivative(nu, grid, 1);
      for (std::size_t i = 0; i < nu.size(); ++i) du[i] += model.c2 * dnu[i];
    }
  }
  if (model.kernel) {
    const std::vector<cplx> fu = convolve(field.values(), grid, *model.kernel);
    for (std::size_t i = 0; i < du.size(); ++i) du[i] += fu[i];
  }
  return {std::move(du)};
}

ComplexField reference_integrate(const ComplexField& initial, const EquationModel& model,
                                 const LinearSymbol& symbol, double dzeta_ref, std::size_t n_ref) {
  if (!(dzeta_ref > 0.0) && n_ref > 0)
    throw Error(ErrorKind::invalid_argument, "reference_integrate: dzeta_ref must be positive");
  ComplexField u = initial;
  ComplexField stage = initial;
  const std::size_t size = u.size();
  auto at = [&](const std::vector<cplx>& k, double h) -> const ComplexField& {
    for (std::size_t i = 0; i < size; ++i) stage.data()[i] = u.data()[i] + h * k[i];
    return stage;
  };
  const double h = dzeta_ref;
  for (std::size_t step = 0; step < n_ref; ++step) {
    try {
      const auto k1 = rhs(u, model, symbol).derivative;
      const auto k2 = rhs(at(k1, h / 2), model, symbol).derivative;
      const auto k3 = rhs(at(k2, h / 2), model, symbol).derivative;
      const auto k4 = rhs(at(k3, h), model, symbol).derivative;
      for (std::size_t i = 0; i < size; ++i) u.data()[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    } catch (const Error& e) {
      throw Error(ErrorKind::oracle,
                  "reference integration diverged at step " + std::to_string(step) + ": " + e.what());
    }
    if (!u.is_finite() || max_abs(u.values()) > kDivergenceLimit)
      throw Error(ErrorKind::oracle, "reference integration diverged at step " + std::to_string(step));
  }
  return u;
}

std::vector<cplx> spectral_derivative_matrix(std::size_t n, double dt) {
  const std::vector<double> w = angular_frequencies(n, dt);
  std::vector<cplx> d(n * n);
  // Entries depend on j - m only.
  std::vector<cplx> by_offset(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx s{};
    for (std::size_t l = 0; l < n; ++l)
      s += cplx(0.0, -w[l]) * std::exp(cplx(0.0, -w[l] * static_cast<double>(k) * dt));
    by_offset[k] = s / static_cast<double>(n);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m) d[j * n + m] = by_offset[(j + n - m) % n];
  return d;
}

std::vector<cplx> dense_alpha2_expm(std::span<const cplx> n_frozen, cplx c2, double dz,
                                    std::span<const cplx> u_line, double dt, double tolerance) {
  const std::size_t n = u_line.size();
  if (n_frozen.size() != n) throw Error(ErrorKind::invalid_argument, "dense_alpha2_expm: length mismatch");
  if (n > kDenseOracleMaxSize)
    throw Error(ErrorKind::invalid_argument,
                "dense_alpha2_expm: nt = " + std::to_string(n) + " exceeds " + std::to_string(kDenseOracleMaxSize));
  using Mat = Eigen::MatrixXcd;
  const std::vector<cplx> d = spectral_derivative_matrix(n, dt);
  Mat a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t m = 0; m < n; ++m) a(j, m) = dz * c2 * n_frozen[j] * d[j * n + m];

  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  a /= std::ldexp(1.0, squarings);

  Mat sum = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  bool converged = false;
  for (int k = 1; k <= 60; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
    if (term.norm() <= tolerance * sum.norm()) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(ErrorKind::oracle, "dense_alpha2_expm: Taylor series did not converge");
  for (int s = 0; s < squarings; ++s) sum = sum * sum;

  Eigen::VectorXcd v(n);
  for (std::size_t j = 0; j < n; ++j) v(j) = u_line[j];
  const Eigen::VectorXcd r = sum * v;
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = r(j);
  if (!std::all_of(out.begin(), out.end(), [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }))
    throw Error(ErrorKind::oracle, "dense_alpha2_expm: non-finite result");
  return out;
}

}  // namespace splitstep
