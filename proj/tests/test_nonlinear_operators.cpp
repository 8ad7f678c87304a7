#include <doctest.h>

#include <cmath>
#include <random>

#include "splitstep/fourier.hpp"
#include "splitstep/nonlinear_operators.hpp"
#include "splitstep/oracle.hpp"
#include "splitstep/sweep.hpp"

using namespace splitstep;

namespace {

constexpr cplx I{0.0, 1.0};

ComplexField random_field(GridPtr g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n;
  ComplexField u(g);
  for (auto& z : u.data()) z = {n(rng), n(rng)};
  return u;
}

EquationModel cubic() {
  EquationModel m;
  m.c1 = I;
  m.beta = [](cplx u, cplx, const PointContext&) -> cplx { return std::norm(u); };
  return m;
}

std::vector<cplx> gaussian_n(const Grid& g, double sigma) {
  std::vector<cplx> n(g.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double t = g.tau_axis()[i % g.nt()];
    n[i] = std::exp(-t * t / (sigma * sigma));
  }
  return n;
}

}  // namespace

TEST_CASE("eval_N samples beta with coordinates") {
  auto g = make_grid(2, 3, 4, 0.5, 0.5, 0.25, 1e-3, 1);
  EquationModel m;
  m.beta = [](cplx u, cplx v, const PointContext& at) -> cplx { return u * at.x + v + at.tau * I; };
  const ComplexField u = random_field(g, 1);
  std::vector<cplx> aux(g->size(), 2.0);
  const auto n = eval_N(m, u, aux);
  const std::size_t i = g->index(1, 2, 3);
  CHECK(std::abs(n[i] - (u.data()[i] * g->x_axis()[1] + 2.0 + g->tau_axis()[3] * I)) < 1e-15);
}

TEST_CASE("eval_N reports where beta went non-finite") {
  auto g = make_grid(1, 1, 8, 1, 1, 0.5, 1e-3, 1);
  EquationModel m;
  m.beta = [](cplx, cplx, const PointContext& at) -> cplx { return at.it == 5 ? std::nan("") : 0.0; };
  try {
    eval_N(m, ComplexField(g), {});
    FAIL("expected model evaluation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::model_evaluation);
    CHECK(std::string(e.what()).find("(0, 0, 5)") != std::string::npos);
  }
}

TEST_CASE("auxiliary density integrates |u|^2 along tau") {
  // rho(t) = rho0 + int_{t0}^{t} e^{-s^2} ds = rho0 + (sqrt(pi)/2)(erf t - erf t0)
  auto g = make_grid(1, 1, 512, 1.0, 1.0, 0.025, 1e-3, 1);
  EquationModel m = cubic();
  m.auxiliary = AuxiliaryModel{[](cplx, cplx u, const PointContext&) -> cplx { return std::norm(u); }, 0.5};
  const ComplexField u = sample(g, [](double, double, double t) { return cplx(std::exp(-t * t / 2)); });
  const auto rho = integrate_auxiliary(m, u);
  const double t0 = g->tau_axis()[0];
  for (std::size_t j = 0; j < 512; ++j) {
    const double t = g->tau_axis()[j];
    CHECK(std::abs(rho[j] - (0.5 + std::sqrt(M_PI) / 2 * (std::erf(t) - std::erf(t0)))) < 1e-9);
  }
}

TEST_CASE("auxiliary blow-up is an error") {
  auto g = make_grid(1, 1, 64, 1.0, 1.0, 0.5, 1e-3, 1);
  EquationModel m = cubic();
  m.auxiliary = AuxiliaryModel{[](cplx v, cplx, const PointContext&) -> cplx { return v * v * v; }, 10.0};
  try {
    integrate_auxiliary(m, ComplexField(g));
    FAIL("expected blow-up");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::auxiliary_blowup);
  }
}

TEST_CASE("alpha1 is the pointwise exponential of c1 N + c2 dN/dtau") {
  auto g = make_grid(1, 1, 64, 1.0, 1.0, 0.25, 1e-3, 1);
  EquationModel m = cubic();
  m.c2 = -0.3;
  const ComplexField u = random_field(g, 2);
  const auto n = gaussian_n(*g, 1.5);
  const ComplexField v = apply_exp_alpha1(u, m, n, 0.1);
  for (std::size_t j = 0; j < 64; ++j) {
    const double t = g->tau_axis()[j];
    const cplx dn = -2.0 * t / 2.25 * n[j];
    CHECK(std::abs(v.data()[j] - std::exp((I * n[j] - 0.3 * dn) * 0.1) * u.data()[j]) < 1e-9);
  }
}

TEST_CASE("alpha1 with real N and imaginary c1 preserves |u|") {
  auto g = make_grid(4, 1, 16, 1.0, 1.0, 0.25, 1e-3, 1);
  const ComplexField u = random_field(g, 3);
  const auto n = eval_N(cubic(), u);
  const ComplexField v = apply_exp_alpha1(u, cubic(), n, 0.7);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(v.data()[i]) == doctest::Approx(std::abs(u.data()[i])));
}

TEST_CASE("alpha2 with c2 = 0 only returns to real tau") {
  auto g = make_grid(2, 2, 16, 1.0, 1.0, 0.25, 1e-3, 1);
  const ComplexField u = random_field(g, 4);
  const ComplexField out = apply_exp_alpha2(forward(u, AxisSet::tau()), cubic(), eval_N(cubic(), u), 0.5);
  CHECK(out.all_real());
  CHECK(relative_l2_error(out.values(), u.values()) < 1e-15);
}

TEST_CASE("alpha2 requires tau spectral input") {
  auto g = make_grid(1, 1, 16, 1.0, 1.0, 0.25, 1e-3, 1);
  EquationModel m = cubic();
  m.c2 = -0.1;
  const ComplexField u = random_field(g, 5);
  CHECK_THROWS_AS(apply_exp_alpha2(u, m, eval_N(m, u), 0.1), Error);
  CHECK_THROWS_AS(apply_exp_alpha2(forward(u, AxisSet::all()), m, eval_N(m, u), 0.1), Error);
}

TEST_CASE("alpha2 with constant c2 N is an exact shift") {
  auto g = make_grid(1, 1, 64, 1.0, 1.0, 0.2, 1e-3, 1);
  EquationModel m;
  m.c2 = cplx(-0.4, 0.0);
  const double n0 = 1.5, dz = 0.25, shift = -0.4 * n0 * dz;
  const double k = 2 * M_PI * 2 / (64 * 0.2);
  auto f = [&](double t) { return cplx(std::cos(k * t), 0.5 * std::sin(3 * k * t)); };
  const ComplexField u = sample(g, [&](double, double, double t) { return f(t); });
  const ComplexField v = apply_exp_alpha2(forward(u, AxisSet::tau()), m, std::vector<cplx>(64, n0), dz);
  const ComplexField expected = sample(g, [&](double, double, double t) { return f(t + shift); });
  CHECK(relative_l2_error(v.values(), expected.values()) < 1e-12);
  // the correction terms vanish when N is constant
  for (auto order : {Alpha2Order::commuting, Alpha2Order::third}) {
    m.alpha2_order = order;
    CHECK(relative_l2_error(apply_exp_alpha2(forward(u, AxisSet::tau()), m, std::vector<cplx>(64, n0), dz).values(),
                            expected.values()) < 1e-12);
  }
}

TEST_CASE("alpha2 errors against the dense exponential follow the correction order") {
  auto g = make_grid(1, 1, 64, 1.0, 1.0, 0.25, 1e-3, 1);
  const auto n = gaussian_n(*g, 1.0);
  const cplx c2 = -1.0;
  const ComplexField u = sample(g, [](double, double, double t) {
    return std::exp(-(t - 0.3) * (t - 0.3) / 2) * std::exp(-0.5 * I * t);
  });
  const std::vector<double> dz{1e-2, 5e-3, 2.5e-3};
  const std::pair<Alpha2Order, double> cases[] = {
      {Alpha2Order::commuting, 2.0}, {Alpha2Order::third, 3.0}, {Alpha2Order::fourth, 4.0}};
  for (const auto& [order, expected] : cases) {
    EquationModel m;
    m.c2 = c2;
    m.alpha2_order = order;
    std::vector<double> err;
    for (double h : dz)
      err.push_back(relative_l2_error(apply_exp_alpha2(forward(u, AxisSet::tau()), m, n, h).values(),
                                      dense_alpha2_expm(n, c2, h, u.values(), 0.25)));
    CAPTURE(to_string(order));
    CHECK(loglog_slope(dz, err) == doctest::Approx(expected).epsilon(0.1));
  }
}

TEST_CASE("alpha2 acts per transverse point") {
  auto g = make_grid(3, 2, 32, 1.0, 1.0, 0.3, 1e-3, 1);
  EquationModel m;
  m.c2 = -0.7;
  const ComplexField u = random_field(g, 6);
  const auto n = eval_N(cubic(), u);
  const ComplexField v = apply_exp_alpha2(forward(u, AxisSet::tau()), m, n, 0.05);
  auto g1 = make_grid(1, 1, 32, 1.0, 1.0, 0.3, 1e-3, 1);
  ComplexField line(g1, std::vector<cplx>(u.line(2, 1).begin(), u.line(2, 1).end()));
  std::vector<cplx> n_line(n.begin() + g->index(2, 1, 0), n.begin() + g->index(2, 1, 0) + 32);
  const ComplexField w = apply_exp_alpha2(forward(line, AxisSet::tau()), m, n_line, 0.05);
  const auto vl = v.line(2, 1);
  CHECK(relative_l2_error(std::vector<cplx>(vl.begin(), vl.end()), w.values()) < 1e-15);
}

TEST_CASE("convolution exponential: delta kernel multiplies by e^dz") {
  auto g = make_grid(2, 1, 32, 1.0, 1.0, 0.3, 1e-3, 1);
  std::vector<cplx> f(32);
  f[0] = 1.0 / 0.3;
  const RamanKernel k = RamanKernel::from_time(f, 0.3);
  for (const auto& z : k.f_freq()) CHECK(std::abs(z - 1.0) < 1e-15);
  const ComplexField u = random_field(g, 7);
  const ComplexField v = apply_exp_convolution(u, k, 0.01);
  std::vector<cplx> e(u.data());
  for (auto& z : e) z *= std::exp(0.01);
  CHECK(relative_l2_error(v.values(), e) < 1e-14);
}

TEST_CASE("convolution exponential equals the series of direct circular convolutions") {
  auto g = make_grid(1, 1, 32, 1.0, 1.0, 0.3, 1e-3, 1);
  const std::size_t n = 32;
  std::vector<cplx> f(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double t = signed_bin(m, n) * 0.3;
    f[m] = (t >= 0 ? 1.0 : 0.0) * std::exp(-t) * cplx(0.5, 0.5);
  }
  const ComplexField u = random_field(g, 8);
  auto conv = [&](const std::vector<cplx>& v) {
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) out[j] += 0.3 * f[m] * v[(j + n - m) % n];
    return out;
  };
  const double dz = 0.01;
  std::vector<cplx> term(u.data()), sum = term;
  for (int k = 1; k < 10; ++k) {
    term = conv(term);
    for (std::size_t i = 0; i < n; ++i) sum[i] += (term[i] *= dz / k);
  }
  const ComplexField v = apply_exp_convolution(u, RamanKernel::from_time(f, 0.3), dz);
  CHECK(relative_l2_error(v.values(), sum) < 1e-12);
}

TEST_CASE("kernel built from frequency samples round-trips to time") {
  std::vector<cplx> fw(16);
  for (std::size_t l = 0; l < 16; ++l) fw[l] = cplx(1.0 / (1.0 + l), 0.1 * l);
  const RamanKernel k = RamanKernel::from_frequency(fw, 0.2);
  const RamanKernel back = RamanKernel::from_time(k.f_time(), 0.2);
  CHECK(relative_l2_error(back.f_freq(), fw) < 1e-14);
}
