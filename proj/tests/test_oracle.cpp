#include <doctest.h>

#include <cmath>
#include <random>

#include "splitstep/fourier.hpp"
#include "splitstep/linear_operator.hpp"
#include "splitstep/oracle.hpp"

using namespace splitstep;

namespace {

constexpr cplx I{0.0, 1.0};

EquationModel cubic() {
  EquationModel m;
  m.c1 = I;
  m.beta = [](cplx u, cplx, const PointContext&) -> cplx { return std::norm(u); };
  return m;
}

LinearSymbol dispersion(GridPtr g) {
  return build_symbol(g, ClosedForm{[](double, double, double w) { return -0.5 * I * w * w; }, std::nullopt,
                                    std::nullopt, std::nullopt});
}

}  // namespace

TEST_CASE("zero model and symbol give a zero derivative") {
  auto g = make_grid(2, 2, 16, 1.0, 1.0, 0.5, 1e-3, 1);
  EquationModel m;
  m.beta = [](cplx, cplx, const PointContext&) -> cplx { return 0.0; };
  const ComplexField u(g, std::vector<cplx>(g->size(), cplx(1.0, 2.0)));
  const auto d = rhs(u, m, LinearSymbol(g, std::vector<cplx>(g->size()))).derivative;
  CHECK(max_abs(d) == 0.0);
}

TEST_CASE("soliton right-hand side is (i/2) sech") {
  // (i/2) d2/dt2 sech + i sech^3 = (i/2)(sech - 2 sech^3) + i sech^3 (sympy)
  auto g = make_grid(1, 1, 512, 1.0, 1.0, 0.15, 1e-3, 1);
  const ComplexField u = sample(g, [](double, double, double t) { return cplx(1.0 / std::cosh(t)); });
  const auto d = rhs(u, cubic(), dispersion(g)).derivative;
  for (std::size_t j = 0; j < 512; ++j) CHECK(std::abs(d[j] - 0.5 * I / std::cosh(g->tau_axis()[j])) < 1e-10);
}

TEST_CASE("d(Nu)/dtau equals the product rule expansion") {
  auto g = make_grid(1, 1, 64, 1.0, 1.0, 0.3, 1e-3, 1);
  std::mt19937 rng(1);
  std::normal_distribution<double> n;
  std::vector<std::pair<int, cplx>> modes;
  for (int l = -3; l <= 3; ++l) modes.push_back({l, 0.1 * cplx(n(rng), n(rng))});
  const ComplexField u = sample(g, [&](double, double, double t) {
    cplx s{};
    for (auto [l, a] : modes) s += a * std::exp(-I * (2 * M_PI * l / (64 * 0.3)) * t);
    return s;
  });
  EquationModel m = cubic();
  m.c1 = 0.0;
  m.c2 = cplx(-0.5, 0.2);
  const auto full = rhs(u, m, LinearSymbol(g, std::vector<cplx>(64))).derivative;
  std::vector<cplx> nn(64);
  for (std::size_t j = 0; j < 64; ++j) nn[j] = std::norm(u.data()[j]);
  const auto dn = tau_derivative(nn, *g), du = tau_derivative(u.values(), *g);
  std::vector<cplx> expanded(64);
  for (std::size_t j = 0; j < 64; ++j) expanded[j] = m.c2 * (dn[j] * u.data()[j] + nn[j] * du[j]);
  CHECK(relative_l2_error(full, expanded) < 1e-10);
}

TEST_CASE("zero reference steps is the identity") {
  auto g = make_grid(1, 1, 16, 1.0, 1.0, 0.5, 1e-3, 1);
  const ComplexField u = sample(g, [](double, double, double t) { return cplx(std::exp(-t * t)); });
  CHECK(relative_l2_error(reference_integrate(u, cubic(), dispersion(g), 1e-3, 0).values(), u.values()) == 0.0);
}

TEST_CASE("linear-only reference agrees with the exponential at fourth order") {
  auto g = make_grid(1, 1, 64, 1.0, 1.0, 0.4, 1e-3, 1);
  EquationModel m;
  m.beta = [](cplx, cplx, const PointContext&) -> cplx { return 0.0; };
  const ComplexField u = sample(g, [](double, double, double t) { return cplx(std::exp(-t * t / 2)); });
  const LinearSymbol s = dispersion(g);
  const ComplexField exact = apply_exp_linear(u, s, 0.5);
  const double e1 = relative_l2_error(reference_integrate(u, m, s, 0.01, 50).values(), exact.values());
  const double e2 = relative_l2_error(reference_integrate(u, m, s, 0.005, 100).values(), exact.values());
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("reference soliton phase after zeta = 0.1") {
  auto g = make_grid(1, 1, 256, 1.0, 1.0, 0.15, 1e-3, 1);
  const ComplexField u = sample(g, [](double, double, double t) { return cplx(1.0 / std::cosh(t)); });
  const ComplexField v = reference_integrate(u, cubic(), dispersion(g), 1e-4, 1000);
  const ComplexField exact = sample(g, [](double, double, double t) { return std::exp(0.05 * I) / std::cosh(t); });
  CHECK(relative_l2_error(v.values(), exact.values()) < 1e-6);
}

TEST_CASE("reference divergence is an oracle error") {
  auto g = make_grid(1, 1, 16, 1.0, 1.0, 0.5, 1e-3, 1);
  EquationModel m;
  m.c1 = 1.0;
  m.beta = [](cplx u, cplx, const PointContext&) -> cplx { return std::norm(u); };
  const ComplexField u(g, std::vector<cplx>(16, 10.0));
  try {
    reference_integrate(u, m, LinearSymbol(g, std::vector<cplx>(16)), 0.1, 100);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::oracle);
  }
}

TEST_CASE("spectral differentiation matrix differentiates band-limited lines") {
  const std::size_t n = 16;
  const double dt = 0.4, k = 2 * M_PI * 2 / (n * dt);
  const auto d = spectral_derivative_matrix(n, dt);
  for (std::size_t j = 0; j < n; ++j) {
    cplx s{};
    for (std::size_t m = 0; m < n; ++m) s += d[j * n + m] * std::sin(k * m * dt);
    CHECK(std::abs(s - k * std::cos(k * j * dt)) < 1e-12);
  }
}

TEST_CASE("dense alpha2 exponential: zero N and constant N") {
  auto g = make_grid(1, 1, 32, 1.0, 1.0, 0.3, 1e-3, 1);
  const double k = 2 * M_PI * 3 / (32 * 0.3);
  auto f = [&](double t) { return std::exp(-I * k * t) + 0.5 * std::cos(2 * k * t); };
  const ComplexField u = sample(g, [&](double, double, double t) { return f(t); });
  const auto same = dense_alpha2_expm(std::vector<cplx>(32), -1.0, 0.1, u.values(), 0.3);
  CHECK(relative_l2_error(same, u.values()) < 1e-15);
  // exp(dz c2 N d/dtau) u = u(t + dz c2 N)
  const auto shifted = dense_alpha2_expm(std::vector<cplx>(32, 2.0), -0.5, 0.3, u.values(), 0.3);
  const ComplexField exact = sample(g, [&](double, double, double t) { return f(t - 0.3); });
  CHECK(relative_l2_error(shifted, exact.values()) < 1e-11);
}

TEST_CASE("dense oracle size limit") {
  std::vector<cplx> big(512);
  CHECK_THROWS_AS(dense_alpha2_expm(big, -1.0, 0.1, big, 0.1), Error);
}
