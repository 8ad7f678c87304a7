#include <doctest.h>

#include <cmath>
#include <random>

#include "splitstep/fourier.hpp"
#include "splitstep/linear_operator.hpp"
#include "splitstep/presets.hpp"

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

ClosedForm free_dispersion() {
  return {[](double, double, double w) { return -0.5 * I * w * w; }, std::nullopt, std::nullopt, std::nullopt};
}

// Probabilists' Hermite polynomials: d^n/dx^n e^{-x^2/2} = (-1)^n He_n(x) e^{-x^2/2}.
double hermite(int n, double x) {
  double a = 1.0, b = x;
  if (n == 0) return a;
  for (int k = 1; k < n; ++k) {
    const double c = x * b - k * a;
    a = b;
    b = c;
  }
  return b;
}

}  // namespace

TEST_CASE("empty series gives the zero symbol") {
  auto g = make_grid(4, 4, 8, 0.5, 0.5, 0.3, 1e-3, 1);
  const LinearSymbol s = build_symbol(g, CoefficientSeries::from_table({}));
  CHECK(s.is_zero());
}

TEST_CASE("closed-form symbol at kx = 1, ky = 0, w = 2 with a = 4, b = 0.5") {
  // sympy: substitute d/dtau -> -iw, d/dx -> -ikx into (i/4)(1 + (i/a) d/dtau)^{-1} d2/dx2 - i b d2/dtau2
  const cplx expected = I * (11.0 / 6.0);
  const ClosedForm f = gdnlse_closed_form(4.0, 0.5, 1.0);
  CHECK(std::abs(f.evaluator(1.0, 0.0, 2.0) - expected) < 1e-15);

  // Grid with kx = 1 (nx dx = 2 pi) and w = 2 (nt dt = pi) among its bins.
  auto g = make_grid(4, 1, 3, M_PI / 2, 1.0, M_PI / 3, 1e-3, 1);
  REQUIRE(g->kx_axis()[1] == doctest::Approx(1.0));
  REQUIRE(g->w_axis()[1] == doctest::Approx(2.0));
  const LinearSymbol s = build_symbol(g, f);
  CHECK(std::abs(s.at(1, 0, 1) - expected) < 1e-14);
}

TEST_CASE("series table of the generalized operator is sparse") {
  for (int n = 0; n <= 6; ++n) CHECK(gdnlse_c(n) == (n == 2 ? I / 4.0 : cplx{}));
  for (int n = 0; n <= 4; ++n)
    for (int j = 0; j <= 4; ++j) CHECK((gdnlse_d(n, j, 0.5, 1.0) != cplx{}) == (n == 0 && j == 2));
  CHECK(gdnlse_d(0, 2, 0.5, 1.0) == -I * 0.25);
  CHECK(gdnlse_d(0, 2, 0.5, 0.5) == -I * 0.125);
}

TEST_CASE("series form converges to the closed form inside |w| < a") {
  auto g = make_grid(8, 4, 16, 0.9, 1.1, 1.7, 1e-3, 1);
  REQUIRE(std::abs(g->w_axis()[8]) < 2.0);
  const double a = 4.0, b = 0.5;
  const LinearSymbol series = build_symbol(g, gdnlse_series(a, b, 1.0, 40));
  const LinearSymbol closed = build_symbol(g, gdnlse_closed_form(a, b, 1.0));
  CHECK(relative_l2_error(series.values(), closed.values()) < 1e-13);
}

TEST_CASE("series symbol substitutes nabla^n -> (-ikx)^n + (-iky)^n with nabla^0 = 2") {
  auto g = make_grid(4, 4, 4, 0.7, 0.6, 0.5, 1e-3, 1);
  const cplx c01 = 0.3, c30 = 0.1 * I;
  const LinearSymbol s = build_symbol(g, CoefficientSeries::from_table({{{0, 1}, c01}, {{3, 0}, c30}}));
  for (std::size_t ix = 0; ix < 4; ++ix)
    for (std::size_t iy = 0; iy < 4; ++iy)
      for (std::size_t it = 0; it < 4; ++it) {
        const double kx = g->kx_axis()[ix], ky = g->ky_axis()[iy], w = g->w_axis()[it];
        const cplx expected = c01 * 2.0 * (-I * w) + c30 * (std::pow(-I * kx, 3) + std::pow(-I * ky, 3));
        CHECK(std::abs(s.at(ix, iy, it) - expected) < 1e-12);
      }
}

TEST_CASE("pole on the grid is a singular-symbol error") {
  auto g = make_grid(2, 1, 4, 1.0, 1.0, M_PI / 4, 1e-3, 1);  // w = 0, 2, -4, -2
  const double a = -g->w_axis()[2];
  REQUIRE(a == doctest::Approx(4.0));
  try {
    build_symbol(g, gdnlse_closed_form(a, 0.5, 1.0));
    FAIL("expected singular symbol");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_symbol);
    CHECK(std::string(e.what()).find("bin (0, 0, 2)") != std::string::npos);
  }
}

TEST_CASE("frequency outside the declared domain is rejected") {
  auto g = make_grid(1, 1, 16, 1.0, 1.0, 0.5, 1e-3, 1);
  ClosedForm f = free_dispersion();
  f.w_domain = FrequencyInterval{-1.0, 1.0};
  try {
    build_symbol(g, f);
    FAIL("expected domain violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain_violation);
  }
}

TEST_CASE("slowly converging truncation raises a warning") {
  auto g = make_grid(1, 1, 16, 1.0, 1.0, 0.5, 1e-3, 1);  // |w| up to 2 pi
  WarningLog log;
  build_symbol(g, gdnlse_series(4.0, 0.5, 1.0, 6), &log);
  CHECK(log.count(WarningKind::truncation) == 0);  // no transverse axis: c_2j terms vanish

  auto g2 = make_grid(8, 1, 8, 1.0, 1.0, 0.9, 1e-3, 1);
  build_symbol(g2, gdnlse_series(4.0, 0.5, 1.0, 6), &log);
  CHECK(log.count(WarningKind::truncation) == 1);
}

TEST_CASE("zero symbol leaves the field unchanged") {
  auto g = make_grid(4, 2, 8, 0.5, 0.5, 0.3, 1e-3, 1);
  const ComplexField u = random_field(g, 1);
  const LinearSymbol s = build_symbol(g, CoefficientSeries::from_table({}));
  CHECK(relative_l2_error(apply_exp_linear(u, s, 0.7).values(), u.values()) < 1e-15);
}

TEST_CASE("free dispersion of a Gaussian matches the analytic solution") {
  // u_z = (i/2) u_tt, u(t, 0) = e^{-t^2/2}: u = (1 + i z)^{-1/2} e^{-t^2 / (2 (1 + i z))}
  auto g = make_grid(1, 1, 512, 1.0, 1.0, 0.1, 1e-3, 1);
  const ComplexField u = sample(g, [](double, double, double t) { return cplx(std::exp(-t * t / 2)); });
  const LinearSymbol s = build_symbol(g, free_dispersion());
  const ComplexField v = apply_exp_linear(u, s, 1.0);
  const ComplexField exact = sample(g, [](double, double, double t) {
    const cplx q = 1.0 + I;
    return std::exp(-t * t / (2.0 * q)) / std::sqrt(q);
  });
  CHECK(relative_l2_error(v.values(), exact.values()) < 1e-12);
}

TEST_CASE("purely imaginary symbols are unitary") {
  auto g = make_grid(8, 8, 32, 0.5, 0.5, 0.3, 1e-3, 1);
  const ComplexField u = random_field(g, 2);
  const LinearSymbol s = build_symbol(g, gdnlse_closed_form(20.0, 0.5, 1.0));
  CHECK(s.is_purely_imaginary());
  const double n0 = l2_norm(u);
  CHECK(std::abs(l2_norm(apply_exp_linear(u, s, 0.37)) - n0) / n0 < 1e-12);
}

TEST_CASE("semigroup: two steps equal one") {
  auto g = make_grid(8, 4, 16, 0.5, 0.5, 0.3, 1e-3, 1);
  const ComplexField u = random_field(g, 3);
  const LinearSymbol s = build_symbol(g, gdnlse_closed_form(20.0, 0.5, 1.0));
  const ComplexField two = apply_exp_linear(apply_exp_linear(u, s, 0.2), s, 0.3);
  CHECK(relative_l2_error(two.values(), apply_exp_linear(u, s, 0.5).values()) < 1e-13);
}

TEST_CASE("spectral symbol application equals the derivative series term by term") {
  // u = e^{-(x^2 + t^2)/2} on a wide grid; derivatives from Hermite polynomials.
  auto g = make_grid(128, 1, 128, 0.25, 1.0, 0.25, 1e-3, 1);
  const std::map<std::pair<int, int>, cplx> table{{{2, 0}, 0.25 * I}, {{2, 1}, 0.1}, {{0, 2}, -0.3 * I}, {{1, 3}, 0.05}};
  const LinearSymbol s = build_symbol(g, CoefficientSeries::from_table(table));
  const ComplexField u = sample(g, [](double x, double, double t) { return cplx(std::exp(-(x * x + t * t) / 2)); });
  const ComplexField pu = apply_symbol(u, s);
  // With a single y sample, d^n/dy^n u vanishes for n >= 1 and nabla^0 u = 2u.
  const ComplexField expected = sample(g, [&](double x, double, double t) {
    auto dn = [](int n, double z) { return (n % 2 ? -1.0 : 1.0) * hermite(n, z) * std::exp(-z * z / 2); };
    cplx sum{};
    for (const auto& [nj, c] : table) {
      const auto [n, j] = nj;
      sum += c * (n == 0 ? 2.0 : 1.0) * dn(n, x) * dn(j, t);
    }
    return sum;
  });
  CHECK(relative_l2_error(pu.values(), expected.values()) < 1e-10);
}

TEST_CASE("amplifying exponential is reported") {
  auto g = make_grid(1, 1, 16, 1.0, 1.0, 0.5, 1e-3, 1);
  const LinearSymbol s(g, std::vector<cplx>(16, cplx(20.0, 0.0)));
  WarningLog log;
  s.exponential(1.0, &log);
  REQUIRE(log.count(WarningKind::amplification) == 1);
  CHECK(log.entries()[0].value == doctest::Approx(std::exp(20.0)));
  CHECK_THROWS_AS(apply_exp_linear(random_field(g, 4), s, -1.0), Error);
}
