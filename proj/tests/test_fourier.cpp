#include <doctest.h>

#include <cmath>
#include <random>

#include "splitstep/errors.hpp"
#include "splitstep/fourier.hpp"

using namespace splitstep;

namespace {

ComplexField random_field(GridPtr g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n;
  ComplexField u(g);
  for (auto& z : u.data()) z = {n(rng), n(rng)};
  return u;
}

}  // namespace

TEST_CASE("forward transform of a Gaussian matches the continuous transform") {
  // Samples sit at tau_j = (j - n/2) dt but the phase uses j dt, so bin l carries
  // an extra e^{i w_l (n/2) dt} = (-1)^l.
  const std::size_t n = 128;
  auto g = make_grid(1, 1, n, 1.0, 1.0, 0.2, 1e-3, 1);
  const ComplexField u = sample(g, [](double, double, double t) { return std::exp(-t * t / 2.0); });
  const ComplexField U = forward(u, AxisSet::tau());
  const auto& w = g->w_axis();
  for (std::size_t l = 0; l < n; ++l) {
    const cplx expected = std::sqrt(2 * M_PI) * std::exp(-w[l] * w[l] / 2.0) * ((l % 2) ? -1.0 : 1.0);
    CHECK(std::abs(U.data()[l] - expected) < 1e-12);
  }
  CHECK(U.domain(Axis::tau) == Domain::spectral);
  CHECK(U.domain(Axis::x) == Domain::real);
}

TEST_CASE("single mode maps to a single bin") {
  auto g = make_grid(1, 1, 16, 1.0, 1.0, 0.5, 1e-3, 1);
  const double w3 = g->w_axis()[3];
  // e^{-i w t} with t = j dt lands in bin 3 with weight n dt
  ComplexField u(g);
  for (std::size_t j = 0; j < 16; ++j) u.data()[j] = std::exp(cplx(0, -w3 * j * 0.5));
  forward_in_place(u, AxisSet::tau());
  for (std::size_t l = 0; l < 16; ++l) CHECK(std::abs(u.data()[l] - (l == 3 ? cplx(8.0) : cplx(0.0))) < 1e-12);
}

TEST_CASE("round trip over any axis subset") {
  auto g = make_grid(4, 6, 8, 0.3, 0.4, 0.5, 1e-3, 1);
  const ComplexField u = random_field(g, 1);
  for (AxisSet axes : {AxisSet::all(), AxisSet::tau(), AxisSet::transverse(), AxisSet{Axis::y}}) {
    const ComplexField back = inverse(forward(u, axes), axes);
    CHECK(relative_l2_error(back.values(), u.values()) < 1e-14);
    CHECK(back.all_real());
  }
}

TEST_CASE("transforming an axis twice is an error") {
  auto g = make_grid(2, 1, 8, 1, 1, 1, 1, 1);
  ComplexField u = forward(random_field(g, 2), AxisSet::tau());
  CHECK_THROWS_AS(forward_in_place(u, AxisSet::tau()), Error);
  CHECK_THROWS_AS(inverse(u, AxisSet{Axis::x}), Error);
  to_domain(u, {Domain::spectral, Domain::real, Domain::spectral});
  CHECK(u.domain(Axis::x) == Domain::spectral);
}

TEST_CASE("Parseval with the spacing-weighted convention") {
  auto g = make_grid(1, 1, 32, 1.0, 1.0, 0.3, 1e-3, 1);
  const ComplexField u = random_field(g, 3);
  const ComplexField U = forward(u, AxisSet::tau());
  double e_t = 0, e_w = 0;
  for (std::size_t i = 0; i < 32; ++i) {
    e_t += std::norm(u.data()[i]) * 0.3;
    e_w += std::norm(U.data()[i]) / (32 * 0.3);
  }
  CHECK(e_w == doctest::Approx(e_t).epsilon(1e-13));
}

TEST_CASE("tau derivative of a band-limited signal") {
  auto g = make_grid(2, 1, 64, 1.0, 1.0, 0.1, 1e-3, 1);
  const double k = 2 * M_PI * 3 / (64 * 0.1);
  const ComplexField u = sample(g, [&](double, double, double t) { return cplx(std::sin(k * t), std::cos(2 * k * t)); });
  const auto d1 = tau_derivative(u.values(), *g, 1);
  const auto d2 = tau_derivative(u.values(), *g, 2);
  const auto& t = g->tau_axis();
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double tt = t[i % 64];
    CHECK(std::abs(d1[i] - cplx(k * std::cos(k * tt), -2 * k * std::sin(2 * k * tt))) < 1e-11);
    CHECK(std::abs(d2[i] - cplx(-k * k * std::sin(k * tt), -4 * k * k * std::cos(2 * k * tt))) < 1e-9);
  }
}

TEST_CASE("transform_line agrees with the grid transform") {
  auto g = make_grid(1, 1, 12, 1.0, 1.0, 0.7, 1e-3, 1);
  const ComplexField u = random_field(g, 4);
  std::vector<cplx> line(u.data());
  transform_line(line, 0.7, Direction::forward);
  const ComplexField U = forward(u, AxisSet::tau());
  CHECK(relative_l2_error(line, U.values()) < 1e-15);
}
