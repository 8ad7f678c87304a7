#include <doctest.h>

#include <cmath>

#include "splitstep/errors.hpp"
#include "splitstep/grid.hpp"

using namespace splitstep;

TEST_CASE("counts, spacings and sizes") {
  const Grid g(4, 2, 8, 0.5, 0.25, 0.1, 1e-3, 10);
  CHECK(g.size() == 64);
  CHECK(g.transverse_size() == 8);
  CHECK(g.count(Axis::y) == 2);
  CHECK(g.spacing(Axis::tau) == 0.1);
  CHECK(g.index(1, 1, 3) == (1 * 2 + 1) * 8 + 3);
}

TEST_CASE("real axes are centred") {
  const Grid g(4, 1, 5, 0.5, 1.0, 0.2, 1e-3, 1);
  CHECK(g.x_axis() == std::vector<double>{-1.0, -0.5, 0.0, 0.5});
  const auto& t = g.tau_axis();
  REQUIRE(t.size() == 5);
  CHECK(t[2] == 0.0);
  CHECK(t[0] == doctest::Approx(-0.4));
  CHECK(g.y_axis() == std::vector<double>{0.0});
}

TEST_CASE("angular frequencies agree bit for bit with 2 pi fftfreq") {
  // 2*np.pi*np.fft.fftfreq(8, 0.3) and (5, 0.7), written as hex floats
  const std::vector<double> w8{0x0.0p+0,
                               0x1.4f1a6c638d03fp+1,
                               0x1.4f1a6c638d03fp+2,
                               0x1.f6a7a2955385ep+2,
                               -0x1.4f1a6c638d03fp+3,
                               -0x1.f6a7a2955385ep+2,
                               -0x1.4f1a6c638d03fp+2,
                               -0x1.4f1a6c638d03fp+1};
  const std::vector<double> w5{0x0.0p+0, 0x1.cb91f3bbba140p+0, 0x1.cb91f3bbba140p+1, -0x1.cb91f3bbba140p+1,
                               -0x1.cb91f3bbba140p+0};
  CHECK(angular_frequencies(8, 0.3) == w8);
  CHECK(angular_frequencies(5, 0.7) == w5);
  CHECK(angular_frequencies(1, 0.5) == std::vector<double>{0.0});
}

TEST_CASE("even length puts the Nyquist bin at -pi/d") {
  const Grid g(1, 1, 16, 1.0, 1.0, 0.25, 1e-3, 1);
  CHECK(g.w_axis()[8] == doctest::Approx(-M_PI / 0.25));
  CHECK(signed_bin(8, 16) == -8);
  CHECK(signed_bin(7, 16) == 7);
  CHECK(signed_bin(2, 5) == 2);
  CHECK(signed_bin(3, 5) == -2);
}

TEST_CASE("frequency spacing is 2 pi over the box length") {
  const Grid g(6, 1, 1, 0.4, 1.0, 1.0, 1e-3, 1);
  CHECK(g.kx_axis()[1] == doctest::Approx(2 * M_PI / (6 * 0.4)));
  CHECK(g.w_axis() == std::vector<double>{0.0});
}

TEST_CASE("validation rejects empty axes and bad spacings") {
  CHECK_THROWS_AS(Grid(0, 1, 8, 1, 1, 1, 1, 1), Error);
  CHECK_THROWS_AS(Grid(1, 1, 8, 1, 1, 0.0, 1, 1), Error);
  CHECK_THROWS_AS(Grid(1, 1, 8, -1, 1, 1, 1, 1), Error);
  CHECK_THROWS_AS(Grid(1, 1, 8, 1, 1, 1, std::nan(""), 1), Error);
  CHECK_NOTHROW(Grid(1, 1, 8, 1, 1, 1, 1, 0));
}

TEST_CASE("with_step keeps the box") {
  const Grid g(4, 1, 8, 0.5, 1.0, 0.1, 1e-2, 10);
  const Grid h = g.with_step(5e-3, 20);
  CHECK(h.same_shape(g));
  CHECK(h.w_axis() == g.w_axis());
  CHECK(h.dzeta() == 5e-3);
  CHECK(h.n_steps() == 20);
}
