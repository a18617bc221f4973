#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "dsmimo/channel_model.hpp"
#include "dsmimo/deterministic_stats.hpp"
#include "dsmimo/error.hpp"
#include "dsmimo/high_snr.hpp"
#include "dsmimo/iid_closed_form.hpp"

using namespace dsmimo;

namespace {

MIStatistics exact(std::size_t n, std::size_t l, std::size_t m, double rho) {
  return iid_statistics(IidParams::from_dims(n, l, m, 1.0 / rho));
}

}  // namespace

TEST_CASE("case classification") {
  CHECK(order_dims(32, 64, 16).kind == HighSnrCase::AllDistinctOrLneqM);
  CHECK(order_dims(32, 64, 16).s_n == 64);
  CHECK(order_dims(32, 64, 16).s_l == 32);
  CHECK(order_dims(32, 64, 16).s_m == 16);
  CHECK(order_dims(32, 16, 16).kind == HighSnrCase::LeqM_NeqM);
  CHECK(order_dims(16, 32, 16).kind == HighSnrCase::LeqM_NeqM);
  CHECK(order_dims(32, 32, 16).kind == HighSnrCase::AllDistinctOrLneqM);
  CHECK(order_dims(16, 16, 16).kind == HighSnrCase::AllEqual);
  CHECK_THROWS_AS(order_dims(0, 2, 2), InvalidArgument);
  CHECK_THROWS_AS(high_snr_mean(4, 4, 4, 0.0), InvalidArgument);
  CHECK_THROWS_AS(high_snr_variance(4, 4, 4, -1.0), InvalidArgument);
}

TEST_CASE("frozen values") {
  CHECK(high_snr_mean(32, 64, 16, 1e4) == doctest::Approx(151.35489520722265).epsilon(1e-12));
  CHECK(high_snr_mean(16, 16, 16, 1e6) == doctest::Approx(189.52816892742837).epsilon(1e-12));
  CHECK(high_snr_variance(16, 16, 16, 1e6) == doctest::Approx(8.125061416641406).epsilon(1e-12));
  CHECK(rayleigh_high_snr(2, 4, 1e4).mean == doctest::Approx(19.193269466192145).epsilon(1e-12));
}

TEST_CASE("expansions are tight at high snr in every case") {
  struct Dims {
    std::size_t n, l, m;
  };
  for (const Dims& d : {Dims{32, 64, 16}, Dims{32, 16, 16}, Dims{16, 16, 16}, Dims{16, 32, 16}, Dims{64, 32, 16}}) {
    CAPTURE(d.n);
    CAPTURE(d.l);
    CAPTURE(d.m);
    const MIStatistics ex = exact(d.n, d.l, d.m, 1e5);
    CHECK(std::abs(high_snr_mean(d.n, d.l, d.m, 1e5) / ex.mean - 1.0) < 0.01);
    CHECK(std::abs(high_snr_variance(d.n, d.l, d.m, 1e5) / ex.variance - 1.0) < 0.03);
  }
}

TEST_CASE("swapping the two non-receive dimensions leaves the expansion unchanged") {
  for (double rho : {10.0, 1e3, 1e6}) {
    CHECK(high_snr_mean(32, 64, 16, rho) == high_snr_mean(32, 16, 64, rho));
    CHECK(high_snr_variance(32, 64, 16, rho) == high_snr_variance(32, 16, 64, rho));
    CHECK(high_snr_mean(16, 32, 16, rho) == high_snr_mean(16, 16, 32, rho));
  }
}

TEST_CASE("multiplexing gain equals the smallest dimension") {
  for (auto [n, l, m] : std::array<std::array<std::size_t, 3>, 3>{{{32, 64, 16}, {8, 24, 12}, {32, 16, 16}}}) {
    const double slope = (high_snr_mean(n, l, m, 1e5) - high_snr_mean(n, l, m, 1e4)) / std::log(10.0);
    CHECK(slope == doctest::Approx(double(std::min({n, l, m}))).epsilon(0.02));
  }
  // All-equal case.
  const double slope = (high_snr_mean(16, 16, 16, 1e9) - high_snr_mean(16, 16, 16, 1e8)) / std::log(10.0);
  CHECK(slope == doctest::Approx(16.0).epsilon(0.02));
}

TEST_CASE("a large scatterer count recovers the single-hop expansion") {
  // With L >> N, M the bounded variance approaches that of an M x N Rayleigh channel.
  const double v = high_snr_variance(32, 32000000, 16, 1e5);
  const RayleighHighSnr ray = rayleigh_high_snr(16, 32, 1e5);
  CHECK(v == doctest::Approx(ray.variance).epsilon(1e-3));
  CHECK(high_snr_mean(32, 32000000, 16, 1e5) == doctest::Approx(ray.mean).epsilon(1e-4));
}

TEST_CASE("rayleigh square channel variance grows like half log rho") {
  const double a = rayleigh_high_snr(8, 8, 1e6).variance, b = rayleigh_high_snr(8, 8, 1e8).variance;
  CHECK(b - a == doctest::Approx(std::log(10.0)).epsilon(1e-3));
  CHECK_THROWS_AS(rayleigh_high_snr(0, 4, 1.0), InvalidArgument);
}

TEST_CASE("equal dimensions maximise the variance") {
  const double equal = high_snr_variance(32, 32, 32, 1e4);
  CHECK(equal > high_snr_variance(32, 64, 32, 1e4));
  CHECK(equal > high_snr_variance(32, 16, 32, 1e4));
}

TEST_CASE("expansion error is nonincreasing in snr") {
  struct Dims {
    std::size_t n, l, m;
  };
  for (const Dims& d : {Dims{32, 64, 16}, Dims{64, 32, 16}, Dims{16, 64, 32}, Dims{32, 16, 16}, Dims{16, 16, 16}}) {
    double prev = INFINITY;
    for (double rho : {1e2, 1e3, 1e4, 1e5}) {
      const double err = std::abs(high_snr_mean(d.n, d.l, d.m, rho) - exact(d.n, d.l, d.m, rho).mean);
      CHECK(err <= prev);
      prev = err;
    }
    const double rel = std::abs(high_snr_mean(d.n, d.l, d.m, 1e4) / exact(d.n, d.l, d.m, 1e4).mean - 1.0);
    CHECK(rel < 0.01);
  }
}
