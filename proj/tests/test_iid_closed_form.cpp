#include <doctest.h>

#include <cmath>

#include "dsmimo/channel_model.hpp"
#include "dsmimo/deterministic_stats.hpp"
#include "dsmimo/error.hpp"
#include "dsmimo/iid_closed_form.hpp"

using namespace dsmimo;

namespace {

double cubic(const IidParams& p, double w) {
  const auto c = iid_cubic_coefficients(p);
  return ((w + c[2]) * w + c[1]) * w + c[0];
}

}  // namespace

TEST_CASE("admissible root solves the cubic") {
  for (double eta : {0.1, 0.5, 0.999, 1.0, 1.7, 8.0})
    for (double kappa : {0.01, 0.25, 1.0, 4.0, 60.0})
      for (double sigma2 : {1e-3, 0.1, 1.0, 10.0, 1e3}) {
        const IidParams p{eta, kappa, 16, sigma2};
        const double w = solve_cubic_omega(p);
        CAPTURE(eta);
        CAPTURE(kappa);
        CAPTURE(sigma2);
        CHECK(w > 0.0);
        CHECK(eta + (eta - 1.0) * w > 0.0);
        const auto c = iid_cubic_coefficients(p);
        const double scale = ((w + std::abs(c[2])) * w + std::abs(c[1])) * w + std::abs(c[0]);
        CHECK(std::abs(cubic(p, w)) <= 1e-12 * scale);
      }
}

TEST_CASE("closed form matches the general fixed-point path") {
  struct Case {
    std::size_t n, l, m;
    double sigma2;
  };
  for (const Case& c : {Case{16, 16, 16, 1.0}, Case{32, 64, 16, 0.1}, Case{8, 4, 16, 10.0}, Case{32, 4, 16, 1.0},
                        Case{3, 50, 7, 0.02}, Case{40, 2, 9, 0.5}, Case{5, 5, 20, 3.0}}) {
    const MIStatistics a = iid_statistics(IidParams::from_dims(c.n, c.l, c.m, c.sigma2));
    const MIStatistics b = deterministic_statistics(ChannelProfile::iid(c.n, c.l, c.m, c.sigma2));
    CHECK(a.solution.omega == doctest::Approx(b.solution.omega).epsilon(1e-9));
    CHECK(a.solution.delta == doctest::Approx(b.solution.delta).epsilon(1e-9));
    CHECK(a.solution.omega_bar == doctest::Approx(b.solution.omega_bar).epsilon(1e-9));
    CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-9));
    CHECK(a.variance == doctest::Approx(b.variance).epsilon(1e-8));
    CHECK(a.moments.delta_cap * a.moments.delta_s ==
          doctest::Approx(b.moments.delta_cap * b.moments.delta_s).epsilon(1e-8));
  }
}

TEST_CASE("frozen unit-ratio values") {
  const MIStatistics st = iid_statistics({1.0, 1.0, 16, 1.0});
  CHECK(st.solution.omega == doctest::Approx(0.46557123187676813).epsilon(1e-12));
  CHECK(st.solution.delta == doctest::Approx(0.6823278038280194).epsilon(1e-12));
  CHECK(st.mean == doctest::Approx(8.18225384).epsilon(1e-8));
  CHECK(st.mean / 16 == doctest::Approx(0.5113909).epsilon(1e-7));
  CHECK(st.variance == doctest::Approx(0.2726367519925797).epsilon(1e-10));
  CHECK(st.solution.residual < 1e-12);
}

TEST_CASE("few scatterers approach the single-hop Rayleigh channel") {
  for (double eta : {0.5, 1.0, 2.0})
    for (double rho : {0.1, 1.0, 10.0}) {
      const MIStatistics st = iid_statistics({eta, 1e-4, 1000, 1.0 / rho});
      const RayleighLimit lim = rayleigh_limit_stats(eta, rho);
      CHECK(st.mean / 1000 == doctest::Approx(lim.mean_per_m).epsilon(1e-3));
      CHECK(st.variance == doctest::Approx(lim.variance).epsilon(2e-3));
    }
}

TEST_CASE("rayleigh limit satisfies its quadratic") {
  for (double eta : {0.3, 1.0, 3.0})
    for (double rho : {0.01, 1.0, 100.0}) {
      const double s2 = 1.0 / rho;
      const RayleighLimit lim = rayleigh_limit_stats(eta, rho);
      CHECK(lim.v * lim.v - (eta + 1 + s2) * lim.v + eta == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
      CHECK(lim.v > 0.0);
      CHECK(lim.v < std::min(1.0, eta));
      CHECK(lim.variance == doctest::Approx(-std::log(1 - lim.v * lim.v / eta)).epsilon(1e-14));
    }
}

TEST_CASE("many-antenna-per-scatterer regime") {
  const double kappa = 1e3, eta = 2.0, sigma2 = 0.1;
  const IidParams p{eta, kappa, 2000, sigma2};
  const MIStatistics st = iid_statistics(p);
  const RankDeficientLimit lim = rank_deficient_limit(p);
  CHECK(st.variance * kappa == doctest::Approx((1.0 + eta) / eta).epsilon(0.01));
  CHECK(st.variance == doctest::Approx(lim.variance).epsilon(0.01));
  CHECK(st.solution.omega == doctest::Approx(lim.omega).epsilon(1e-3));
  CHECK(st.solution.delta == doctest::Approx(lim.delta).epsilon(1e-3));
  const double l = p.n_scat();
  CHECK(lim.mean == doctest::Approx(l * std::log(p.n_rx() / (l * sigma2))).epsilon(1e-14));
  CHECK(st.mean == doctest::Approx(lim.mean).epsilon(1e-3));
}

TEST_CASE("statistics are continuous across eta = 1 and kappa = 1") {
  for (double sigma2 : {0.05, 1.0, 20.0}) {
    const MIStatistics at = iid_statistics({1.0, 1.0, 32, sigma2});
    for (double eps : {1e-9, -1e-9}) {
      const MIStatistics e = iid_statistics({1.0 + eps, 1.0, 32, sigma2});
      const MIStatistics k = iid_statistics({1.0, 1.0 + eps, 32, sigma2});
      CHECK(e.mean == doctest::Approx(at.mean).epsilon(1e-6));
      CHECK(k.mean == doctest::Approx(at.mean).epsilon(1e-6));
      CHECK(e.variance == doctest::Approx(at.variance).epsilon(1e-6));
      CHECK(k.variance == doctest::Approx(at.variance).epsilon(1e-6));
    }
  }
}

TEST_CASE("mean and variance grow with snr") {
  double prev_mean = 0.0;
  for (double snr_db = -10; snr_db <= 40; snr_db += 5) {
    const MIStatistics st = iid_statistics({1.5, 0.5, 8, std::pow(10.0, -snr_db / 10)});
    CHECK(st.mean > prev_mean);
    CHECK(st.variance > 0.0);
    prev_mean = st.mean;
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(iid_statistics({0.0, 1.0, 4, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(iid_statistics({1.0, -1.0, 4, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(iid_statistics({1.0, 1.0, 0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(iid_statistics({1.0, 1.0, 4, 0.0}), InvalidArgument);
  const IidParams p = IidParams::from_dims(8, 4, 16, 1.0);
  CHECK(p.eta == 0.5);
  CHECK(p.kappa == 4.0);
  CHECK(p.n_rx() == 8.0);
  CHECK(p.n_scat() == 4.0);
}
