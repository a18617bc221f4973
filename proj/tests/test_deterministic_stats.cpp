#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dsmimo/channel_model.hpp"
#include "dsmimo/deterministic_stats.hpp"
#include "dsmimo/error.hpp"
#include "dsmimo/normal.hpp"

using namespace dsmimo;

TEST_CASE("frozen unit-spectrum statistics") {
  struct Row {
    std::size_t n, l, m;
    double sigma2, mean, variance;
  };
  for (const Row& r : {Row{16, 16, 16, 1.0, 8.182253842818328, 0.2726367519925797},
                       Row{32, 64, 16, 0.1, 42.70638730002732, 0.7385169177632858},
                       Row{8, 4, 16, 10.0, 0.6907143809982139, 0.019285202941669827},
                       Row{32, 4, 16, 1.0, 8.183600150242247, 0.2939756403891459}}) {
    const MIStatistics st = deterministic_statistics(ChannelProfile::iid(r.n, r.l, r.m, r.sigma2));
    CHECK(st.mean == doctest::Approx(r.mean).epsilon(1e-9));
    CHECK(st.variance == doctest::Approx(r.variance).epsilon(1e-9));
  }
}

TEST_CASE("convenience wrappers agree with the full computation") {
  const ChannelProfile p = ChannelProfile::iid(6, 9, 4, 0.4);
  const MIStatistics st = deterministic_statistics(p);
  CHECK(deterministic_emi(p) == st.mean);
  CHECK(deterministic_variance(p) == st.variance);
}

TEST_CASE("mean decreases and the variance stays positive as the noise grows") {
  using std::numbers::pi;
  const ChannelProfile base =
      profile_from_correlations(correlation_matrix({pi / 3, pi / 3, 0.5, 10}), correlation_matrix({pi / 3, pi / 6, 2.0, 7}),
                                correlation_matrix({pi / 3, pi / 3, 0.5, 5}), 1.0);
  double prev = INFINITY;
  for (double snr_db = 30; snr_db >= -20; snr_db -= 5) {
    const MIStatistics st = deterministic_statistics(base.with_sigma2(std::pow(10.0, -snr_db / 10)));
    CHECK(st.mean < prev);
    CHECK(st.mean > 0.0);
    CHECK(st.variance > 0.0);
    prev = st.mean;
  }
}

TEST_CASE("statistics are permutation invariant") {
  std::mt19937_64 gen(41);
  std::exponential_distribution<double> ex(1.0);
  ChannelProfile p;
  p.r.resize(7);
  p.s.resize(5);
  p.t.resize(6);
  for (auto* v : {&p.r, &p.s, &p.t})
    for (auto& x : *v) x = ex(gen);
  p.sigma2 = 0.3;
  const MIStatistics a = deterministic_statistics(p);
  std::reverse(p.r.begin(), p.r.end());
  std::shuffle(p.t.begin(), p.t.end(), gen);
  const MIStatistics b = deterministic_statistics(p);
  CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-10));
  CHECK(a.variance == doctest::Approx(b.variance).epsilon(1e-10));
}

TEST_CASE("a single antenna in every hop") {
  const MIStatistics st = deterministic_statistics(ChannelProfile::iid(1, 1, 1, 1.0));
  CHECK(std::isfinite(st.mean));
  CHECK(st.mean > 0.0);
  CHECK(st.variance > 0.0);
}

TEST_CASE("scaling the receive spectrum is equivalent to scaling the noise") {
  ChannelProfile p = ChannelProfile::iid(5, 4, 3, 0.5);
  p.r = {1.0, 2.0, 0.5, 1.5, 1.0};
  ChannelProfile q = p;
  for (auto& x : q.r) x *= 4.0;
  q.sigma2 = 2.0;
  const MIStatistics a = deterministic_statistics(p), b = deterministic_statistics(q);
  CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-10));
  CHECK(a.variance == doctest::Approx(b.variance).epsilon(1e-10));
}

TEST_CASE("outage probability and rate are inverse") {
  const MIStatistics st = deterministic_statistics(ChannelProfile::iid(8, 8, 8, 0.1));
  for (double p : {1e-6, 1e-3, 0.05, 0.5, 0.9, 0.999}) {
    const double rate = outage_rate(p, st);
    CHECK(outage_probability(rate, st) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK(outage_probability(st.mean, st) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(outage_rate(0.0, st), InvalidArgument);
  CHECK_THROWS_AS(outage_rate(1.0, st), InvalidArgument);
  CHECK_THROWS_AS(outage_rate(NAN, st), InvalidArgument);
}

TEST_CASE("standard normal cdf and quantile") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
  CHECK(std_normal_cdf(-3.0) == doctest::Approx(0.0013498980316301).epsilon(1e-12));
  CHECK(std_normal_cdf(-10.0) == doctest::Approx(7.61985302416047e-24).epsilon(1e-12));
  CHECK(std_normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK(std_normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-12));
  for (double p = 1e-12; p < 1.0; p *= 3.7) {
    CHECK(std_normal_cdf(std_normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    if (p >= 1e-6) CHECK(std_normal_quantile(p) == doctest::Approx(-std_normal_quantile(1.0 - p)).epsilon(1e-9).scale(1.0));
  }
  CHECK_THROWS_AS(std_normal_quantile(0.0), InvalidArgument);
  CHECK_THROWS_AS(std_normal_quantile(1.5), InvalidArgument);
}
