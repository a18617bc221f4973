#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dsmimo/rng.hpp"

using namespace dsmimo;

TEST_CASE("philox known-answer vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::encrypt(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::encrypt(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::encrypt(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("engine layout follows the counter assignment") {
  const RngStream s{0x0123456789abcdefULL, 7};
  SubstreamEngine e(s, 0x0000000500000003ULL);
  const auto blk = Philox4x32::encrypt({0, 3, 5, 7}, {0x89abcdef, 0x01234567});
  CHECK(e() == ((std::uint64_t(blk[1]) << 32) | blk[0]));
  CHECK(e() == ((std::uint64_t(blk[3]) << 32) | blk[2]));
  const auto next = Philox4x32::encrypt({1, 3, 5, 7}, {0x89abcdef, 0x01234567});
  CHECK(e() == ((std::uint64_t(next[1]) << 32) | next[0]));
}

TEST_CASE("substreams are reproducible and distinct") {
  static_assert(std::uniform_random_bit_generator<SubstreamEngine>);
  SubstreamEngine a({42, 0}, 0), b({42, 0}, 0), c({42, 1}, 0), d({42, 0}, 1), e({43, 0}, 0);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
    CHECK(x != e());
  }
}

TEST_CASE("normal sampler moments") {
  NormalSampler ns(SubstreamEngine({2024, 3}, 0));
  const int n = 400000;
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = ns.standard();
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  s1 /= n;
  s2 /= n;
  s3 /= n;
  s4 /= n;
  // Bounds are about five standard errors.
  CHECK(std::abs(s1) < 5 * std::sqrt(1.0 / n));
  CHECK(std::abs(s2 - 1) < 5 * std::sqrt(2.0 / n));
  CHECK(std::abs(s3) < 5 * std::sqrt(15.0 / n));
  CHECK(std::abs(s4 - 3) < 5 * std::sqrt(96.0 / n));
}

TEST_CASE("complex normal has the requested variance and independent parts") {
  NormalSampler ns(SubstreamEngine({5, 0}, 9));
  const int n = 200000;
  double pr = 0, pi = 0, cross = 0;
  for (int i = 0; i < n; ++i) {
    const cplx z = ns.complex(0.25);
    pr += z.real() * z.real();
    pi += z.imag() * z.imag();
    cross += z.real() * z.imag();
  }
  CHECK(pr / n == doctest::Approx(0.125).epsilon(0.02));
  CHECK(pi / n == doctest::Approx(0.125).epsilon(0.02));
  CHECK(std::abs(cross / n) < 5 * 0.125 / std::sqrt(double(n)));
}

TEST_CASE("normal sampler output is frozen for a fixed stream") {
  NormalSampler a(SubstreamEngine({1, 0}, 0)), b(SubstreamEngine({1, 0}, 0));
  std::vector<double> va, vb;
  for (int i = 0; i < 9; ++i) {
    va.push_back(a.standard());
    vb.push_back(b.standard());
  }
  CHECK(va == vb);
  for (double x : va) CHECK(std::isfinite(x));
}
