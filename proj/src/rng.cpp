#include "dsmimo/rng.hpp"

#include <cmath>
#include <numbers>

#include "dsmimo/error.hpp"

namespace dsmimo {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// Uniform on (0, 1]: never zero, so log() is finite.
inline double open_unit(std::uint64_t x) noexcept { return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53; }
inline double half_open_unit(std::uint64_t x) noexcept { return static_cast<double>(x >> 11) * 0x1.0p-53; }

}  // namespace

Philox4x32::Counter Philox4x32::encrypt(Counter c, Key k) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

SubstreamEngine::SubstreamEngine(RngStream stream, std::uint64_t block) noexcept
    : key_{static_cast<std::uint32_t>(stream.seed), static_cast<std::uint32_t>(stream.seed >> 32)},
      ctr_{0u, static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), stream.stream_id} {}

SubstreamEngine::result_type SubstreamEngine::operator()() {
  if (used_ == 4) {
    if (exhausted_) throw NumericalError("SubstreamEngine: substream exhausted");
    buf_ = Philox4x32::encrypt(ctr_, key_);
    if (++ctr_[0] == 0) exhausted_ = true;
    used_ = 0;
  }
  const std::uint64_t lo = buf_[used_], hi = buf_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

double NormalSampler::standard() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = open_unit(engine_());
  const double u2 = half_open_unit(engine_());
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

cplx NormalSampler::complex(double variance) {
  const double scale = std::sqrt(0.5 * variance);
  const double re = standard();
  const double im = standard();
  return {scale * re, scale * im};
}

}  // namespace dsmimo
