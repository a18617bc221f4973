#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "dsmimo/matrix.hpp"

namespace dsmimo {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output block
/// k is a pure function of (key, counter + k), so any substream can be
/// positioned without generating its predecessors.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter encrypt(Counter ctr, Key key) noexcept;
};

/// Provenance of a random stream: the user seed and a stream index.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint32_t stream_id = 0;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// Uniform 64-bit engine over one substream. Key = seed; counter word 0 is
/// the draw index, words 1-2 the 64-bit block index, word 3 the stream id.
/// Satisfies std::uniform_random_bit_generator.
class SubstreamEngine {
 public:
  using result_type = std::uint64_t;

  SubstreamEngine(RngStream stream, std::uint64_t block) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Throws NumericalError once 2^32 Philox blocks (2^33 outputs) are used up.
  result_type operator()();

 private:
  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  Philox4x32::Counter buf_{};
  int used_ = 4;
  bool exhausted_ = false;
};

/// Box-Muller standard normals from one substream. Deterministic across
/// platforms given a conforming libm (uses only log, sqrt, sin, cos).
class NormalSampler {
 public:
  explicit NormalSampler(SubstreamEngine engine) noexcept : engine_(engine) {}

  double standard();

  /// Circularly-symmetric complex Gaussian CN(0, variance): independent
  /// real and imaginary parts, each N(0, variance/2).
  cplx complex(double variance);

 private:
  SubstreamEngine engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dsmimo
