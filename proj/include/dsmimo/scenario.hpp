#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dsmimo/channel_model.hpp"
#include "dsmimo/error.hpp"

namespace dsmimo {

/// Malformed scenario or command-line input.
class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct IidSpectra {
  friend bool operator==(const IidSpectra&, const IidSpectra&) = default;
};

/// Angular correlation model for all three arrays. Defaults are the
/// reference linear-array setup (mu = theta_r = theta_t = pi/3,
/// theta_s = pi/6, d_r = d_t = 0.5, d_s = 2).
struct CorrelationParams {
  double mu = 1.0471975511965976;
  double theta_r = 1.0471975511965976;
  double theta_s = 0.52359877559829882;
  double theta_t = 1.0471975511965976;
  double d_r = 0.5;
  double d_s = 2.0;
  double d_t = 0.5;
  friend bool operator==(const CorrelationParams&, const CorrelationParams&) = default;
};

struct ExplicitSpectra {
  std::vector<double> r, s, t;
  friend bool operator==(const ExplicitSpectra&, const ExplicitSpectra&) = default;
};

using SpectraSource = std::variant<IidSpectra, CorrelationParams, ExplicitSpectra>;

/// Sweep description read from JSON:
///   {"dims": [N, L, M],
///    "spectra": "iid" | {"correlation": {...}} | {"explicit": {"r": [], "s": [], "t": []}},
///    "snr_db": [...], "rate": x, "trials": n, "seed": s}
/// rate, trials and seed are optional.
struct Scenario {
  std::size_t n = 0, l = 0, m = 0;
  SpectraSource spectra = IidSpectra{};
  std::vector<double> snr_db;
  std::optional<double> rate;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;

  bool is_iid() const noexcept { return std::holds_alternative<IidSpectra>(spectra); }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws UsageError on malformed JSON or schema violations.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Sorted-key, two-space-indented JSON; parse_scenario(canonical_json(s)) == s.
std::string canonical_json(const Scenario& s);

/// Checks dims, snr list, and explicit spectrum lengths. Throws UsageError.
void validate(const Scenario& s);

/// "a:b:step" (inclusive, step > 0), "a,b,c", or a single value.
std::vector<double> parse_snr_db(std::string_view text);

/// sigma2 = 10^(-snr_db / 10), unit transmit power.
double sigma2_from_snr_db(double snr_db) noexcept;

/// Channel spectra at one SNR point.
ChannelProfile build_profile(const Scenario& s, double snr_db);

}  // namespace dsmimo
