#include "dsmimo/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dsmimo {

using nlohmann::json;

namespace {

double number_at(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw UsageError(std::string("scenario: '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& v, const char* what) {
  if (!v.is_array()) throw UsageError(std::string("scenario: '") + what + "' must be an array of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw UsageError(std::string("scenario: '") + what + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::size_t positive_integer(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw UsageError(std::string("scenario: '") + what + "' must be a positive integer");
  return v.get<std::size_t>();
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("snr list: cannot parse '" + std::string(text) + "'");
  return v;
}

SpectraSource parse_spectra(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "iid") return IidSpectra{};
    throw UsageError("scenario: unknown spectra '" + v.get<std::string>() + "'");
  }
  if (!v.is_object() || v.size() != 1)
    throw UsageError("scenario: 'spectra' must be \"iid\" or an object with exactly one of 'correlation', 'explicit'");
  if (v.contains("correlation")) {
    const json& c = v.at("correlation");
    if (!c.is_object()) throw UsageError("scenario: 'correlation' must be an object");
    for (const auto& [key, _] : c.items()) {
      static const char* known[] = {"mu", "theta_r", "theta_s", "theta_t", "d_r", "d_s", "d_t"};
      if (std::find(std::begin(known), std::end(known), key) == std::end(known))
        throw UsageError("scenario: unknown correlation field '" + key + "'");
    }
    CorrelationParams p;
    p.mu = number_at(c, "mu", p.mu);
    p.theta_r = number_at(c, "theta_r", p.theta_r);
    p.theta_s = number_at(c, "theta_s", p.theta_s);
    p.theta_t = number_at(c, "theta_t", p.theta_t);
    p.d_r = number_at(c, "d_r", p.d_r);
    p.d_s = number_at(c, "d_s", p.d_s);
    p.d_t = number_at(c, "d_t", p.d_t);
    return p;
  }
  if (v.contains("explicit")) {
    const json& e = v.at("explicit");
    if (!e.is_object() || !e.contains("r") || !e.contains("s") || !e.contains("t"))
      throw UsageError("scenario: 'explicit' needs arrays 'r', 's', 't'");
    return ExplicitSpectra{number_list(e.at("r"), "r"), number_list(e.at("s"), "s"), number_list(e.at("t"), "t")};
  }
  throw UsageError("scenario: unknown spectra source");
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("scenario: top level must be an object");

  Scenario s;
  if (doc.contains("dims")) {
    const json& d = doc.at("dims");
    if (!d.is_array() || d.size() != 3) throw UsageError("scenario: 'dims' must be [N, L, M]");
    s.n = positive_integer(d[0], "dims");
    s.l = positive_integer(d[1], "dims");
    s.m = positive_integer(d[2], "dims");
  }
  if (doc.contains("spectra")) s.spectra = parse_spectra(doc.at("spectra"));
  if (doc.contains("snr_db")) s.snr_db = number_list(doc.at("snr_db"), "snr_db");
  if (doc.contains("rate")) {
    if (!doc.at("rate").is_number()) throw UsageError("scenario: 'rate' must be a number");
    s.rate = doc.at("rate").get<double>();
  }
  if (doc.contains("trials")) s.trials = positive_integer(doc.at("trials"), "trials");
  if (doc.contains("seed")) {
    const json& v = doc.at("seed");
    if (!v.is_number_unsigned()) throw UsageError("scenario: 'seed' must be a nonnegative integer");
    s.seed = v.get<std::uint64_t>();
  }
  for (const auto& [key, _] : doc.items()) {
    static const char* known[] = {"dims", "spectra", "snr_db", "rate", "trials", "seed"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw UsageError("scenario: unknown field '" + key + "'");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("scenario: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string canonical_json(const Scenario& s) {
  json doc;
  doc["dims"] = json::array({s.n, s.l, s.m});
  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, IidSpectra>) {
          doc["spectra"] = "iid";
        } else if constexpr (std::is_same_v<T, CorrelationParams>) {
          doc["spectra"] = {{"correlation",
                             {{"mu", src.mu}, {"theta_r", src.theta_r}, {"theta_s", src.theta_s},
                              {"theta_t", src.theta_t}, {"d_r", src.d_r}, {"d_s", src.d_s}, {"d_t", src.d_t}}}};
        } else {
          doc["spectra"] = {{"explicit", {{"r", src.r}, {"s", src.s}, {"t", src.t}}}};
        }
      },
      s.spectra);
  doc["snr_db"] = s.snr_db;
  if (s.rate) doc["rate"] = *s.rate;
  if (s.trials) doc["trials"] = *s.trials;
  if (s.seed) doc["seed"] = *s.seed;
  return doc.dump(2) + "\n";
}

void validate(const Scenario& s) {
  if (s.n == 0 || s.l == 0 || s.m == 0) throw UsageError("scenario: dims [N, L, M] must be positive");
  if (s.snr_db.empty()) throw UsageError("scenario: snr_db list is empty");
  for (double v : s.snr_db)
    if (!std::isfinite(v)) throw UsageError("scenario: snr_db values must be finite");
  if (const auto* e = std::get_if<ExplicitSpectra>(&s.spectra)) {
    if (e->r.size() != s.n || e->s.size() != s.l || e->t.size() != s.m)
      throw UsageError("scenario: explicit spectra lengths must match dims");
  }
}

std::vector<double> parse_snr_db(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) throw UsageError("snr list is empty");
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
      throw UsageError("snr range must be a:b:step");
    const double a = parse_double(text.substr(0, c1));
    const double b = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_double(text.substr(c2 + 1));
    if (!(step > 0.0) || b < a) throw UsageError("snr range needs step > 0 and b >= a");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) out.push_back(a + static_cast<double>(k) * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    out.push_back(parse_double(piece));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double sigma2_from_snr_db(double snr_db) noexcept { return std::pow(10.0, -snr_db / 10.0); }

ChannelProfile build_profile(const Scenario& s, double snr_db) {
  validate(s);
  const double sigma2 = sigma2_from_snr_db(snr_db);
  return std::visit(
      [&](const auto& src) -> ChannelProfile {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, IidSpectra>) {
          return ChannelProfile::iid(s.n, s.l, s.m, sigma2);
        } else if constexpr (std::is_same_v<T, CorrelationParams>) {
          return profile_from_correlations(correlation_matrix({src.mu, src.theta_r, src.d_r, s.n}),
                                           correlation_matrix({src.mu, src.theta_s, src.d_s, s.l}),
                                           correlation_matrix({src.mu, src.theta_t, src.d_t, s.m}), sigma2);
        } else {
          ChannelProfile p{src.r, src.s, src.t, sigma2};
          p.validate();
          return p;
        }
      },
      s.spectra);
}

}  // namespace dsmimo
