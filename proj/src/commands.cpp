#include "dsmimo/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "dsmimo/deterministic_stats.hpp"
#include "dsmimo/high_snr.hpp"
#include "dsmimo/iid_closed_form.hpp"

namespace dsmimo::cli {

using nlohmann::json;

namespace {

double to_bits(double nats) { return nats / std::numbers::ln2; }

void require_iid(const Scenario& s, const char* cmd) {
  if (!s.is_iid()) throw UsageError(std::string(cmd) + ": requires \"spectra\": \"iid\"");
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  return f;
}

std::string snr_dir_name(double snr_db) { return "snr_" + format_number(snr_db); }

json matrix_json(const HermitianMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json rr = json::array(), ii = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_pairs_csv(std::ostream& out, std::string_view h1, std::string_view h2, std::span<const double> a,
                     std::span<const double> b) {
  out << h1 << ',' << h2 << '\n';
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) out << format_number(a[i]) << ',' << format_number(b[i]) << '\n';
}

int cmd_stats(const Scenario& s, std::ostream& out, std::ostream& err) {
  validate(s);
  int code = kExitOk;
  out << "snr_db,mean_nats,mean_bits,variance,outage\n";
  for (double snr : s.snr_db) {
    try {
      const MIStatistics st = deterministic_statistics(build_profile(s, snr));
      out << format_number(snr) << ',' << format_number(st.mean) << ',' << format_number(to_bits(st.mean)) << ','
          << format_number(st.variance) << ',';
      if (s.rate) out << format_number(outage_probability(*s.rate, st));
      out << '\n';
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      err << "stats: snr_db=" << format_number(snr) << ": " << e.what() << '\n';
      code = kExitNumerical;
    }
  }
  return code;
}

int cmd_iid(const Scenario& s, std::ostream& out, std::ostream& err) {
  validate(s);
  require_iid(s, "iid");
  int code = kExitOk;
  out << "snr_db,omega,delta,omega_bar,mean_nats,mean_bits,variance\n";
  for (double snr : s.snr_db) {
    try {
      const MIStatistics st = iid_statistics(IidParams::from_dims(s.n, s.l, s.m, sigma2_from_snr_db(snr)));
      out << format_number(snr) << ',' << format_number(st.solution.omega) << ',' << format_number(st.solution.delta)
          << ',' << format_number(st.solution.omega_bar) << ',' << format_number(st.mean) << ','
          << format_number(to_bits(st.mean)) << ',' << format_number(st.variance) << '\n';
    } catch (const Error& e) {
      err << "iid: snr_db=" << format_number(snr) << ": " << e.what() << '\n';
      code = kExitNumerical;
    }
  }
  return code;
}

int cmd_highsnr(const Scenario& s, std::ostream& out, std::ostream& err) {
  validate(s);
  require_iid(s, "highsnr");
  int code = kExitOk;
  out << "rho_db,exact_mean,approx_mean,exact_var,approx_var,rel_err_mean,rel_err_var\n";
  for (double rho_db : s.snr_db) {
    try {
      const double sigma2 = sigma2_from_snr_db(rho_db);
      const double rho = 1.0 / sigma2;
      const MIStatistics exact = iid_statistics(IidParams::from_dims(s.n, s.l, s.m, sigma2));
      const double am = high_snr_mean(s.n, s.l, s.m, rho);
      const double av = high_snr_variance(s.n, s.l, s.m, rho);
      out << format_number(rho_db) << ',' << format_number(exact.mean) << ',' << format_number(am) << ','
          << format_number(exact.variance) << ',' << format_number(av) << ','
          << format_number(std::abs(am - exact.mean) / std::abs(exact.mean)) << ','
          << format_number(std::abs(av - exact.variance) / std::abs(exact.variance)) << '\n';
    } catch (const Error& e) {
      err << "highsnr: rho_db=" << format_number(rho_db) << ": " << e.what() << '\n';
      code = kExitNumerical;
    }
  }
  return code;
}

int cmd_correlation(const Scenario& s, std::ostream& out, std::ostream&) {
  if (s.n == 0 || s.l == 0 || s.m == 0) throw UsageError("correlation: dims [N, L, M] must be positive");
  json doc;
  if (const auto* c = std::get_if<CorrelationParams>(&s.spectra)) {
    const HermitianMatrix pr = correlation_matrix({c->mu, c->theta_r, c->d_r, s.n});
    const HermitianMatrix ps = correlation_matrix({c->mu, c->theta_s, c->d_s, s.l});
    const HermitianMatrix pt = correlation_matrix({c->mu, c->theta_t, c->d_t, s.m});
    const ChannelProfile p = profile_from_correlations(pr, ps, pt, 1.0);
    doc["phi_r"] = matrix_json(pr);
    doc["phi_s"] = matrix_json(ps);
    doc["phi_t"] = matrix_json(pt);
    doc["r"] = p.r;
    doc["s"] = p.s;
    doc["t"] = p.t;
  } else if (const auto* e = std::get_if<ExplicitSpectra>(&s.spectra)) {
    doc["r"] = e->r;
    doc["s"] = e->s;
    doc["t"] = e->t;
  } else {
    doc["r"] = std::vector<double>(s.n, 1.0);
    doc["s"] = std::vector<double>(s.l, 1.0);
    doc["t"] = std::vector<double>(s.m, 1.0);
  }
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_montecarlo(const Scenario& s, const std::filesystem::path& out_dir, std::ostream& err,
                   const RunOptions& options) {
  validate(s);
  const std::size_t trials = s.trials.value_or(kDefaultTrials);
  if (trials < 2) throw UsageError("montecarlo: trials must be at least 2");
  const RngStream rng{s.seed.value_or(kDefaultSeed), 0};
  int code = kExitOk;

  for (std::size_t k = 0; k < s.snr_db.size(); ++k) {
    const double snr = s.snr_db[k];
    const std::filesystem::path dir = s.snr_db.size() == 1 ? out_dir : out_dir / snr_dir_name(snr);
    std::filesystem::create_directories(dir);
    try {
      const ChannelProfile profile = build_profile(s, snr);
      const MIStatistics st = deterministic_statistics(profile);
      const MonteCarloReport rep = run_trials(profile, trials, {rng.seed, static_cast<std::uint32_t>(k)}, st, options);

      {
        auto f = open_out(dir / "samples.csv");
        f << "mi_nats\n";
        for (double x : rep.samples) f << format_number(x) << '\n';
      }
      {
        const std::vector<QqPoint> qq = qq_points(rep.standardized);
        std::vector<double> th, em;
        for (const QqPoint& q : qq) {
          th.push_back(q.theoretical);
          em.push_back(q.empirical);
        }
        auto f = open_out(dir / "qq.csv");
        write_pairs_csv(f, "theoretical", "empirical", th, em);
      }
      {
        const double sd = std::sqrt(st.variance);
        std::vector<double> grid(kOutageGridPoints);
        for (std::size_t i = 0; i < grid.size(); ++i)
          grid[i] = st.mean + sd * (-4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(grid.size() - 1));
        const std::vector<double> outage = empirical_outage(rep.samples, grid);
        auto f = open_out(dir / "outage.csv");
        write_pairs_csv(f, "rate_nats", "empirical_outage", grid, outage);
      }
      {
        json summary = {{"snr_db", snr},
                        {"trials", trials},
                        {"seed", rng.seed},
                        {"stream_id", k},
                        {"block_size", kTrialBlockSize},
                        {"emp_mean", rep.emp_mean},
                        {"emp_var", rep.emp_var},
                        {"mean", st.mean},
                        {"variance", st.variance},
                        {"ks_statistic", std::isfinite(rep.ks_statistic) ? json(rep.ks_statistic) : json(nullptr)},
                        {"ks_pvalue", std::isfinite(rep.ks_pvalue) ? json(rep.ks_pvalue) : json(nullptr)}};
        if (s.rate) {
          const double r = *s.rate;
          summary["rate"] = r;
          summary["outage_approx"] = outage_probability(r, st);
          summary["outage_empirical"] = empirical_outage(rep.samples, std::span(&r, 1)).front();
        }
        auto f = open_out(dir / "summary.json");
        f << summary.dump(2) << '\n';
      }
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      err << "montecarlo: snr_db=" << format_number(snr) << ": " << e.what() << '\n';
      code = kExitNumerical;
    }
  }
  return code;
}

}  // namespace dsmimo::cli
