// dsmimo: deterministic and Monte Carlo statistics of double-scattering MIMO
// mutual information.
//
//   dsmimo stats       --scenario s.json [--snr-db 0:20:5] [--rate R]
//   dsmimo iid         --dims 16,16,16 --snr-db 0,10
//   dsmimo highsnr     --dims 32,64,16 --snr-db 20:50:10
//   dsmimo montecarlo  --scenario s.json --trials 10000 --seed 7 --out results/
//   dsmimo correlation --scenario s.json
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsmimo/commands.hpp"
#include "dsmimo/scenario.hpp"

namespace {

struct Overrides {
  std::string scenario_path;
  std::string snr_db;
  std::string dims;
  std::optional<double> rate;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, Overrides& o, bool monte_carlo) {
  cmd->add_option("--scenario", o.scenario_path, "Scenario JSON file");
  cmd->add_option("--snr-db", o.snr_db, "SNR grid in dB: a:b:step or comma list");
  cmd->add_option("--dims", o.dims, "N,L,M (overrides the scenario)");
  cmd->add_option("--rate", o.rate, "Target rate in nats for outage columns");
  if (monte_carlo) {
    cmd->add_option("--trials", o.trials, "Number of channel draws");
    cmd->add_option("--seed", o.seed, "64-bit RNG seed");
    cmd->add_option("--out", o.out_dir, "Output directory");
  }
}

dsmimo::Scenario resolve(const Overrides& o) {
  dsmimo::Scenario s;
  if (!o.scenario_path.empty()) s = dsmimo::load_scenario(o.scenario_path);
  if (!o.dims.empty()) {
    const std::vector<double> d = dsmimo::parse_snr_db(o.dims);
    if (d.size() != 3) throw dsmimo::UsageError("--dims expects N,L,M");
    for (double v : d)
      if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw dsmimo::UsageError("--dims entries must be positive integers");
    s.n = static_cast<std::size_t>(d[0]);
    s.l = static_cast<std::size_t>(d[1]);
    s.m = static_cast<std::size_t>(d[2]);
  }
  if (!o.snr_db.empty()) s.snr_db = dsmimo::parse_snr_db(o.snr_db);
  if (o.rate) s.rate = o.rate;
  if (o.trials) s.trials = o.trials;
  if (o.seed) s.seed = o.seed;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = dsmimo::cli;
  CLI::App app{"Double-scattering MIMO mutual information: deterministic equivalents and Monte Carlo validation"};
  app.require_subcommand(1);

  Overrides o;
  auto* stats = app.add_subcommand("stats", "Deterministic mean, variance and outage over an SNR sweep");
  auto* iid = app.add_subcommand("iid", "Closed-form statistics for identity correlations");
  auto* highsnr = app.add_subcommand("highsnr", "High-SNR expansions against the closed form");
  auto* mc = app.add_subcommand("montecarlo", "Simulate the channel and validate the approximations");
  auto* corr = app.add_subcommand("correlation", "Dump correlation matrices and spectra");
  for (auto* c : {stats, iid, highsnr, corr}) add_common(c, o, false);
  add_common(mc, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    const dsmimo::Scenario s = resolve(o);
    if (stats->parsed()) return cli::cmd_stats(s, std::cout, std::cerr);
    if (iid->parsed()) return cli::cmd_iid(s, std::cout, std::cerr);
    if (highsnr->parsed()) return cli::cmd_highsnr(s, std::cout, std::cerr);
    if (corr->parsed()) return cli::cmd_correlation(s, std::cout, std::cerr);
    return cli::cmd_montecarlo(s, o.out_dir, std::cerr);
  } catch (const dsmimo::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const dsmimo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitNumerical;
  }
}
