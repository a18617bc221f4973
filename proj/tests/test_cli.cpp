#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>
#include <string>
#include <vector>

#include "dsmimo/commands.hpp"
#include "dsmimo/scenario.hpp"

namespace fs = std::filesystem;
using namespace dsmimo;

namespace {

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "dsmimo_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string(DSMIMO_CLI_PATH) + " " + args + " > " + out.string() + " 2> " +
                          (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out)};
}

fs::path write_scenario(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("iid subcommand prints one row per snr") {
  const Run r = run("iid --dims 16,16,16 --snr-db 0,10");
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "snr_db,omega,delta,omega_bar,mean_nats,mean_bits,variance");
  CHECK(ls[1].rfind("0,0.4655712318767", 0) == 0);
}

TEST_CASE("stats subcommand with a scenario file") {
  const fs::path p = write_scenario(
      "corr.json", R"({"dims": [8, 4, 6], "spectra": {"correlation": {}}, "snr_db": [0, 10], "rate": 2.0})");
  const Run r = run("stats --scenario " + p.string());
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "snr_db,mean_nats,mean_bits,variance,outage");
  CHECK(ls[2].rfind("10,", 0) == 0);

  // Flags override the file.
  const Run o = run("stats --scenario " + p.string() + " --snr-db 5");
  REQUIRE(lines(o.out).size() == 2);
  CHECK(lines(o.out)[1].rfind("5,", 0) == 0);
}

TEST_CASE("output is byte-identical across reruns") {
  const Run a = run("highsnr --dims 32,64,16 --snr-db 20:50:10");
  const Run b = run("highsnr --dims 32,64,16 --snr-db 20:50:10");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 5);
}

TEST_CASE("correlation subcommand emits json") {
  const fs::path p = write_scenario("c2.json", R"({"dims": [3, 2, 2], "spectra": {"correlation": {}}, "snr_db": [0]})");
  const Run r = run("correlation --scenario " + p.string());
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["phi_r"]["re"].size() == 3);
  CHECK(j["r"].size() == 3);
  CHECK(j["s"].size() == 2);
}

TEST_CASE("montecarlo writes its artefacts reproducibly") {
  const fs::path p = write_scenario("mc.json", R"({"dims": [4, 4, 4], "spectra": "iid", "snr_db": [10], "rate": 3.0})");
  const fs::path d1 = scratch() / "mc1", d2 = scratch() / "mc2";
  CHECK(run("montecarlo --scenario " + p.string() + " --trials 600 --seed 5 --out " + d1.string()).code == 0);
  CHECK(run("montecarlo --scenario " + p.string() + " --trials 600 --seed 5 --out " + d2.string()).code == 0);
  for (const char* f : {"samples.csv", "qq.csv", "outage.csv", "summary.json"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(d1 / f));
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
  CHECK(lines(slurp(d1 / "samples.csv")).size() == 601);
  const auto summary = nlohmann::json::parse(slurp(d1 / "summary.json"));
  CHECK(summary["trials"] == 600);
  CHECK(summary["seed"] == 5);
  CHECK(summary.contains("ks_pvalue"));

  const fs::path sweep = scratch() / "mc_sweep";
  CHECK(run("montecarlo --scenario " + p.string() + " --snr-db 0,5 --trials 50 --out " + sweep.string()).code == 0);
  CHECK(fs::exists(sweep / "snr_0" / "summary.json"));
  CHECK(fs::exists(sweep / "snr_5" / "summary.json"));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("").code == 2);
  CHECK(run("nosuch").code == 2);
  CHECK(run("iid --dims 16,16 --snr-db 0").code == 2);
  CHECK(run("iid --dims 16,16,16 --snr-db 0:10").code == 2);
  CHECK(run("stats --scenario /nonexistent/file.json").code == 2);
  const fs::path p = write_scenario("bad.json", R"({"dims": [4, 4, 4], "spectra": "iid", "snr_db": [0], "x": 1})");
  CHECK(run("stats --scenario " + p.string()).code == 2);
  const fs::path c = write_scenario("corr_only.json", R"({"dims": [4, 4, 4], "spectra": {"correlation": {}}, "snr_db": [0]})");
  CHECK(run("iid --scenario " + c.string()).code == 2);
}

TEST_CASE("in-process command helpers") {
  CHECK(cli::format_number(0.1) == "0.10000000000000001");
  CHECK(cli::format_number(3.0) == "3");
  std::ostringstream out;
  const std::vector<double> a{1, 2}, b{0.5, 0.25};
  cli::write_pairs_csv(out, "x", "y", a, b);
  CHECK(out.str() == "x,y\n1,0.5\n2,0.25\n");

  Scenario s = parse_scenario(R"({"dims": [4, 4, 4], "spectra": "iid", "snr_db": [0, 10]})");
  std::ostringstream o1, e1;
  CHECK(cli::cmd_stats(s, o1, e1) == cli::kExitOk);
  CHECK(e1.str().empty());
  CHECK(lines(o1.str()).size() == 3);
}
