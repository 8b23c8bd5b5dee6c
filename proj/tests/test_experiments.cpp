#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coorbit/error.hpp"
#include "coorbit/experiments.hpp"
#include "support.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace coorbit;
using testsupport::uniform;

namespace {

std::string tmp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "coorbit_test_cli";
  std::filesystem::create_directories(dir);
  return dir.string();
}

int run_cli(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = std::string(COORBIT_CLI) + " " + args + " > " + out + " 2>/dev/null";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("truncated_l1 of an indicator counts cells") {
  const FrequencyGrid g{64, 4.0, false};
  std::vector<cplx> slice(std::size_t(g.n) * g.n, cplx(0.0, 2.0));
  const std::vector<double> radii{0.5, 1.0, 3.0};
  const auto N = truncated_l1(slice.data(), g, radii);
  const double dx = g.x_spacing();
  for (std::size_t r = 0; r < radii.size(); ++r) {
    double count = 0;
    for (int i = 0; i < g.n; ++i)
      for (int k = 0; k < g.n; ++k)
        if (g.x_point(i, k).norm() <= radii[r]) count += 1;
    CHECK(N[r] == doctest::Approx(2.0 * count * dx * dx).epsilon(1e-12));
  }
  CHECK(N[2] == doctest::Approx(2.0 * M_PI * 9.0).epsilon(0.02));
}

TEST_CASE("log_fit recovers exact coefficients") {
  for (int trial = 0; trial < 20; ++trial) {
    const double c1 = uniform(-3, 3), c2 = uniform(-3, 3);
    std::vector<double> R, V;
    for (double r = 1.0; r <= 64.0; r *= 2.0) {
      R.push_back(r);
      V.push_back(c1 + c2 * std::log(r));
    }
    const auto [a, b] = log_fit(R, V);
    CHECK(a == doctest::Approx(c1).epsilon(1e-10));
    CHECK(b == doctest::Approx(c2).epsilon(1e-10));
  }
}

TEST_CASE("counterexample on the smallest grid") {
  CounterexampleConfig cfg;
  cfg.sizes = {128};
  const ExperimentResult r = run_counterexample(cfg);
  const Json& s = r.report["sizes"][0];
  CHECK(s["max_identity_diff"].get<double>() < 1e-10);
  for (const auto& sc : s["scales"]) {
    CHECK(sc["fit_fg"]["c2"].get<double>() > sc["fit_ff"]["c2"].get<double>());
    CHECK(sc["fg_last_increment"].get<double>() > 2 * sc["ff_last_increment"].get<double>());
  }
  cfg.sizes = {64};
  CHECK_THROWS_AS(run_counterexample(cfg), InvalidArgument);
}

TEST_CASE("calderon experiment on a small grid") {
  CalderonConfig cfg;
  cfg.family = GroupFamily::diagonal();
  cfg.grid = {128, 4.0, false};
  cfg.tests = 3;
  const ExperimentResult r = run_calderon(cfg);
  CHECK(r.pass);
  CHECK(r.code == kExitOk);
  CHECK(r.report.contains("config"));
  cfg.family = GroupFamily::scalar();
  CHECK_THROWS_AS(run_calderon(cfg), Unsupported);
}

TEST_CASE("embeddedness experiment") {
  EmbeddednessConfig cfg;
  cfg.family = GroupFamily::diagonal();
  cfg.ell_max = 4;
  cfg.levels = 5;
  const ExperimentResult r = run_embeddedness(cfg);
  CHECK(r.report["per_ell"].size() == 5);
  CHECK(r.pass == !r.report["minimal_ell"].is_null());
}

TEST_CASE("cli exit codes") {
  const std::string dir = tmp_dir();
  CHECK(run_cli("") == kExitUsage);
  CHECK(run_cli("orbit --family '{\"family\":\"nope\"}'") == kExitUsage);
  CHECK(run_cli("orbit --no-such-flag") == kExitUsage);
  CHECK(run_cli("coorbit-norm --cwt " + dir + "/missing") == kExitIo);
  CHECK(run_cli("--format xml orbit") == kExitUsage);
  CHECK(run_cli("orbit --family scalar --xi 1,0") == kExitUsage);
  CHECK(run_cli("orbit --family diagonal --xi 1,0", dir + "/orbit.csv") == kExitOk);
  CHECK(slurp(dir + "/orbit.csv").rfind("xi1,xi2,in_orbit,dist,A\n", 0) == 0);
}

TEST_CASE("cli wavelet, transform and norm pipeline") {
  const std::string dir = tmp_dir();
  const std::string fam = "--family '{\"family\":\"shearlet\",\"c\":0.5}'";
  REQUIRE(run_cli("make-wavelet " + fam + " --n 32 --xi-max 2 --out " + dir + "/psi") == kExitOk);
  REQUIRE(run_cli("make-wavelet " + fam + " --n 32 --xi-max 2 --kind moment --order 1 --out " + dir + "/f") ==
          kExitOk);
  const std::string hg = "'{\"a_min\":0.5,\"a_max\":2,\"n_a\":3,\"n_b\":3}'";
  REQUIRE(run_cli("cwt analyze --f " + dir + "/f --psi " + dir + "/psi --hgrid " + hg + " --out " + dir + "/T") ==
          kExitOk);
  REQUIRE(run_cli("--out-dir " + dir + " coorbit-norm --cwt " + dir + "/T --p 2 --q inf") == kExitOk);
  const Json rep = Json::parse(slurp(dir + "/coorbit-norm.json"));

  const SampledField f = read_field(dir + "/f"), psi = read_field(dir + "/psi");
  HGridSpec spec;
  spec.a_min = 0.5;
  spec.a_max = 2;
  spec.n_a = 3;
  spec.n_b = 3;
  MixedNormParams P;
  P.q = INFINITY;
  const double direct = mixed_norm(analyze(f, psi, make_hgrid(GroupFamily::shearlet(0.5), spec)), P);
  CHECK(rep["mixed_norm"].get<double>() == doctest::Approx(direct).epsilon(1e-12));

  // same command twice gives byte-identical reports
  REQUIRE(run_cli("coorbit-norm --cwt " + dir + "/T --p 2 --q inf", dir + "/a.json") == kExitOk);
  REQUIRE(run_cli("coorbit-norm --cwt " + dir + "/T --p 2 --q inf", dir + "/b.json") == kExitOk);
  CHECK(slurp(dir + "/a.json") == slurp(dir + "/b.json"));

  CHECK(run_cli("--format csv coorbit-norm --cwt " + dir + "/T", dir + "/n.csv") == kExitOk);
  CHECK(slurp(dir + "/n.csv").find("mixed_norm,") != std::string::npos);

  // a wavelet stored for one family is rejected by another
  CHECK(run_cli("frame-test --family diagonal --psi " + dir + "/psi") == kExitUsage);
}

TEST_CASE("cli failing verdict maps to its exit code") {
  CHECK(run_cli("calderon --family diagonal --n 64 --xi-max 4 --tests 1 --hgrid '{\"a_min\":1,\"a_max\":1.5,\"n_a\":2}'") ==
        kExitAdmissibility);
  CHECK(run_cli("counterexample") == kExitOk);
  CHECK(run_cli("counterexample --sizes 128") == kExitCounterexample);
  CHECK(run_cli("counterexample --sizes 64") == kExitUsage);
}
