#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptdx/errors.hpp"
#include "run_config.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using ptdx::cli::parse_complex;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(PTDX_CLI_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ptdx_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("complex literal parsing") {
  CHECK(parse_complex("0.75") == std::complex<double>{0.75, 0.0});
  CHECK(parse_complex("-2") == std::complex<double>{-2.0, 0.0});
  CHECK(parse_complex("0.75+0.5i") == std::complex<double>{0.75, 0.5});
  CHECK(parse_complex("0.75-0.5i") == std::complex<double>{0.75, -0.5});
  CHECK(parse_complex("0.75i") == std::complex<double>{0.0, 0.75});
  CHECK(parse_complex("-i") == std::complex<double>{0.0, -1.0});
  CHECK(parse_complex("1e-2+2e-3i") == std::complex<double>{0.01, 0.002});
  CHECK_THROWS_AS(parse_complex("banana"), ptdx::PreconditionError);
}

TEST_CASE("partner command writes the documented CSV and metadata") {
  const fs::path dir = fresh_dir("partner");
  REQUIRE(run_cli("partner --out-dir " + dir.string()) == 0);

  const auto rows = read_csv(dir / "partner.csv");
  REQUIRE(rows.size() == 1601);
  const auto& mid = rows[800];  // x = 0
  CHECK(mid[0] == 0.0);
  CHECK(mid[3] == doctest::Approx(-0.7325).epsilon(1e-12));  // Re v_plus
  CHECK(mid[4] == doctest::Approx(0.0));                     // Im v_plus

  const json meta = json::parse(slurp(dir / "partner.json"));
  CHECK(meta["beta"][0] == doctest::Approx(-4.5));
  CHECK(meta["seed_energy"][0] == doctest::Approx(4.5));
  CHECK(meta["params"]["model"] == "oscillator");
  CHECK(meta.contains("timings"));
  CHECK(double(meta["deviations"]["closed_form_sup"]) < 1e-8);
}

TEST_CASE("ginocchio partner metadata carries beta = 0.0625") {
  const fs::path dir = fresh_dir("gpartner");
  // modest grid keeps this test quick; beta does not depend on it
  REQUIRE(run_cli("partner --model ginocchio --half-width 20 --n-points 1001 "
                  "--out-dir " +
                  dir.string()) == 0);
  const json meta = json::parse(slurp(dir / "partner.json"));
  CHECK(meta["beta"][0] == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(meta["deviations"].contains("printed_closed_form_sup"));

  CHECK(run_cli("partner --model ginocchio --m 7 --out-dir " + dir.string()) ==
        2);
}

TEST_CASE("verify passes by default and fails when the skip set is emptied") {
  const fs::path dir = fresh_dir("verify");
  REQUIRE(run_cli("verify --out-dir " + dir.string()) == 0);
  const json rep = json::parse(slurp(dir / "verify.json"));
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["matches"]["verdict"] == true);

  REQUIRE(run_cli("verify --empty-skip --out-dir " + dir.string()) == 1);
  const json rep2 = json::parse(slurp(dir / "verify.json"));
  CHECK(rep2["verdict"] == "fail");
  REQUIRE(rep2["matches"]["missing_in_B"].size() == 1);
  CHECK(double(rep2["matches"]["missing_in_B"][0][0]) ==
        doctest::Approx(4.5).epsilon(1e-3));
}

TEST_CASE("imaginary alpha routes to a report") {
  const fs::path dir = fresh_dir("imag");
  REQUIRE(run_cli("verify --alpha 0.75i --out-dir " + dir.string()) == 0);
  const json rep = json::parse(slurp(dir / "verify.json"));
  CHECK(rep["verdict"] == "report-only");
  CHECK(double(rep["spectra"]["v_minus"]["max_imag"]) > 1.0);
}

TEST_CASE("figure output") {
  const fs::path dir = fresh_dir("figure");
  REQUIRE(run_cli("figure fig1 --out-dir " + dir.string()) == 0);
  REQUIRE(run_cli("figure fig2 --out-dir " + dir.string()) == 0);

  const auto fig1 = read_csv(dir / "fig1.csv");
  REQUIRE(fig1.size() == 1001);
  CHECK(fig1[500][0] == 0.0);
  CHECK(fig1[500][1] == doctest::Approx(-0.7325).epsilon(1e-12));
  CHECK(fig1[500][2] == 0.0);

  // PT consistency of the ground-state figure: phi(-x) = conj(phi(x))
  const auto fig2 = read_csv(dir / "fig2.csv");
  REQUIRE(fig2.size() == 1001);
  for (size_t k = 0; k < fig2.size(); ++k) {
    const auto& a = fig2[k];
    const auto& b = fig2[fig2.size() - 1 - k];
    CHECK(std::abs(b[1] - a[1]) < 1e-10);
    CHECK(std::abs(b[2] + a[2]) < 1e-10);
  }

  SUBCASE("byte-identical reruns") {
    const fs::path dir2 = fresh_dir("figure_rerun");
    REQUIRE(run_cli("figure fig1 --out-dir " + dir2.string()) == 0);
    CHECK(slurp(dir / "fig1.csv") == slurp(dir2 / "fig1.csv"));
  }

  SUBCASE("parameter-generic regeneration") {
    REQUIRE(run_cli("figure fig1 --alpha 0.6 --out-dir " + dir.string()) == 0);
  }

  CHECK(run_cli("figure fig1 --model ginocchio --out-dir " + dir.string()) ==
        2);
}

TEST_CASE("spectrum subcommand emits the partner spectrum on request") {
  const fs::path dir = fresh_dir("spectrum");
  REQUIRE(run_cli("spectrum --which partner --k 6 --out-dir " + dir.string()) ==
          0);
  const json rep = json::parse(slurp(dir / "spectrum.json"));
  const auto& eigs = rep["spectra"]["eigenvalues"];
  REQUIRE(eigs.size() == 6);
  // m = 1 level (4.5) is absent from the partner tower
  const double expected[6] = {0.5, 3.5, 7.5, 8.5, 11.5, 12.5};
  for (int j = 0; j < 6; ++j)
    CHECK(double(eigs[j][0]) == doctest::Approx(expected[j]).epsilon(1e-3));
  const auto rows = read_csv(dir / "spectrum.csv");
  CHECK(rows.size() == 6);
}

TEST_CASE("config file keys are honored and flags override them") {
  const fs::path dir = fresh_dir("config");
  std::ofstream conf(dir / "run.ini");
  conf << "model = oscillator\nalpha = 0.6\nq = -1\nm = 0\n";
  conf.close();

  REQUIRE(run_cli("partner --config " + (dir / "run.ini").string() +
                  " --out-dir " + dir.string()) == 0);
  json meta = json::parse(slurp(dir / "partner.json"));
  CHECK(meta["params"]["alpha"][0] == doctest::Approx(0.6));
  CHECK(meta["params"]["q"] == -1);
  // beta = 2 q alpha - 2(2m+1) = -1.2 - 2
  CHECK(meta["beta"][0] == doctest::Approx(-3.2).epsilon(1e-12));

  REQUIRE(run_cli("partner --config " + (dir / "run.ini").string() +
                  " --alpha 0.9 --out-dir " + dir.string()) == 0);
  meta = json::parse(slurp(dir / "partner.json"));
  CHECK(meta["params"]["alpha"][0] == doctest::Approx(0.9));
}

TEST_CASE("config and precondition failures exit with code 2") {
  const fs::path dir = fresh_dir("errors");
  CHECK(run_cli("partner --n-points 1600 --out-dir " + dir.string()) == 2);
  CHECK(run_cli("partner --model nosuch --out-dir " + dir.string()) == 2);
  CHECK(run_cli("partner --alpha nonsense --out-dir " + dir.string()) == 2);
  CHECK(run_cli("--out-dir " + dir.string()) == 2);  // missing subcommand
}
