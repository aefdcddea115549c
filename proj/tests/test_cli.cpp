// Exercises the installed command line binary end to end: happy paths with
// deterministic output, config validation failures (exit 2), and a
// non-converging run (exit 1). The binary path comes from the build system.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const char* kCliPath = FREEPLATE_CLI_PATH;

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("freeplate_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
  const fs::path err_path = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string(kCliPath) + " " + args + " > " + out_path.string() +
                          " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("compute writes a spectrum as json") {
  const fs::path out = scratch_dir() / "square_membrane.json";
  const RunResult r = run_cli(
      "compute --kind rectangle --extents 1 1 --operator membrane --count 5 --tol 1e-7 --out " +
      out.string());
  REQUIRE(r.exit_code == 0);

  const json j = json::parse(slurp(out));
  CHECK(j.at("operator") == "membrane");
  CHECK(j.at("method") == "ritz");
  CHECK(j.at("converged") == true);
  CHECK(j.at("domain").at("kind") == "rectangle");
  REQUIRE(j.at("values").size() == 5);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(std::abs(j.at("values")[0].get<double>()) < 1e-6);
  CHECK(std::abs(j.at("values")[1].get<double>() - pi2) < 1e-5 * pi2);
  CHECK(std::abs(j.at("values")[4].get<double>() - 4.0 * pi2) < 1e-5 * pi2);
}

TEST_CASE("compute output is byte identical across runs") {
  const std::string flags = "compute --kind disk --extents 1 --operator membrane --count 3 "
                            "--tol 1e-5 --out ";
  const fs::path a = scratch_dir() / "disk_a.json";
  const fs::path b = scratch_dir() / "disk_b.json";
  REQUIRE(run_cli(flags + a.string()).exit_code == 0);
  REQUIRE(run_cli(flags + b.string()).exit_code == 0);
  const std::string sa = slurp(a);
  CHECK(!sa.empty());
  CHECK(sa == slurp(b));
}

TEST_CASE("compute prints to stdout when no output path is given") {
  const RunResult r =
      run_cli("compute --kind interval --extents 1 --operator plate --tau 0 --count 3");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("operator") == "plate");
  CHECK(j.at("values").size() == 3);
}

TEST_CASE("compute accepts a config file") {
  const fs::path out = scratch_dir() / "from_config.json";
  const fs::path cfg = write_config("compute.json", R"({
    "domain": {"kind": "interval", "extents": [1.0]},
    "operator": "plate",
    "tau": 0.0,
    "count": 3,
    "target_rel_tol": 1e-7,
    "spectrum_out": ")" + out.string() + R"("
  })");
  const RunResult r = run_cli("compute --config " + cfg.string());
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("values").size() == 3);
}

TEST_CASE("bounds emits the wide csv table") {
  const fs::path out = scratch_dir() / "bounds.csv";
  const RunResult r =
      run_cli("bounds --n 2 --volume 3.141592653589793 --tau 0 --m-max 3 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("m,kroger_sum,kroger_eig,plate_sum,plate_eig\n", 0) == 0);
  CHECK(count_lines(csv) == 4);
  // For volume pi in the plane the first membrane sum bound is exactly 2.
  CHECK(csv.find("\n1,2.00000000000e+00,") != std::string::npos);
}

TEST_CASE("bounds long format emits one row per bound") {
  const RunResult r = run_cli("bounds --n 2 --volume 1 --m-max 2 --long");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("m,bound_kind,value\n", 0) == 0);
  CHECK(count_lines(r.out) == 9);
  CHECK(r.out.find("1,kroger_sum,") != std::string::npos);
  CHECK(r.out.find("2,plate_eig,") != std::string::npos);
}

TEST_CASE("verify runs the oracle check on a rectangle membrane") {
  const fs::path cfg = write_config("oracle.json", R"({
    "domain": {"kind": "rectangle", "extents": [1.0, 1.0]},
    "operator": "membrane",
    "count": 5,
    "target_rel_tol": 1e-7,
    "checks": ["oracle"],
    "spectrum_out": ")" + (scratch_dir() / "oracle_spectrum.json").string() + R"("
  })");
  const RunResult r = run_cli("verify --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("oracle: pass") != std::string::npos);
}

TEST_CASE("verify runs the bounds check and writes the report") {
  const fs::path report = scratch_dir() / "bounds_report.csv";
  const fs::path cfg = write_config("bounds_check.json", R"({
    "domain": {"kind": "rectangle", "extents": [1.0, 1.0]},
    "operator": "membrane",
    "count": 7,
    "target_rel_tol": 1e-7,
    "checks": ["bounds"],
    "m_max": 5,
    "spectrum_out": ")" + (scratch_dir() / "bounds_spectrum.json").string() + R"(",
    "report_out": ")" + report.string() + R"("
  })");
  const RunResult r = run_cli("verify --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("bounds: pass") != std::string::npos);
  const std::string csv = slurp(report);
  CHECK(csv.rfind("m,sum_computed,sum_bound,eig_computed,eig_bound,slack_sum,slack_eig,status\n",
                  0) == 0);
  CHECK(count_lines(csv) == 6);
  CHECK(csv.find("fail") == std::string::npos);
}

TEST_CASE("fourier-check subcommand verifies the mass inequality grid") {
  const fs::path fout = scratch_dir() / "fourier.csv";
  const fs::path cfg = write_config("fourier.json", R"({
    "domain": {"kind": "interval", "extents": [1.0]},
    "operator": "plate",
    "tau": 0.0,
    "count": 4,
    "m_max": 2,
    "target_rel_tol": 1e-7,
    "fourier": {"r_count": 3, "r_hi_factor": 4.0},
    "spectrum_out": ")" + (scratch_dir() / "fourier_spectrum.json").string() + R"(",
    "fourier_out": ")" + fout.string() + R"("
  })");
  const RunResult r = run_cli("fourier-check --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("fourier: pass") != std::string::npos);
  const std::string csv = slurp(fout);
  CHECK(csv.rfind("m,r,N,D,ratio,lambda_next,margin\n", 0) == 0);
  CHECK(count_lines(csv) == 10);
  CHECK(csv.find("\n0,") != std::string::npos);
  CHECK(csv.find("\n2,") != std::string::npos);
}

TEST_CASE("config validation failures exit with code 2") {
  SUBCASE("unknown domain kind") {
    const fs::path cfg = write_config("bad_kind.json",
                                      R"({"domain": {"kind": "triangle", "extents": [1.0]}})");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }
  SUBCASE("missing config file") {
    CHECK(run_cli("verify --config " + (scratch_dir() / "nope.json").string()).exit_code == 2);
  }
  SUBCASE("malformed json") {
    const fs::path cfg = write_config("broken.json", "{\"domain\": ");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }
  SUBCASE("fourier check rejects the membrane operator") {
    const fs::path cfg = write_config("fourier_membrane.json", R"({
      "domain": {"kind": "rectangle", "extents": [1.0, 1.0]},
      "operator": "membrane",
      "count": 4,
      "m_max": 1,
      "checks": ["fourier"]
    })");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }
  SUBCASE("count below m_max + 1") {
    const fs::path cfg = write_config("short_count.json", R"({
      "domain": {"kind": "rectangle", "extents": [1.0, 1.0]},
      "operator": "membrane",
      "count": 3,
      "m_max": 5,
      "checks": ["bounds"]
    })");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }
  SUBCASE("negative tension") {
    const fs::path cfg = write_config("neg_tau.json", R"({
      "domain": {"kind": "interval", "extents": [1.0]},
      "operator": "plate",
      "tau": -1.0,
      "count": 3,
      "checks": ["oracle"]
    })");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }
  SUBCASE("unknown check name") {
    const fs::path cfg = write_config("bad_check.json", R"({
      "domain": {"kind": "rectangle", "extents": [1.0, 1.0]},
      "operator": "membrane",
      "count": 3,
      "checks": ["spectra"]
    })");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }
  SUBCASE("verify without any checks") {
    const fs::path cfg = write_config("no_checks.json", R"({
      "domain": {"kind": "rectangle", "extents": [1.0, 1.0]},
      "operator": "membrane",
      "count": 3
    })");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }
  SUBCASE("no oracle for this configuration") {
    const fs::path cfg = write_config("no_oracle.json", R"({
      "domain": {"kind": "rectangle", "extents": [1.0, 1.0]},
      "operator": "plate",
      "count": 3,
      "checks": ["oracle"]
    })");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }
  SUBCASE("bounds subcommand rejects m-max of zero") {
    CHECK(run_cli("bounds --n 2 --volume 1 --m-max 0").exit_code == 2);
  }
  SUBCASE("unknown flag") {
    CHECK(run_cli("compute --shape square").exit_code == 2);
  }
  SUBCASE("missing subcommand") {
    CHECK(run_cli("").exit_code == 2);
  }
}

TEST_CASE("a run that cannot converge at the degree cap exits with code 1") {
  // Twelve beam modes need to resolve oscillations past the largest basis
  // degree, so refinement deltas stay large and the solver gives up.
  const fs::path cfg = write_config("overreach.json", R"({
    "domain": {"kind": "interval", "extents": [1.0]},
    "operator": "plate",
    "tau": 0.0,
    "count": 12,
    "target_rel_tol": 1e-8,
    "checks": ["oracle"],
    "spectrum_out": ")" + (scratch_dir() / "overreach.json").string() + R"("
  })");
  const RunResult r = run_cli("verify --config " + cfg.string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("converge") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("compute --help").exit_code == 0);
}
