// Command line front end: spectrum computation, closed-form bound tables,
// and the spectrum-vs-bound / Fourier-mass verification runs driven by a
// JSON config. Exit codes: 0 all checks pass, 1 a check failed, 2 bad
// configuration or arguments.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freeplate/bounds.hpp"
#include "freeplate/domain.hpp"
#include "freeplate/exact_spectra.hpp"
#include "freeplate/fourier_verify.hpp"
#include "freeplate/ritz.hpp"
#include "freeplate/serialize.hpp"

namespace {

using nlohmann::json;
using namespace freeplate;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
  DomainSpec domain = DomainSpec::rectangle(1.0, 1.0);
  Operator op = Operator::Plate;
  double tau = 0.0;
  int count = 8;
  int m_max = 5;
  double target_rel_tol = 1e-8;
  std::vector<std::string> checks;
  std::optional<std::string> spectrum_out;
  std::optional<std::string> report_out;
  std::optional<std::string> fourier_out;
  double r_lo_factor = 1.05;
  double r_hi_factor = 6.0;
  int r_count = 12;
};

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

Operator parse_operator(const std::string& name) {
  if (name == "membrane") return Operator::Membrane;
  if (name == "plate") return Operator::Plate;
  throw ConfigError("unknown operator: " + name);
}

DomainSpec parse_domain(const json& j) {
  try {
    return DomainSpec::from_json(j.dump());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  if (!j.contains("domain")) throw ConfigError("config needs \"domain\"");
  cfg.domain = parse_domain(j.at("domain"));
  if (j.contains("operator")) cfg.op = parse_operator(j.at("operator").get<std::string>());
  if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
  if (j.contains("count")) cfg.count = j.at("count").get<int>();
  if (j.contains("m_max")) cfg.m_max = j.at("m_max").get<int>();
  if (j.contains("target_rel_tol")) cfg.target_rel_tol = j.at("target_rel_tol").get<double>();
  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) {
      const std::string name = c.get<std::string>();
      if (name != "bounds" && name != "oracle" && name != "fourier")
        throw ConfigError("unknown check: " + name);
      cfg.checks.push_back(name);
    }
  }
  if (j.contains("spectrum_out")) cfg.spectrum_out = j.at("spectrum_out").get<std::string>();
  if (j.contains("report_out")) cfg.report_out = j.at("report_out").get<std::string>();
  if (j.contains("fourier_out")) cfg.fourier_out = j.at("fourier_out").get<std::string>();
  if (j.contains("fourier")) {
    const auto& f = j.at("fourier");
    if (f.contains("r_lo_factor")) cfg.r_lo_factor = f.at("r_lo_factor").get<double>();
    if (f.contains("r_hi_factor")) cfg.r_hi_factor = f.at("r_hi_factor").get<double>();
    if (f.contains("r_count")) cfg.r_count = f.at("r_count").get<int>();
  }

  if (cfg.tau < 0.0) throw ConfigError("tau must be >= 0");
  if (cfg.count < 1) throw ConfigError("count must be >= 1");
  if (cfg.m_max < 0) throw ConfigError("m_max must be >= 0");
  if (!(cfg.target_rel_tol > 0.0) || cfg.target_rel_tol > 0.1)
    throw ConfigError("target_rel_tol must be in (0, 0.1]");
  auto has_check = [&cfg](const char* name) {
    return std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
  };
  const bool has_bounds = has_check("bounds");
  const bool has_fourier = has_check("fourier");
  if ((has_bounds || has_fourier) && cfg.count < cfg.m_max + 1)
    throw ConfigError("count must be at least m_max + 1 for bounds/fourier checks");
  if (has_bounds && cfg.m_max < 1) throw ConfigError("bounds check needs m_max >= 1");
  if (has_fourier && cfg.op != Operator::Plate)
    throw ConfigError("fourier check needs the plate operator");
  if (cfg.r_count < 1 || !(cfg.r_lo_factor > 1.0) || !(cfg.r_hi_factor > cfg.r_lo_factor))
    throw ConfigError("fourier grid factors must satisfy 1 < r_lo_factor < r_hi_factor");
  return cfg;
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
  if (!path || *path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + *path);
  out << content;
  if (!out) throw ConfigError("write failed: " + *path);
}

std::optional<Spectrum> oracle_for(const ExperimentConfig& cfg) {
  const DomainKind kind = cfg.domain.kind();
  if (cfg.op == Operator::Membrane && kind == DomainKind::Rectangle)
    return rectangle_neumann(cfg.domain.extents()[0], cfg.domain.extents()[1], cfg.count);
  if (cfg.op == Operator::Membrane && kind == DomainKind::Disk && cfg.count <= 30)
    return disk_neumann(cfg.domain.extents()[0], cfg.count);
  if (cfg.op == Operator::Plate && kind == DomainKind::Interval && cfg.tau == 0.0 &&
      cfg.count <= 12)
    return free_beam(cfg.domain.extents()[0], cfg.count);
  return std::nullopt;
}

int run_compute(const ExperimentConfig& cfg) {
  const Spectrum s =
      compute_spectrum(cfg.domain, cfg.op, cfg.tau, cfg.count, cfg.target_rel_tol);
  write_output(cfg.spectrum_out, s.to_json() + "\n");
  return 0;
}

int run_bounds(int n, double volume, double tau, int m_max, bool long_format,
               const std::optional<std::string>& out) {
  const auto rows = bounds_table(n, volume, tau, m_max);
  std::string csv;
  if (long_format) {
    csv = "m,bound_kind,value\n";
    for (const auto& row : rows) {
      csv += csv_line({std::to_string(row.m), "kroger_sum", format_sci(row.kroger_sum)});
      csv += csv_line({std::to_string(row.m), "kroger_eig", format_sci(row.kroger_eig)});
      csv += csv_line({std::to_string(row.m), "plate_sum", format_sci(row.plate_sum)});
      csv += csv_line({std::to_string(row.m), "plate_eig", format_sci(row.plate_eig)});
    }
  } else {
    csv = "m,kroger_sum,kroger_eig,plate_sum,plate_eig\n";
    for (const auto& row : rows) {
      csv += csv_line({std::to_string(row.m), format_sci(row.kroger_sum),
                       format_sci(row.kroger_eig), format_sci(row.plate_sum),
                       format_sci(row.plate_eig)});
    }
  }
  write_output(out, csv);
  return 0;
}

int run_verify(const ExperimentConfig& cfg) {
  const bool want_bounds =
      std::find(cfg.checks.begin(), cfg.checks.end(), "bounds") != cfg.checks.end();
  const bool want_oracle =
      std::find(cfg.checks.begin(), cfg.checks.end(), "oracle") != cfg.checks.end();
  const bool want_fourier =
      std::find(cfg.checks.begin(), cfg.checks.end(), "fourier") != cfg.checks.end();
  if (!want_bounds && !want_oracle && !want_fourier)
    throw ConfigError("verify needs at least one check");

  std::optional<Spectrum> oracle;
  if (want_oracle) {
    oracle = oracle_for(cfg);
    if (!oracle) throw ConfigError("no oracle available for this configuration");
  }

  const RitzSolution sol =
      compute_spectrum_detailed(cfg.domain, cfg.op, cfg.tau, cfg.count, cfg.target_rel_tol);
  const Spectrum& s = sol.spectrum;
  write_output(cfg.spectrum_out, s.to_json() + "\n");

  bool all_pass = true;

  if (want_bounds) {
    const int n = cfg.domain.dimension();
    const double vol = cfg.domain.volume();
    std::string csv = "m,sum_computed,sum_bound,eig_computed,eig_bound,slack_sum,slack_eig,status\n";
    bool pass = true;
    double running_sum = 0.0;
    for (int m = 1; m <= cfg.m_max; ++m) {
      running_sum += s.values[m - 1];
      const BoundInput in(n, vol, cfg.tau, m);
      const double sum_bound =
          (cfg.op == Operator::Membrane) ? kroger_sum_bound(in) : plate_sum_bound(in);
      const double eig_bound =
          (cfg.op == Operator::Membrane) ? kroger_eig_bound(in) : plate_eig_bound(in);
      const double eig_computed = s.values[m];
      const double slack_sum = sum_bound - running_sum;
      const double slack_eig = eig_bound - eig_computed;
      const bool ok = slack_sum >= -1e-6 * std::max(1.0, sum_bound) &&
                      slack_eig >= -1e-6 * std::max(1.0, eig_bound);
      if (!ok) {
        pass = false;
        std::cerr << "bounds check failed at m = " << m << "\n";
      }
      csv += csv_line({std::to_string(m), format_sci(running_sum), format_sci(sum_bound),
                       format_sci(eig_computed), format_sci(eig_bound), format_sci(slack_sum),
                       format_sci(slack_eig), ok ? "ok" : "fail"});
    }
    write_output(cfg.report_out, csv);
    std::cerr << "bounds: " << (pass ? "pass" : "FAIL") << "\n";
    all_pass = all_pass && pass;
  }

  if (want_oracle) {
    double max_rel = 0.0;
    int worst = -1;
    for (int j = 0; j < cfg.count; ++j) {
      const double ref = oracle->values[j];
      const double rel = std::abs(s.values[j] - ref) / std::max(1.0, std::abs(ref));
      if (rel > max_rel) {
        max_rel = rel;
        worst = j;
      }
    }
    const bool pass = max_rel <= 1e-6;
    if (!pass) std::cerr << "oracle check failed at index " << worst << "\n";
    std::cerr << "oracle: " << (pass ? "pass" : "FAIL") << " (max rel dev " << max_rel << ")\n";
    all_pass = all_pass && pass;
  }

  if (want_fourier) {
    const int n = cfg.domain.dimension();
    const double vol = cfg.domain.volume();
    const double scale1 = threshold_radius(BoundInput(n, vol, cfg.tau, 1));
    double r_max_needed = cfg.r_hi_factor * scale1;
    for (int m = 1; m <= cfg.m_max; ++m)
      r_max_needed = std::max(
          r_max_needed, cfg.r_hi_factor * threshold_radius(BoundInput(n, vol, cfg.tau, m)));
    const FourierField field(sol, cfg.m_max + 1, r_max_needed);
    std::string csv = "m,r,N,D,ratio,lambda_next,margin\n";
    bool pass = true;
    for (int m = 0; m <= cfg.m_max; ++m) {
      const double r0 = threshold_radius(BoundInput(n, vol, cfg.tau, m));
      const double lo = (m == 0) ? 0.5 * scale1 : cfg.r_lo_factor * r0;
      const double hi = (m == 0) ? cfg.r_hi_factor * scale1 : cfg.r_hi_factor * r0;
      std::vector<double> grid(cfg.r_count);
      for (int i = 0; i < cfg.r_count; ++i)
        grid[i] = (cfg.r_count == 1) ? lo : lo + (hi - lo) * i / (cfg.r_count - 1);
      const auto report = field.master_inequality_check(m, grid);
      // Strip the header the shared writer adds; one header for the file.
      const std::string block = report_to_csv(report);
      csv += block.substr(block.find('\n') + 1);
      if (!report.pass) {
        pass = false;
        std::cerr << "fourier check failed at m = " << m << " (min margin " << report.min_margin
                  << ")\n";
      }
    }
    write_output(cfg.fourier_out, csv);
    std::cerr << "fourier: " << (pass ? "pass" : "FAIL") << "\n";
    all_pass = all_pass && pass;
  }

  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free membrane/plate spectra, eigenvalue bounds, and verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;

  auto* compute = app.add_subcommand("compute", "Compute a spectrum and write it as JSON");
  std::string c_kind = "rectangle";
  std::vector<double> c_extents{1.0, 1.0};
  std::string c_operator = "membrane";
  double c_tau = 0.0;
  int c_count = 8;
  double c_tol = 1e-8;
  auto* c_config = compute->add_option("--config", config_path, "JSON config file");
  compute->add_option("--kind", c_kind, "interval | rectangle | disk");
  compute->add_option("--extents", c_extents, "domain extents (1 or 2 numbers)");
  compute->add_option("--operator", c_operator, "membrane | plate");
  compute->add_option("--tau", c_tau, "tension parameter (plate)");
  compute->add_option("--count", c_count, "number of eigenvalues");
  compute->add_option("--tol", c_tol, "relative convergence target");
  compute->add_option("--out", out_path, "output path ('-' for stdout)");

  auto* bounds = app.add_subcommand("bounds", "Tabulate closed-form eigenvalue bounds as CSV");
  int b_n = 2;
  double b_volume = 1.0;
  double b_tau = 0.0;
  int b_mmax = 5;
  bool b_long = false;
  bounds->add_option("--n", b_n, "space dimension");
  bounds->add_option("--volume", b_volume, "domain volume");
  bounds->add_option("--tau", b_tau, "tension parameter");
  bounds->add_option("--m-max", b_mmax, "largest index");
  bounds->add_flag("--long", b_long, "one row per bound instead of wide rows");
  bounds->add_option("--out", out_path, "output path ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "Run the checks listed in the config");
  verify->add_option("--config", config_path, "JSON config file")->required();

  auto* fcheck = app.add_subcommand("fourier-check", "Run only the Fourier mass check");
  fcheck->add_option("--config", config_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) {
      ExperimentConfig cfg;
      if (*c_config) {
        cfg = parse_config(parse_json_file(config_path));
      } else {
        json dj;
        dj["kind"] = c_kind;
        dj["extents"] = c_extents;
        cfg.domain = parse_domain(dj);
        cfg.op = parse_operator(c_operator);
        cfg.tau = c_tau;
        cfg.count = c_count;
        cfg.target_rel_tol = c_tol;
      }
      if (!out_path.empty()) cfg.spectrum_out = out_path;
      if (cfg.count < 1) throw ConfigError("count must be >= 1");
      if (cfg.tau < 0.0) throw ConfigError("tau must be >= 0");
      if (!(cfg.target_rel_tol > 0.0) || cfg.target_rel_tol > 0.1)
        throw ConfigError("tol must be in (0, 0.1]");
      return run_compute(cfg);
    }
    if (bounds->parsed()) {
      if (b_n < 1) throw ConfigError("n must be >= 1");
      if (!(b_volume > 0.0)) throw ConfigError("volume must be > 0");
      if (b_tau < 0.0) throw ConfigError("tau must be >= 0");
      if (b_mmax < 1) throw ConfigError("m-max must be >= 1");
      std::optional<std::string> out;
      if (!out_path.empty()) out = out_path;
      return run_bounds(b_n, b_volume, b_tau, b_mmax, b_long, out);
    }
    ExperimentConfig cfg = parse_config(parse_json_file(config_path));
    if (fcheck->parsed()) {
      cfg.checks = {"fourier"};
      if (cfg.op != Operator::Plate) throw ConfigError("fourier check needs the plate operator");
      if (cfg.count < cfg.m_max + 1)
        throw ConfigError("count must be at least m_max + 1 for bounds/fourier checks");
    }
    return run_verify(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NotConvergedError& e) {
    std::cerr << "computation did not converge: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
