#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vdws/baselines.hpp"
#include "vdws/coupling.hpp"
#include "vdws/eigen.hpp"
#include "vdws/force.hpp"
#include "vdws/spectrum.hpp"
#include "vdws/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

struct CliOverrides {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> pairs;
};

// registers one kebab-case flag that maps straight onto a config key
void add_override(CLI::App* cmd, CliOverrides& ov, const std::string& key,
                  const std::string& desc) {
  cmd->add_option_function<std::string>(
      "--" + key,
      [&ov, key](const std::string& v) { ov.pairs.emplace_back(key, v); },
      desc);
}

void add_common_options(CLI::App* cmd, CliOverrides& ov) {
  cmd->add_option("--config", ov.config_path,
                  "flat key=value config file; flags win over file entries");
  add_override(cmd, ov, "omega-p-ev", "sphere plasma energy hbar*omega_p [eV]");
  add_override(cmd, ov, "inv-tau-wp", "Drude damping (tau*omega_p)^-1");
  add_override(cmd, ov, "eps-substrate",
               "substrate epsilon (>= 1) or 'perfect_conductor'");
  add_override(cmd, ov, "radius-nm", "sphere radius R [nm]");
  add_override(cmd, ov, "zr-min", "sweep minimum z/R");
  add_override(cmd, ov, "zr-max", "sweep maximum z/R");
  add_override(cmd, ov, "points", "number of sweep points");
  add_override(cmd, ov, "log-spaced", "log-spaced sweep grid (true/false)");
  add_override(cmd, ov, "zr-list", "explicit comma-separated z/R list");
  add_override(cmd, ov, "l-fixed", "fixed multipole truncation L");
  add_override(cmd, ov, "l-start", "adaptive truncation start L");
  add_override(cmd, ov, "l-step", "adaptive truncation initial step");
  add_override(cmd, ov, "l-cap", "adaptive truncation cap");
  add_override(cmd, ov, "rel-tol", "adaptive truncation relative tolerance");
  add_override(cmd, ov, "truncations", "curves to report: subset of 1,2,full");
  add_override(cmd, ov, "force-method", "hf | fd | both");
  add_override(cmd, ov, "baselines", "append baseline columns (true/false)");
  add_override(cmd, ov, "output-csv", "output CSV path");
  add_override(cmd, ov, "workers", "worker thread count (0 = default)");
}

vdws::RunConfig build_config(const CliOverrides& ov) {
  vdws::RunConfig config;
  if (!ov.config_path.empty()) {
    config = vdws::parse_config_file(ov.config_path);
  }
  for (const auto& [key, value] : ov.pairs) {
    vdws::apply_config_line(config, key, value);
  }
  // env override for worker count only
  if (const char* env = std::getenv("VDWSPHERE_WORKERS")) {
    config.workers = std::atoi(env);
  }
  return config;
}

std::string sibling_path(const std::string& csv, const std::string& suffix) {
  const auto dot = csv.rfind('.');
  const std::string stem = dot == std::string::npos ? csv : csv.substr(0, dot);
  return stem + suffix;
}

int cmd_sweep(const CliOverrides& ov) {
  vdws::RunConfig config;
  try {
    config = build_config(ov);
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  }
  std::ofstream csv(config.output_csv);
  if (!csv) {
    std::cerr << "cannot open output: " << config.output_csv << "\n";
    return 2;
  }
  const vdws::SweepResult result = vdws::run_sweep(config, csv);
  {
    std::ofstream plot(sibling_path(config.output_csv, ".gp"));
    vdws::write_plot_script(config, plot);
    std::ofstream manifest(sibling_path(config.output_csv, ".manifest"));
    vdws::write_manifest(config, result, manifest);
  }
  std::cerr << result.rows.size() << " rows -> " << config.output_csv << " ("
            << result.wall_seconds << " s)\n";
  return result.exit_code;
}

int cmd_point(const CliOverrides& ov, double zr, const std::string& truncation) {
  vdws::RunConfig config;
  try {
    config = build_config(ov);
    config.sweep.use_list = true;
    config.sweep.explicit_list = {zr};
    config.truncations = {truncation};
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  }
  std::ostringstream csv;
  const vdws::SweepResult result = vdws::run_sweep(config, csv);
  std::cout << csv.str();
  return result.exit_code;
}

int cmd_report(const std::string& csv_path, const CliOverrides& ov) {
  vdws::RunConfig config;
  try {
    config = build_config(ov);
    config.output_csv = csv_path;
  } catch (const std::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  }
  std::ifstream in(csv_path);
  if (!in) {
    std::cerr << "cannot open " << csv_path << "\n";
    return 2;
  }
  std::vector<vdws::CurveSample> rows;
  try {
    rows = vdws::read_csv(in);
  } catch (const std::exception& e) {
    std::cerr << "cannot parse " << csv_path << ": " << e.what() << "\n";
    return 2;
  }
  vdws::SweepResult result;
  result.rows = rows;
  for (const auto& r : rows) {
    if (r.status != "ok") result.exit_code = 1;
  }
  std::ofstream plot(sibling_path(csv_path, ".gp"));
  vdws::write_plot_script(config, plot);
  std::ofstream manifest(sibling_path(csv_path, ".manifest"));
  vdws::write_manifest(config, result, manifest);
  std::cerr << "report regenerated for " << rows.size() << " rows\n";
  return result.exit_code;
}

int cmd_bench(const std::vector<int>& sizes, int repeats) {
  using clock = std::chrono::steady_clock;
  const vdws::SpherePlateGeometry geom = vdws::SpherePlateGeometry::from_ratio(0.5);
  std::cout << "size,serial_ms,parallel_ms,gflops_serial\n";
  for (int n : sizes) {
    const vdws::CouplingBlock block = vdws::build_block(0, n, geom, -1.0);
    vdws::EigenWorkspace ws;
    double best_serial = 1e300;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = clock::now();
      (void)vdws::eigen_symmetric(block.entries, block.size(), false, &ws);
      const double ms =
          std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      best_serial = std::min(best_serial, ms);
    }
    // full spectrum at truncation n exercises the OpenMP block loop
    double best_parallel = 1e300;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = clock::now();
      (void)vdws::solve_spectrum(geom, -1.0, n);
      const double ms =
          std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      best_parallel = std::min(best_parallel, ms);
    }
    const double flops = 4.0 / 3.0 * n * double(n) * n;
    std::cout << n << "," << best_serial << "," << best_parallel << ","
              << flops / (best_serial * 1e6) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-retarded sphere-plate dispersive force calculator"};
  app.require_subcommand(1);

  CliOverrides sweep_ov;
  CLI::App* sweep = app.add_subcommand("sweep", "run a z/R sweep to CSV");
  add_common_options(sweep, sweep_ov);

  CliOverrides point_ov;
  double point_zr = 1.0;
  std::string point_trunc = "full";
  CLI::App* point = app.add_subcommand("point", "evaluate a single z/R");
  add_common_options(point, point_ov);
  point->add_option("--zr", point_zr, "z/R ratio")->required();
  point->add_option("--truncation", point_trunc, "1, 2 or full");

  std::vector<int> bench_sizes{64, 128, 256};
  int bench_repeats = 3;
  CLI::App* bench = app.add_subcommand("bench", "eigensolver micro-benchmark");
  bench->add_option("--sizes", bench_sizes, "block sizes to time")
      ->delimiter(',');
  bench->add_option("--repeats", bench_repeats, "repetitions per size");

  CliOverrides report_ov;
  std::string report_csv;
  CLI::App* report =
      app.add_subcommand("report", "regenerate plot script and manifest");
  add_common_options(report, report_ov);
  report->add_option("--csv", report_csv, "existing sweep CSV")->required();

  CLI11_PARSE(app, argc, argv);

  if (sweep->parsed()) return cmd_sweep(sweep_ov);
  if (point->parsed()) return cmd_point(point_ov, point_zr, point_trunc);
  if (bench->parsed()) return cmd_bench(bench_sizes, bench_repeats);
  if (report->parsed()) return cmd_report(report_csv, report_ov);
  return 0;
}
