#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vdws {

enum class ForceMethod { hf, fd, both };

std::string to_string(ForceMethod m);
ForceMethod force_method_from_string(const std::string& s);

/// Truncation policy: either a fixed L or adaptive convergence.
struct LPolicy {
  bool fixed = false;
  int L = 8;            // fixed L when fixed == true, else L_start
  double rel_tol = 1e-6;
  int L_step = 8;
  int L_cap = 1024;
};

/// Sweep abscissa in z/R; either a generated (log-)spaced grid or an
/// explicit list.
struct SweepGrid {
  double zr_min = 7.0;
  double zr_max = 100.0;
  int points = 25;
  bool log_spaced = true;
  bool use_list = false;
  std::vector<double> explicit_list;  // used when use_list is set

  std::vector<double> values() const;
};

/// Full run configuration; round-trips losslessly through the flat
/// key=value text format.
struct RunConfig {
  double omega_p_eV = 15.80;
  double inv_tau_wp = 0.0;
  bool substrate_perfect_conductor = false;
  double eps_substrate = 0.0;  // required input when not perfect conductor
  double R_nm = 50.0;
  SweepGrid sweep;
  LPolicy L_policy;
  std::vector<std::string> truncations = {"full"};  // subset of {1, 2, full}
  ForceMethod force_method = ForceMethod::hf;
  bool baselines = false;
  std::string output_csv = "sweep.csv";
  int workers = 0;  // 0 = library default

  double contrast() const;  // f_c of the configured substrate
  void validate() const;    // throws std::invalid_argument on bad config
};

RunConfig parse_config_file(const std::string& path);
void apply_config_line(RunConfig& config, const std::string& key,
                       const std::string& value);
std::string config_to_text(const RunConfig& config);

/// One sweep row. Baseline fields are populated only when enabled.
struct CurveSample {
  double z_over_R = 0.0;
  double z_nm = 0.0;
  std::string truncation;  // "1", "2" or "full"
  int L_used = 0;
  double energy_hbar_wp = 0.0;
  double energy_eV = 0.0;
  double force_eV_per_nm = 0.0;
  std::string force_method;
  double slope_local = 0.0;  // NaN when undefined
  std::string status = "ok";
  double pt_perfect_conductor_force = 0.0;
  double pt_nonretarded_force = 0.0;
};

struct SweepResult {
  std::vector<CurveSample> rows;
  int exit_code = 0;  // 0 ok, 1 any per-sample failure
  double wall_seconds = 0.0;
};

/// Run the configured sweep. Rows are streamed to csv_out (header first,
/// each row flushed once its local slope is final) so an interrupted run
/// preserves completed rows. Deterministic for a given config at any
/// worker count.
SweepResult run_sweep(const RunConfig& config, std::ostream& csv_out);

std::string csv_header(const RunConfig& config);
std::string csv_row(const CurveSample& sample, const RunConfig& config);
std::vector<CurveSample> read_csv(std::istream& in);

/// Companion artifacts: gnuplot script and run manifest (config echo,
/// version, timings).
void write_plot_script(const RunConfig& config, std::ostream& os);
void write_manifest(const RunConfig& config, const SweepResult& result,
                    std::ostream& os);

}  // namespace vdws
