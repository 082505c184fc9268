#include "vdws/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vdws/baselines.hpp"
#include "vdws/force.hpp"
#include "vdws/spectrum.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vdws {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string to_string(ForceMethod m) {
  switch (m) {
    case ForceMethod::hf: return "hf";
    case ForceMethod::fd: return "fd";
    case ForceMethod::both: return "both";
  }
  return "hf";
}

ForceMethod force_method_from_string(const std::string& s) {
  if (s == "hf") return ForceMethod::hf;
  if (s == "fd") return ForceMethod::fd;
  if (s == "both") return ForceMethod::both;
  throw std::invalid_argument("unknown force method: " + s);
}

std::vector<double> SweepGrid::values() const {
  if (use_list) return explicit_list;
  if (points < 1) throw std::invalid_argument("sweep: points >= 1");
  if (points == 1) return {zr_min};
  std::vector<double> v(points);
  if (log_spaced) {
    const double lo = std::log(zr_min);
    const double hi = std::log(zr_max);
    for (int i = 0; i < points; ++i) {
      v[i] = std::exp(lo + (hi - lo) * i / (points - 1));
    }
  } else {
    for (int i = 0; i < points; ++i) {
      v[i] = zr_min + (zr_max - zr_min) * i / (points - 1);
    }
  }
  return v;
}

double RunConfig::contrast() const {
  if (substrate_perfect_conductor) return -1.0;
  return (1.0 - eps_substrate) / (1.0 + eps_substrate);
}

void RunConfig::validate() const {
  if (omega_p_eV <= 0.0) throw std::invalid_argument("config: omega-p-ev > 0");
  if (inv_tau_wp < 0.0) throw std::invalid_argument("config: inv-tau-wp >= 0");
  if (!substrate_perfect_conductor && !(eps_substrate >= 1.0)) {
    throw std::invalid_argument(
        "config: eps-substrate >= 1 (or perfect_conductor) is required");
  }
  if (R_nm <= 0.0) throw std::invalid_argument("config: radius-nm > 0");
  for (double zr : sweep.values()) {
    if (!(zr > 0.0)) throw std::invalid_argument("config: z/R values > 0");
  }
  if (L_policy.fixed) {
    if (L_policy.L < 1) throw std::invalid_argument("config: L >= 1");
  } else {
    if (!(L_policy.rel_tol > 0.0)) {
      throw std::invalid_argument("config: rel-tol > 0");
    }
    if (L_policy.L_cap < L_policy.L) {
      throw std::invalid_argument("config: L-cap >= L-start");
    }
  }
  if (truncations.empty()) throw std::invalid_argument("config: truncations");
  for (const auto& t : truncations) {
    if (t != "1" && t != "2" && t != "full") {
      throw std::invalid_argument("config: truncation must be 1, 2 or full");
    }
  }
  if (workers < 0) throw std::invalid_argument("config: workers >= 0");
}

void apply_config_line(RunConfig& c, const std::string& key,
                       const std::string& value) {
  if (key == "omega-p-ev") {
    c.omega_p_eV = std::stod(value);
  } else if (key == "inv-tau-wp") {
    c.inv_tau_wp = std::stod(value);
  } else if (key == "eps-substrate") {
    if (value == "perfect_conductor") {
      c.substrate_perfect_conductor = true;
      c.eps_substrate = 0.0;
    } else {
      c.substrate_perfect_conductor = false;
      c.eps_substrate = std::stod(value);
    }
  } else if (key == "radius-nm") {
    c.R_nm = std::stod(value);
  } else if (key == "zr-min") {
    c.sweep.zr_min = std::stod(value);
  } else if (key == "zr-max") {
    c.sweep.zr_max = std::stod(value);
  } else if (key == "points") {
    c.sweep.points = std::stoi(value);
  } else if (key == "log-spaced") {
    c.sweep.log_spaced = value == "true" || value == "1";
  } else if (key == "zr-list") {
    c.sweep.use_list = true;
    c.sweep.explicit_list.clear();
    for (const auto& tok : split(value, ',')) {
      c.sweep.explicit_list.push_back(std::stod(tok));
    }
  } else if (key == "l-fixed") {
    c.L_policy.fixed = true;
    c.L_policy.L = std::stoi(value);
  } else if (key == "l-start") {
    c.L_policy.fixed = false;
    c.L_policy.L = std::stoi(value);
  } else if (key == "l-step") {
    c.L_policy.L_step = std::stoi(value);
  } else if (key == "l-cap") {
    c.L_policy.L_cap = std::stoi(value);
  } else if (key == "rel-tol") {
    c.L_policy.rel_tol = std::stod(value);
  } else if (key == "truncations") {
    c.truncations = split(value, ',');
  } else if (key == "force-method") {
    c.force_method = force_method_from_string(value);
  } else if (key == "baselines") {
    c.baselines = value == "true" || value == "1";
  } else if (key == "output-csv") {
    c.output_csv = value;
  } else if (key == "workers") {
    c.workers = std::stoi(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  RunConfig c;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line without '=': " + t);
    }
    apply_config_line(c, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return c;
}

std::string config_to_text(const RunConfig& c) {
  std::ostringstream os;
  os << "omega-p-ev = " << fmt(c.omega_p_eV) << "\n";
  os << "inv-tau-wp = " << fmt(c.inv_tau_wp) << "\n";
  if (c.substrate_perfect_conductor) {
    os << "eps-substrate = perfect_conductor\n";
  } else {
    os << "eps-substrate = " << fmt(c.eps_substrate) << "\n";
  }
  os << "radius-nm = " << fmt(c.R_nm) << "\n";
  if (c.sweep.use_list) {
    os << "zr-list = ";
    for (std::size_t i = 0; i < c.sweep.explicit_list.size(); ++i) {
      os << (i ? "," : "") << fmt(c.sweep.explicit_list[i]);
    }
    os << "\n";
  } else {
    os << "zr-min = " << fmt(c.sweep.zr_min) << "\n";
    os << "zr-max = " << fmt(c.sweep.zr_max) << "\n";
    os << "points = " << c.sweep.points << "\n";
    os << "log-spaced = " << (c.sweep.log_spaced ? "true" : "false") << "\n";
  }
  if (c.L_policy.fixed) {
    os << "l-fixed = " << c.L_policy.L << "\n";
  } else {
    os << "l-start = " << c.L_policy.L << "\n";
    os << "l-step = " << c.L_policy.L_step << "\n";
    os << "l-cap = " << c.L_policy.L_cap << "\n";
    os << "rel-tol = " << fmt(c.L_policy.rel_tol) << "\n";
  }
  os << "truncations = ";
  for (std::size_t i = 0; i < c.truncations.size(); ++i) {
    os << (i ? "," : "") << c.truncations[i];
  }
  os << "\n";
  os << "force-method = " << to_string(c.force_method) << "\n";
  os << "baselines = " << (c.baselines ? "true" : "false") << "\n";
  os << "output-csv = " << c.output_csv << "\n";
  os << "workers = " << c.workers << "\n";
  return os.str();
}

std::string csv_header(const RunConfig& config) {
  std::string h =
      "z_over_R,z_nm,truncation,L_used,energy_hbar_wp,energy_eV,"
      "force_eV_per_nm,force_method,slope_local,status";
  if (config.baselines) {
    h += ",pt_perfect_conductor_force_eV_per_nm,pt_nonretarded_force_eV_per_nm";
  }
  return h;
}

std::string csv_row(const CurveSample& s, const RunConfig& config) {
  std::ostringstream os;
  os << fmt(s.z_over_R) << ',' << fmt(s.z_nm) << ',' << s.truncation << ','
     << s.L_used << ',' << fmt(s.energy_hbar_wp) << ',' << fmt(s.energy_eV)
     << ',' << fmt(s.force_eV_per_nm) << ',' << s.force_method << ','
     << fmt(s.slope_local) << ',' << s.status;
  if (config.baselines) {
    os << ',' << fmt(s.pt_perfect_conductor_force) << ','
       << fmt(s.pt_nonretarded_force);
  }
  return os.str();
}

std::vector<CurveSample> read_csv(std::istream& in) {
  std::vector<CurveSample> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  const bool has_baselines =
      line.find("pt_perfect_conductor_force_eV_per_nm") != std::string::npos;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() < 10) throw std::runtime_error("malformed CSV row: " + line);
    CurveSample s;
    s.z_over_R = std::stod(f[0]);
    s.z_nm = std::stod(f[1]);
    s.truncation = f[2];
    s.L_used = std::stoi(f[3]);
    s.energy_hbar_wp = std::stod(f[4]);
    s.energy_eV = std::stod(f[5]);
    s.force_eV_per_nm = std::stod(f[6]);
    s.force_method = f[7];
    s.slope_local = std::stod(f[8]);
    s.status = f[9];
    if (has_baselines && f.size() >= 12) {
      s.pt_perfect_conductor_force = std::stod(f[10]);
      s.pt_nonretarded_force = std::stod(f[11]);
    }
    rows.push_back(std::move(s));
  }
  return rows;
}

namespace {

struct PointResult {
  int L_used = 0;
  double energy = 0.0;  // hbar*omega_p
  double force = 0.0;   // hbar*omega_p per nm
  std::string status = "ok";
};

PointResult evaluate_point(const RunConfig& config, double zr,
                           const std::string& truncation) {
  PointResult out;
  const SpherePlateGeometry geom =
      SpherePlateGeometry::from_ratio(zr, config.R_nm);
  const double f_c = config.contrast();

  try {
    int L = 0;
    if (truncation == "1") {
      L = 1;
    } else if (truncation == "2") {
      L = 2;
    } else if (config.L_policy.fixed) {
      L = config.L_policy.L;
    }

    ModeSpectrum spec;
    if (L > 0) {
      spec = solve_spectrum(geom, f_c, L);
      out.L_used = L;
      out.energy = interaction_energy(spec);
    } else {
      const ConvergeResult conv =
          converge_L(geom, f_c, config.L_policy.rel_tol, config.L_policy.L,
                     config.L_policy.L_step, config.L_policy.L_cap);
      spec = conv.spectrum;
      out.L_used = conv.L_used;
      out.energy = conv.energy;
      if (!conv.converged) out.status = "nonconverged";
    }
    if (!spec.valid) out.status = "mode_collapse";

    const auto energy_at_L = [&](double z_nm) {
      return interaction_energy(
          solve_spectrum(SpherePlateGeometry(config.R_nm, z_nm), f_c,
                         out.L_used));
    };
    switch (config.force_method) {
      case ForceMethod::hf:
        out.force = force_hellmann_feynman(geom, f_c, out.L_used);
        break;
      case ForceMethod::fd:
        out.force = force_finite_difference(energy_at_L, geom.z_nm);
        break;
      case ForceMethod::both:
        out.force = force_hellmann_feynman(geom, f_c, out.L_used);
        (void)force_finite_difference(energy_at_L, geom.z_nm);
        break;
    }
    if (f_c < 0.0 && out.force > 0.0 && out.status == "ok") {
      out.status = "force_sign";
    }
  } catch (const std::exception&) {
    out.status = "error";
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const RunConfig& config, std::ostream& csv_out) {
  config.validate();
#ifdef _OPENMP
  if (config.workers > 0) omp_set_num_threads(config.workers);
#endif
  const auto t0 = std::chrono::steady_clock::now();
  SweepResult result;
  csv_out << csv_header(config) << '\n' << std::flush;

  const std::vector<double> zrs = config.sweep.values();
  const double f_c = config.contrast();
  for (const auto& truncation : config.truncations) {
    std::vector<CurveSample> curve;
    curve.reserve(zrs.size());
    // rows stream out once their centered slope is final
    const auto flush_row = [&](std::size_t i) {
      csv_out << csv_row(curve[i], config) << '\n' << std::flush;
    };
    for (std::size_t i = 0; i < zrs.size(); ++i) {
      const double zr = zrs[i];
      const PointResult p = evaluate_point(config, zr, truncation);
      CurveSample s;
      s.z_over_R = zr;
      s.z_nm = zr * config.R_nm;
      s.truncation = truncation;
      s.L_used = p.L_used;
      s.energy_hbar_wp = p.energy;
      s.energy_eV = p.energy * config.omega_p_eV;
      s.force_eV_per_nm = p.force * config.omega_p_eV;
      s.force_method = to_string(config.force_method);
      s.slope_local = std::numeric_limits<double>::quiet_NaN();
      s.status = p.status;
      if (config.baselines) {
        s.pt_perfect_conductor_force =
            pt_force_perfect_conductor(s.z_nm, config.R_nm);
        s.pt_nonretarded_force = pt_force_sphere_plate(
            s.z_nm, config.R_nm, [&](double z) {
              return plate_plate_nonretarded_energy_plasmon(z,
                                                            config.omega_p_eV);
            });
      }
      if (p.status != "ok") result.exit_code = 1;
      curve.push_back(std::move(s));
      if (i >= 2) {
        // slope for sample i-1 is now final
        if (curve[i - 2].energy_hbar_wp != 0.0 &&
            curve[i].energy_hbar_wp != 0.0) {
          curve[i - 1].slope_local =
              (std::log(std::fabs(curve[i].energy_hbar_wp)) -
               std::log(std::fabs(curve[i - 2].energy_hbar_wp))) /
              (std::log(zrs[i]) - std::log(zrs[i - 2]));
        }
        flush_row(i - 1);
      }
      if (i == 1) flush_row(0);
    }
    if (zrs.size() == 1) flush_row(0);
    if (zrs.size() >= 2) flush_row(zrs.size() - 1);
    for (auto& row : curve) result.rows.push_back(std::move(row));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

void write_plot_script(const RunConfig& config, std::ostream& os) {
  os << "# gnuplot script; reads the sweep CSV\n";
  os << "set datafile separator ','\n";
  os << "set logscale xy\n";
  os << "set xlabel 'z/R'\n";
  os << "set ylabel '|E| (eV)'\n";
  os << "set key left bottom\n";
  os << "plot ";
  bool first = true;
  for (const auto& t : config.truncations) {
    if (!first) os << ", \\\n     ";
    first = false;
    os << "'" << config.output_csv << "' using 1:(stringcolumn(3) eq '" << t
       << "' ? abs($6) : 1/0) with linespoints title 'L=" << t << "'";
  }
  os << "\n";
}

void write_manifest(const RunConfig& config, const SweepResult& result,
                    std::ostream& os) {
  os << "# run manifest\n";
  os << "tool = vdwsphere\n";
  os << "version = 1.0.0\n";
  os << "rows = " << result.rows.size() << "\n";
  os << "exit_code = " << result.exit_code << "\n";
  os << "wall_seconds = " << result.wall_seconds << "\n";
  os << "\n# configuration\n" << config_to_text(config);
}

}  // namespace vdws
