#include "ignifront/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "ignifront/error.hpp"
#include "ignifront/front_solver.hpp"
#include "ignifront/io.hpp"
#include "ignifront/pde_verifier.hpp"
#include "ignifront/phase_plane.hpp"
#include "ignifront/phi_curve.hpp"
#include "ignifront/psi_curve.hpp"

namespace ignifront::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::UsageError, "key '" + key + "': '" + text + "' is not a number");
  }
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "key '" + key + "' must be finite");
  return v;
}

int to_count(const std::string& key, double v, int min) {
  if (v != std::floor(v) || v < min || v > 1e7) {
    throw Error(ErrorCode::OutOfRange,
                "key '" + key + "' must be an integer >= " + std::to_string(min));
  }
  return static_cast<int>(v);
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw Error(ErrorCode::OutOfRange, "key '" + key + "' must be > 0");
}

using Setter = std::function<void(RunConfig&, const std::string&, double)>;

const std::map<std::string, Setter>& optional_keys() {
  static const std::map<std::string, Setter> keys = {
      {"tol.scale",
       [](RunConfig& c, auto& k, double v) {
         require_positive(k, v);
         c.tol_scale = v;
       }},
      {"eps_seed_rel",
       [](RunConfig& c, auto& k, double v) {
         if (!(v > 0.0 && v < 1.0)) throw Error(ErrorCode::OutOfRange, k + " must be in (0, 1)");
         c.eps_seed_rel = v;
       }},
      {"phi.n", [](RunConfig& c, auto& k, double v) { c.phi_n = to_count(k, v, 2); }},
      {"phi.lo_factor",
       [](RunConfig& c, auto& k, double v) {
         if (!(v > 0.0 && v < 1.0)) throw Error(ErrorCode::OutOfRange, k + " must be in (0, 1)");
         c.phi_lo_factor = v;
       }},
      {"psi.n", [](RunConfig& c, auto& k, double v) { c.psi_n = to_count(k, v, 2); }},
      {"psi.R_max_factor",
       [](RunConfig& c, auto& k, double v) { require_positive(k, v); c.psi_R_max_factor = v; }},
      {"portrait.c",
       [](RunConfig& c, auto& k, double v) {
         if (!(v >= 0.0)) throw Error(ErrorCode::OutOfRange, k + " must be >= 0");
         c.portrait_c = v;
       }},
      {"portrait.nu", [](RunConfig& c, auto& k, double v) { c.portrait_nu = to_count(k, v, 1); }},
      {"portrait.nv", [](RunConfig& c, auto& k, double v) { c.portrait_nv = to_count(k, v, 1); }},
      {"portrait.u_min", [](RunConfig& c, auto&, double v) { c.portrait_u_min = v; }},
      {"portrait.u_max", [](RunConfig& c, auto&, double v) { c.portrait_u_max = v; }},
      {"portrait.v_min", [](RunConfig& c, auto&, double v) { c.portrait_v_min = v; }},
      {"portrait.v_max", [](RunConfig& c, auto&, double v) { c.portrait_v_max = v; }},
      {"melnikov.c_min",
       [](RunConfig& c, auto& k, double v) {
         if (!(v >= 0.0)) throw Error(ErrorCode::OutOfRange, k + " must be >= 0");
         c.melnikov_c_min = v;
       }},
      {"melnikov.c_max", [](RunConfig& c, auto&, double v) { c.melnikov_c_max = v; }},
      {"melnikov.n", [](RunConfig& c, auto& k, double v) { c.melnikov_n = to_count(k, v, 1); }},
      {"profile.dx",
       [](RunConfig& c, auto& k, double v) {
         require_positive(k, v);
         c.profile_dx = v;
       }},
      {"pde.L", [](RunConfig& c, auto& k, double v) { require_positive(k, v); c.pde_L = v; }},
      {"pde.dx", [](RunConfig& c, auto& k, double v) { require_positive(k, v); c.pde_dx = v; }},
      {"pde.T",
       [](RunConfig& c, auto& k, double v) {
         if (!(v >= 0.0)) throw Error(ErrorCode::OutOfRange, k + " must be >= 0");
         c.pde_T = v;
       }},
      {"comoving.dx",
       [](RunConfig& c, auto& k, double v) { require_positive(k, v); c.comoving_dx = v; }},
      {"comoving.T",
       [](RunConfig& c, auto& k, double v) {
         if (!(v >= 0.0)) throw Error(ErrorCode::OutOfRange, k + " must be >= 0");
         c.comoving_T = v;
       }},
  };
  return keys;
}

const char* const kModelKeys[] = {"q", "h", "theta_ig", "theta_hl"};

FrontTolerances tolerances(const RunConfig& cfg) {
  FrontTolerances t = FrontTolerances{}.scaled(cfg.tol_scale);
  t.tail.eps_seed_rel = cfg.eps_seed_rel;
  t.psi.separatrix.eps_seed_rel = cfg.eps_seed_rel;
  return t;
}

SeparatrixOptions separatrix_options(const RunConfig& cfg) {
  SeparatrixOptions o;
  o.eps_seed_rel = cfg.eps_seed_rel;
  o.rtol *= cfg.tol_scale;
  o.atol *= cfg.tol_scale;
  return o;
}

std::vector<double> profile_grid(const FrontSolution& s, double dx) {
  const double lo = -10.0 / s.c_star();
  const double hi = s.R_star() + 10.0 / std::abs(s.lambda_minus());
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / dx));
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g[i] = lo + dx * static_cast<double>(i);
  return g;
}

json error_json(const Error& e) {
  json j;
  j["code"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  return j;
}

// ---- subcommands ----------------------------------------------------------

int cmd_solve(const RunConfig& cfg) {
  json j = params_json(cfg.params);
  j["status"] = "failed";
  j["error"] = nullptr;
  j["R_star"] = nullptr;
  j["c_star"] = nullptr;
  j["lambda_minus"] = nullptr;
  j["v_hl"] = nullptr;
  j["certificates"] = nullptr;
  const fs::path front = cfg.out_dir / "front.json";
  const fs::path profile = cfg.out_dir / "profile.csv";
  try {
    const FrontSolution s = solve_front(cfg.params, tolerances(cfg));
    const auto grid = profile_grid(s, cfg.profile_dx);
    const FrontReport rep = verify_front(s, grid);
    json done = front_summary_json(s, &rep);
    j["status"] = "ok";
    for (auto it = done.begin(); it != done.end(); ++it) j[it.key()] = it.value();
    write_file(profile, [&](std::ostream& os) { write_profile_csv(os, s, grid); });
    write_json(front, j);
    const FrontCertificates& c = s.certificates();
    std::cout << "R* = " << format_double(s.R_star()) << "\n"
              << "c* = " << format_double(s.c_star()) << "\n"
              << "flux c*theta_hl - q R* = " << format_double(c.flux) << "\n"
              << "phi residual = " << format_double(c.phi_residual)
              << ", psi residual = " << format_double(c.psi_residual) << "\n"
              << "jumps at 0: " << format_double(c.jump_c0_at_0) << ", "
              << format_double(c.jump_c1_at_0) << "; at R*: " << format_double(c.jump_c0_at_R)
              << ", " << format_double(c.jump_c1_at_R) << "\n"
              << "max ODE residual = " << format_double(rep.max_ode_residual)
              << ", increasing = " << (rep.strictly_increasing ? "yes" : "no") << "\n";
    return 0;
  } catch (const Error& e) {
    j["error"] = error_json(e);
    write_json(front, j);
    write_file(profile, [](std::ostream& os) { os << "x,theta,theta_x\n"; });
    throw;
  }
}

int cmd_phi(const RunConfig& cfg) {
  const CriticalData crit = critical_point(cfg.params);
  write_json(cfg.out_dir / "critical.json", critical_json(crit));
  const auto grid = geometric_grid(cfg.phi_lo_factor * crit.R0, crit.R0, cfg.phi_n);
  const fs::path path = cfg.out_dir / "phi.csv";
  try {
    const CurveSamples s = sample_phi(cfg.params, grid);
    write_file(path, [&](std::ostream& os) { write_curve_csv(os, s); });
    std::cout << "c0 = " << format_double(crit.c0) << ", R0 = " << format_double(crit.R0)
              << ", " << s.points.size() << " phi samples\n";
  } catch (const Error&) {
    write_file(path, [](std::ostream& os) { os << "R,c,residual\n"; });
    throw;
  }
  return 0;
}

int cmd_psi(const RunConfig& cfg) {
  const CriticalData crit = critical_point(cfg.params);
  const auto grid = linear_grid(0.0, cfg.psi_R_max_factor * crit.R0, cfg.psi_n);
  PsiOptions opt;
  opt.tol_R_rel *= cfg.tol_scale;
  opt.separatrix.rtol *= cfg.tol_scale;
  opt.separatrix.atol *= cfg.tol_scale;
  opt.separatrix.eps_seed_rel = cfg.eps_seed_rel;
  const Reaction r(cfg.params);
  CurveSamples s;
  s.kind = CurveKind::psi;
  const fs::path path = cfg.out_dir / "psi.csv";
  try {
    s = sample_psi(r, grid, opt);
  } catch (const Error&) {
    write_file(path, [&](std::ostream& os) { write_curve_csv(os, s); });
    throw;
  }
  write_file(path, [&](std::ostream& os) { write_curve_csv(os, s); });
  std::cout << "psi(0) = " << format_double(s.points.front().c) << ", " << s.points.size()
            << " psi samples\n";
  return 0;
}

int cmd_portrait(const RunConfig& cfg) {
  const Reaction r(cfg.params);
  const double hl = cfg.params.theta_hl;
  const double tp = r.theta_plus();
  PortraitWindow w{cfg.portrait_u_min, cfg.portrait_u_max, cfg.portrait_v_min, cfg.portrait_v_max};
  if (w.u_min == 0.0 && w.u_max == 0.0) {
    const double span = tp - hl;
    w.u_min = hl - 0.1 * span;
    w.u_max = tp + 0.1 * span;
  }
  if (w.v_min == 0.0 && w.v_max == 0.0) {
    const double v0 = r.hamiltonian_speed(hl);
    w.v_min = -0.25 * v0;
    w.v_max = 1.25 * v0;
  }
  if (!(w.u_max > w.u_min) || !(w.v_max > w.v_min)) {
    throw Error(ErrorCode::OutOfRange, "portrait window must have positive extent");
  }
  const PhasePortrait p = phase_portrait(r, cfg.portrait_c, w, cfg.portrait_nu, cfg.portrait_nv);
  write_file(cfg.out_dir / "portrait.csv", [&](std::ostream& os) { write_portrait_csv(os, p); });
  write_file(cfg.out_dir / "boundary.csv", [&](std::ostream& os) { write_boundary_csv(os, p); });
  const fs::path sep = cfg.out_dir / "separatrix.csv";
  try {
    const SeparatrixTrajectory tr = separatrix(r, cfg.portrait_c, separatrix_options(cfg));
    write_file(sep, [&](std::ostream& os) { write_trajectory_csv(os, tr); });
    std::cout << "v_c(theta_hl) = " << format_double(tr.v_hl()) << " at c = "
              << format_double(cfg.portrait_c) << "\n";
  } catch (const Error&) {
    write_file(sep, [](std::ostream& os) { os << "t,u,v\n"; });
    throw;
  }
  return 0;
}

int cmd_melnikov(const RunConfig& cfg) {
  const Reaction r(cfg.params);
  const double hl = cfg.params.theta_hl;
  const SeparatrixOptions opt = separatrix_options(cfg);
  std::vector<MelnikovRow> rows;
  const fs::path path = cfg.out_dir / "melnikov.csv";
  const auto grid = linear_grid(cfg.melnikov_c_min, cfg.melnikov_c_max, cfg.melnikov_n);
  try {
    for (const double c : grid) {
      MelnikovRow row;
      row.c = c;
      row.v_hl = v_at_hl(r, c, opt);
      row.dv_dc_melnikov = melnikov_dvdc(r, c, hl, opt);
      const double d = 1e-4 * std::max(1.0, c);
      if (c >= d) {
        row.dv_dc_fd = (v_at_hl(r, c + d, opt) - v_at_hl(r, c - d, opt)) / (2.0 * d);
      } else {
        row.dv_dc_fd = (-3.0 * row.v_hl + 4.0 * v_at_hl(r, c + d, opt) -
                        v_at_hl(r, c + 2.0 * d, opt)) /
                       (2.0 * d);
      }
      row.rel_err = std::abs(row.dv_dc_melnikov - row.dv_dc_fd) / std::abs(row.dv_dc_fd);
      rows.push_back(row);
    }
  } catch (const Error&) {
    write_file(path, [&](std::ostream& os) { write_melnikov_csv(os, rows); });
    throw;
  }
  write_file(path, [&](std::ostream& os) { write_melnikov_csv(os, rows); });
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row.rel_err);
  std::cout << rows.size() << " Melnikov rows, max rel_err = " << format_double(worst) << "\n";
  return 0;
}

int cmd_pde_check(const RunConfig& cfg) {
  json j = params_json(cfg.params);
  j["status"] = "failed";
  j["error"] = nullptr;
  j["R_star"] = nullptr;
  j["c_star"] = nullptr;
  json lab;
  lab["L"] = cfg.pde_L;
  lab["dx"] = cfg.pde_dx;
  lab["dt"] = nullptr;
  lab["T"] = nullptr;
  lab["c_measured"] = nullptr;
  lab["rel_err"] = nullptr;
  lab["min_theta"] = nullptr;
  lab["max_theta"] = nullptr;
  json com;
  com["dx"] = cfg.comoving_dx;
  com["T"] = cfg.comoving_T;
  com["drift"] = nullptr;
  com["offset"] = nullptr;
  com["raw_drift"] = nullptr;
  j["lab_frame"] = lab;
  j["comoving"] = com;
  const fs::path report = cfg.out_dir / "report.json";
  const fs::path series = cfg.out_dir / "series.csv";
  FrontSeries fs_series;
  try {
    const FrontSolution s = solve_front(cfg.params, tolerances(cfg));
    j["R_star"] = s.R_star();
    j["c_star"] = s.c_star();

    SimulationConfig sc;
    sc.L = cfg.pde_L;
    sc.dx = cfg.pde_dx;
    sc.T = cfg.pde_T > 0.0 ? cfg.pde_T : 24.0 / s.c_star();
    const LabFrameResult res = simulate_lab_frame(s.reaction(), sc);
    fs_series = res.series;
    const double cm = measure_speed(res.series, sc.window);
    j["lab_frame"]["dt"] = sc.time_step();
    j["lab_frame"]["T"] = sc.T;
    j["lab_frame"]["c_measured"] = cm;
    j["lab_frame"]["rel_err"] = std::abs(cm - s.c_star()) / s.c_star();
    j["lab_frame"]["min_theta"] = res.min_theta;
    j["lab_frame"]["max_theta"] = res.max_theta;

    ComovingConfig cc;
    cc.dx = cfg.comoving_dx;
    cc.T = cfg.comoving_T;
    const ComovingDrift d = comoving_drift(s, cc);
    j["comoving"]["drift"] = d.drift;
    j["comoving"]["offset"] = d.offset;
    j["comoving"]["raw_drift"] = d.raw_drift;
    j["status"] = "ok";
    write_file(series, [&](std::ostream& os) { write_series_csv(os, fs_series); });
    write_json(report, j);
    std::cout << "c* = " << format_double(s.c_star()) << ", c_measured = " << format_double(cm)
              << ", comoving drift = " << format_double(d.drift) << "\n";
    return 0;
  } catch (const Error& e) {
    j["error"] = error_json(e);
    write_file(series, [&](std::ostream& os) { write_series_csv(os, fs_series); });
    write_json(report, j);
    throw;
  }
}

}  // namespace

Settings parse_config_text(const std::string& text) {
  Settings s;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::UsageError,
                  "config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::UsageError,
                  "config line " + std::to_string(lineno) + ": empty key or value");
    }
    s[key] = value;
  }
  return s;
}

Settings parse_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UsageError, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig make_run_config(const std::string& command, const Settings& s, const fs::path& out_dir) {
  RunConfig cfg;
  cfg.command = command;
  cfg.out_dir = out_dir;
  double model[4];
  for (int i = 0; i < 4; ++i) {
    const auto it = s.find(kModelKeys[i]);
    if (it == s.end()) {
      throw Error(ErrorCode::UsageError,
                  std::string("missing required key '") + kModelKeys[i] + "'");
    }
    model[i] = to_number(it->first, it->second);
  }
  for (const auto& [key, value] : s) {
    if (key == "q" || key == "h" || key == "theta_ig" || key == "theta_hl") continue;
    const auto it = optional_keys().find(key);
    if (it == optional_keys().end()) {
      throw Error(ErrorCode::UsageError, "unknown key '" + key + "'");
    }
    it->second(cfg, key, to_number(key, value));
  }
  cfg.params = validate_params(model[0], model[1], model[2], model[3]);
  if (!(cfg.melnikov_c_max >= cfg.melnikov_c_min)) {
    throw Error(ErrorCode::OutOfRange, "melnikov.c_max must be >= melnikov.c_min");
  }
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"Traveling autoignition fronts: solver and verification tools", "ignifront"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_flag;
  std::vector<std::string> overrides;
  const char* names[] = {"solve", "phi", "psi", "portrait", "melnikov", "pde-check"};
  const char* help[] = {"solve for (R*, c*) and write front.json, profile.csv",
                        "tabulate phi and write critical.json, phi.csv",
                        "tabulate psi and write psi.csv",
                        "write the phase portrait of X_c and its separatrix",
                        "compare Melnikov and finite-difference dv/dc",
                        "cross-check the front with PDE simulations"};
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", config_path, "key=value configuration file")->required();
    sub->add_option("--out", out_flag, "output directory");
    sub->add_option("--set", overrides, "override a configuration entry (key=value)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ignifront: error: UsageError: " << e.what() << "\n";
    return 1;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    Settings settings = parse_config_file(config_path);
    for (const auto& o : overrides) {
      const Settings extra = parse_config_text(o);
      if (extra.size() != 1) throw Error(ErrorCode::UsageError, "--set expects key=value");
      settings[extra.begin()->first] = extra.begin()->second;
    }
    fs::path out_dir = "out";
    if (const char* env = std::getenv("IGNIFRONT_OUT"); env && *env) out_dir = env;
    if (!out_flag.empty()) out_dir = out_flag;

    const RunConfig cfg = make_run_config(command, settings, out_dir);
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + cfg.out_dir.string());

    if (command == "solve") return cmd_solve(cfg);
    if (command == "phi") return cmd_phi(cfg);
    if (command == "psi") return cmd_psi(cfg);
    if (command == "portrait") return cmd_portrait(cfg);
    if (command == "melnikov") return cmd_melnikov(cfg);
    return cmd_pde_check(cfg);
  } catch (const Error& e) {
    std::cerr << "ignifront: error: " << e.what() << "\n";
    return is_validation_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "ignifront: error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ignifront::cli
