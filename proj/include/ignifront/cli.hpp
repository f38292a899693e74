#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ignifront/model.hpp"

namespace ignifront::cli {

/// Flat key=value settings with '#' comments.
using Settings = std::map<std::string, std::string>;

Settings parse_config_text(const std::string& text);
Settings parse_config_file(const std::filesystem::path& path);

struct RunConfig {
  std::string command;
  ModelParams params;
  std::filesystem::path out_dir;

  double tol_scale = 1.0;
  double eps_seed_rel = 1e-7;

  int phi_n = 256;
  double phi_lo_factor = 1e-3;

  int psi_n = 64;
  double psi_R_max_factor = 3.0;

  double portrait_c = 1.0;
  int portrait_nu = 41;
  int portrait_nv = 41;
  double portrait_u_min = 0.0, portrait_u_max = 0.0;  // 0/0 selects a default window
  double portrait_v_min = 0.0, portrait_v_max = 0.0;

  double melnikov_c_min = 0.3;
  double melnikov_c_max = 3.0;
  int melnikov_n = 10;

  double profile_dx = 1e-2;

  double pde_L = 12.0;
  double pde_dx = 5e-3;
  double pde_T = 0.0;  // 0 selects 24/c*
  double comoving_dx = 5e-3;
  double comoving_T = 10.0;
};

/// Builds and validates a RunConfig. Throws Error on any invalid entry.
RunConfig make_run_config(const std::string& command, const Settings& s,
                          const std::filesystem::path& out_dir);

/// Entry point. Returns 0 on success, 1 on validation or usage errors and 2
/// on numerical failures.
int run(int argc, char** argv);

}  // namespace ignifront::cli
