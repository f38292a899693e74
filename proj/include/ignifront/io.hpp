#pragma once

// CSV and JSON exports. Numbers are written with 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ignifront/front_solver.hpp"
#include "ignifront/pde_verifier.hpp"
#include "ignifront/phase_plane.hpp"
#include "ignifront/phi_curve.hpp"

namespace ignifront {

std::string format_double(double x);

struct MelnikovRow {
  double c = 0.0;
  double v_hl = 0.0;
  double dv_dc_melnikov = 0.0;
  double dv_dc_fd = 0.0;
  double rel_err = 0.0;
};

void write_curve_csv(std::ostream& os, const CurveSamples& s);
void write_trajectory_csv(std::ostream& os, const SeparatrixTrajectory& tr);
void write_portrait_csv(std::ostream& os, const PhasePortrait& p);
void write_boundary_csv(std::ostream& os, const PhasePortrait& p);
void write_melnikov_csv(std::ostream& os, std::span<const MelnikovRow> rows);
void write_profile_csv(std::ostream& os, const FrontSolution& s, std::span<const double> grid);
void write_series_csv(std::ostream& os, const FrontSeries& s);
void write_snapshot_csv(std::ostream& os, const Snapshot& s);

/// Opens `path` for writing and hands the stream to `writer`. Throws IoFailure.
template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer);

nlohmann::ordered_json params_json(const ModelParams& p);
nlohmann::ordered_json critical_json(const CriticalData& d);
nlohmann::ordered_json front_summary_json(const FrontSolution& s, const FrontReport* report);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

}  // namespace ignifront

#include <fstream>

#include "ignifront/error.hpp"

namespace ignifront {

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  writer(os);
  os.flush();
  if (!os) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace ignifront
