#include "ignifront/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace ignifront {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void row(std::ostream& os, std::initializer_list<double> xs) {
  bool first = true;
  for (const double x : xs) {
    if (!first) os << ',';
    os << format_double(x);
    first = false;
  }
  os << '\n';
}

// JSON cannot hold inf/nan; those become null.
nlohmann::ordered_json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

void write_curve_csv(std::ostream& os, const CurveSamples& s) {
  os << "R,c,residual\n";
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    row(os, {s.points[i].R, s.points[i].c, s.residuals[i]});
  }
}

void write_trajectory_csv(std::ostream& os, const SeparatrixTrajectory& tr) {
  os << "t,u,v\n";
  for (const auto& p : tr.samples()) row(os, {p.t, p.u, p.v});
}

void write_portrait_csv(std::ostream& os, const PhasePortrait& p) {
  os << "u,v,du,dv\n";
  for (const auto& f : p.field) row(os, {f.u, f.v, f.du, f.dv});
}

void write_boundary_csv(std::ostream& os, const PhasePortrait& p) {
  os << "side,u,v\n";
  auto side = [&os](const char* name, const std::vector<std::array<double, 2>>& pts) {
    for (const auto& q : pts) {
      os << name << ',' << format_double(q[0]) << ',' << format_double(q[1]) << '\n';
    }
  };
  side("left", p.left_side);
  side("bottom", p.bottom_side);
  side("curved", p.curved_side);
}

void write_melnikov_csv(std::ostream& os, std::span<const MelnikovRow> rows) {
  os << "c,v_hl,dv_dc_melnikov,dv_dc_fd,rel_err\n";
  for (const auto& r : rows) row(os, {r.c, r.v_hl, r.dv_dc_melnikov, r.dv_dc_fd, r.rel_err});
}

void write_profile_csv(std::ostream& os, const FrontSolution& s, std::span<const double> grid) {
  os << "x,theta,theta_x\n";
  for (const double x : grid) {
    const ProfilePoint p = s.eval(x);
    row(os, {x, p.theta, p.theta_x});
  }
}

void write_series_csv(std::ostream& os, const FrontSeries& s) {
  os << "t,x_ig\n";
  for (std::size_t i = 0; i < s.t.size(); ++i) row(os, {s.t[i], s.x_ig[i]});
}

void write_snapshot_csv(std::ostream& os, const Snapshot& s) {
  os << "x,theta\n";
  for (std::size_t i = 0; i < s.x.size(); ++i) row(os, {s.x[i], s.theta[i]});
}

nlohmann::ordered_json params_json(const ModelParams& p) {
  nlohmann::ordered_json j;
  j["q"] = p.q;
  j["h"] = p.h;
  j["theta_ig"] = p.theta_ig;
  j["theta_hl"] = p.theta_hl;
  j["theta_plus"] = p.theta_plus;
  return j;
}

nlohmann::ordered_json critical_json(const CriticalData& d) {
  nlohmann::ordered_json j;
  j["a"] = d.a;
  j["b"] = d.b;
  j["c_tilde"] = d.c_tilde;
  j["R0"] = d.R0;
  j["c0"] = d.c0;
  j["x0_at_c0"] = d.x0_at_c0;
  return j;
}

nlohmann::ordered_json front_summary_json(const FrontSolution& s, const FrontReport* report) {
  nlohmann::ordered_json j = params_json(s.params());
  j["R_star"] = s.R_star();
  j["c_star"] = s.c_star();
  j["lambda_minus"] = s.lambda_minus();
  j["v_hl"] = s.tail().v_hl();
  const FrontCertificates& c = s.certificates();
  nlohmann::ordered_json cert;
  cert["phi_residual"] = num(c.phi_residual);
  cert["psi_residual"] = num(c.psi_residual);
  cert["curve_gap"] = num(c.curve_gap);
  cert["flux"] = num(c.flux);
  cert["jump_c0_at_0"] = num(c.jump_c0_at_0);
  cert["jump_c1_at_0"] = num(c.jump_c1_at_0);
  cert["jump_c0_at_R"] = num(c.jump_c0_at_R);
  cert["jump_c1_at_R"] = num(c.jump_c1_at_R);
  cert["delta_increasing"] = c.delta_increasing;
  cert["halvings"] = c.halvings;
  cert["bisections"] = c.bisections;
  if (report) {
    cert["max_ode_residual"] = num(report->max_ode_residual);
    cert["min_theta_x"] = num(report->min_theta_x);
    cert["strictly_increasing"] = report->strictly_increasing;
    cert["limit_left"] = num(report->limit_left);
    cert["limit_right"] = num(report->limit_right);
  }
  j["certificates"] = cert;
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

}  // namespace ignifront
