#include "ignifront/front_solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ignifront/error.hpp"

namespace ignifront {

namespace {

constexpr double kTailPatchDecays = 40.0;

}  // namespace

FrontTolerances FrontTolerances::scaled(double factor) const {
  FrontTolerances t = *this;
  t.intersect_rel *= factor;
  t.phi.tol_G_rel *= factor;
  t.psi.tol_R_rel *= factor;
  t.psi.separatrix.rtol *= factor;
  t.psi.separatrix.atol *= factor;
  t.tail.rtol *= factor;
  t.tail.atol *= factor;
  return t;
}

FrontSolution::FrontSolution(Reaction reaction, CriticalData crit, double R_star, double c_star,
                             SeparatrixTrajectory tail, FrontCertificates cert)
    : reaction_(std::move(reaction)),
      crit_(crit),
      R_star_(R_star),
      c_star_(c_star),
      tail_(std::move(tail)),
      cert_(cert) {}

double FrontSolution::x_max() const {
  return R_star_ + tail_.t_seed() + kTailPatchDecays / std::abs(lambda_minus());
}

ProfilePoint FrontSolution::eval(double x) const {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "eval_front needs a finite x");
  if (x <= R_star_) return preheat_profile(params(), c_star_, R_star_, x);
  if (x > x_max()) {
    throw Error(ErrorCode::ExtrapolationBeyondTail, "x lies beyond the saddle-linearisation patch");
  }
  const auto s = tail_.state_at_time(x - R_star_);
  return {s[0], s[1]};
}

double front_delta(const Reaction& r, const CriticalData& crit, double R,
                   const FrontTolerances& tol) {
  return psi(r, R, tol.psi) - phi(r.params(), crit, R, std::numeric_limits<double>::quiet_NaN(),
                                  tol.phi);
}

FrontSolution solve_front(const Reaction& r, const FrontTolerances& tol) {
  const ModelParams& p = r.params();
  const CriticalData crit = critical_point(p);
  const double R0 = crit.R0;
  FrontCertificates cert;

  double R_hi = R0;
  double d_hi = front_delta(r, crit, R_hi, tol);
  if (!(d_hi > 0.0)) throw Error(ErrorCode::NoSignChange, "psi(R0) <= c0");
  double R_lo = R0;
  double d_lo = d_hi;
  while (d_lo >= 0.0) {
    if (cert.halvings >= tol.max_halvings) {
      throw Error(ErrorCode::NoSignChange, "psi - phi stays >= 0 down to R0 * 2^-60");
    }
    R_hi = R_lo;
    d_hi = d_lo;
    R_lo *= 0.5;
    ++cert.halvings;
    d_lo = front_delta(r, crit, R_lo, tol);
  }

  // Monotonicity of Δ across the outer bracket.
  {
    const int n = std::max(1, tol.monotonicity_probes);
    double prev = d_lo;
    bool increasing = true;
    for (int k = 1; k <= n; ++k) {
      const double R = R_lo + (R_hi - R_lo) * k / (n + 1);
      const double d = front_delta(r, crit, R, tol);
      increasing = increasing && d > prev;
      prev = d;
    }
    cert.delta_increasing = increasing && d_hi > prev;
  }

  const double width = tol.intersect_rel * R0;
  while (R_hi - R_lo > width) {
    const double mid = 0.5 * (R_lo + R_hi);
    const double d = front_delta(r, crit, mid, tol);
    ++cert.bisections;
    if (d < 0.0) {
      R_lo = mid;
      d_lo = d;
    } else {
      R_hi = mid;
      d_hi = d;
    }
    if (d == 0.0) {
      R_lo = R_hi = mid;
      break;
    }
  }
  const double R_star = 0.5 * (R_lo + R_hi);
  const double c_phi = phi(p, crit, R_star, std::numeric_limits<double>::quiet_NaN(), tol.phi);
  const double c_psi = psi(r, R_star, tol.psi);
  const double c_star = 0.5 * (c_phi + c_psi);

  cert.curve_gap = std::abs(c_psi - c_phi);
  cert.phi_residual = std::abs(G(p, R_star, c_star)) / (p.q * std::exp(c_star * R_star));
  cert.psi_residual = std::abs(R_of_c(r, c_star, tol.psi.separatrix) - R_star);
  cert.flux = flux_at_R(p, R_star, c_star);

  SeparatrixTrajectory tail = separatrix(r, c_star, tol.tail);

  const ProfilePoint left0{p.theta_ig, c_star * p.theta_ig};
  const ProfilePoint right0 = preheat_profile(p, c_star, R_star, 0.0);
  cert.jump_c0_at_0 = std::abs(left0.theta - right0.theta);
  cert.jump_c1_at_0 = std::abs(left0.theta_x - right0.theta_x);
  const ProfilePoint leftR = preheat_profile(p, c_star, R_star, R_star);
  cert.jump_c0_at_R = std::abs(leftR.theta - p.theta_hl);
  cert.jump_c1_at_R = std::abs(leftR.theta_x - tail.v_hl());

  return FrontSolution(r, crit, R_star, c_star, std::move(tail), cert);
}

FrontSolution solve_front(const ModelParams& p, const FrontTolerances& tol) {
  return solve_front(Reaction(p), tol);
}

FrontReport verify_front(const FrontSolution& s, std::span<const double> grid) {
  FrontReport rep;
  const ModelParams& p = s.params();
  const double c = s.c_star();
  const double R = s.R_star();
  const FrontCertificates& cert = s.certificates();
  rep.jump_c0_at_0 = cert.jump_c0_at_0;
  rep.jump_c1_at_0 = cert.jump_c1_at_0;
  rep.jump_c0_at_R = cert.jump_c0_at_R;
  rep.jump_c1_at_R = cert.jump_c1_at_R;
  if (grid.empty()) return rep;

  std::vector<ProfilePoint> vals;
  vals.reserve(grid.size());
  for (const double x : grid) vals.push_back(s.eval(x));

  rep.min_theta_x = std::numeric_limits<double>::infinity();
  rep.strictly_increasing = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rep.min_theta_x = std::min(rep.min_theta_x, vals[i].theta_x);
    if (i > 0 && !(vals[i].theta > vals[i - 1].theta)) rep.strictly_increasing = false;
  }
  rep.strictly_increasing = rep.strictly_increasing && rep.min_theta_x > 0.0;

  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double xm = grid[i - 1];
    const double x = grid[i];
    const double xp = grid[i + 1];
    if ((xm <= 0.0 && xp >= 0.0) || (xm <= R && xp >= R)) continue;
    const double hm = x - xm;
    const double hp = xp - x;
    const double tm = vals[i - 1].theta;
    const double t0 = vals[i].theta;
    const double tp = vals[i + 1].theta;
    const double d2 = 2.0 * ((tp - t0) / hp - (t0 - tm) / hm) / (hp + hm);
    const double d1 = (hm * hm * tp - hp * hp * tm + (hp * hp - hm * hm) * t0) /
                      (hp * hm * (hp + hm));
    const double res = d2 - c * d1 + s.reaction().full(t0);
    rep.max_ode_residual = std::max(rep.max_ode_residual, std::abs(res));
    ++rep.residual_points;
  }
  rep.limit_left = std::abs(vals.front().theta);
  rep.limit_right = std::abs(vals.back().theta - p.theta_plus);
  return rep;
}

std::vector<double> default_verification_grid(const FrontSolution& s, double dx) {
  const double lo = -10.0 / s.c_star();
  const double hi = s.R_star() + 10.0 / std::abs(s.lambda_minus());
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / dx));
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g[i] = lo + dx * static_cast<double>(i);
  return g;
}

}  // namespace ignifront
