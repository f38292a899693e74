#include "ignifront/psi_curve.hpp"

#include <cmath>

#include "ignifront/error.hpp"

namespace ignifront {

double R_of_c(const Reaction& r, double c, const SeparatrixOptions& opt) {
  const ModelParams& p = r.params();
  return (c * p.theta_hl - v_at_hl(r, c, opt)) / p.q;
}

double R_of_c(const ModelParams& p, double c, const SeparatrixOptions& opt) {
  return R_of_c(Reaction(p), c, opt);
}

double c_plus_bound(const Reaction& r, double R) {
  const ModelParams& p = r.params();
  return (r.hamiltonian_speed(p.theta_hl) + p.q * R) / p.theta_hl;
}

double c_plus_bound(const ModelParams& p, double R) { return c_plus_bound(Reaction(p), R); }

double psi(const Reaction& r, double R, const PsiOptions& opt) {
  if (!(R >= 0.0) || !std::isfinite(R)) throw Error(ErrorCode::OutOfRange, "psi needs R >= 0");
  const ModelParams& p = r.params();
  const double tol = opt.tol_R_rel * std::max(1.0, R);
  double lo = p.q * R / p.theta_hl;
  double hi = c_plus_bound(r, R);
  double g_lo = R_of_c(r, lo, opt.separatrix) - R;
  double g_hi = R_of_c(r, hi, opt.separatrix) - R;
  if (!(g_lo < 0.0) || !(g_hi >= 0.0)) {
    throw Error(ErrorCode::BracketFailure, "psi: [qR/theta_hl, c_plus(R)] does not bracket R");
  }
  if (g_hi <= tol) return hi;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = R_of_c(r, mid, opt.separatrix) - R;
    if (std::abs(g) <= tol) return mid;
    if (g < 0.0) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
      g_hi = g;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  const double best = -g_lo < g_hi ? lo : hi;
  if (std::min(-g_lo, g_hi) > tol) {
    throw Error(ErrorCode::ToleranceFailure, "psi: residual stalled above tol_R");
  }
  return best;
}

double psi(const ModelParams& p, double R, const PsiOptions& opt) {
  return psi(Reaction(p), R, opt);
}

CurveSamples sample_psi(const Reaction& r, std::span<const double> R_grid, const PsiOptions& opt) {
  CurveSamples out;
  out.kind = CurveKind::psi;
  out.points.reserve(R_grid.size());
  out.residuals.reserve(R_grid.size());
  double prev = -1.0;
  for (const double R : R_grid) {
    if (R <= prev) throw Error(ErrorCode::OutOfRange, "psi grid must be strictly ascending");
    prev = R;
    const double c = psi(r, R, opt);
    out.points.push_back({R, c});
    out.residuals.push_back(std::abs(R_of_c(r, c, opt.separatrix) - R));
  }
  return out;
}

CurveSamples sample_psi(const ModelParams& p, std::span<const double> R_grid,
                        const PsiOptions& opt) {
  return sample_psi(Reaction(p), R_grid, opt);
}

}  // namespace ignifront
