#include "ignifront/explicit_region.hpp"

#include <algorithm>
#include <cmath>

#include "ignifront/error.hpp"

namespace ignifront {

CandidatePair classify(const ModelParams& p, double R, double c) {
  const double flux = flux_at_R(p, R, c);
  const double tol = 1e-12 * std::max(1.0, c * p.theta_hl);
  return {R, c, flux >= -tol, std::abs(flux) <= tol};
}

ProfilePoint preheat_profile(const ModelParams& p, double c, double R, double x) {
  if (!(c > 0.0)) throw Error(ErrorCode::SpeedNonPositive, "preheat profile needs c > 0");
  if (x > R) throw Error(ErrorCode::OutOfRange, "preheat profile is defined for x <= R only");
  const double e = std::exp(c * x);
  if (x < 0.0) return {p.theta_ig * e, c * p.theta_ig * e};
  const double em1 = std::expm1(c * x);
  const double theta = p.theta_ig * e + p.q / c * x - p.q / (c * c) * em1;
  const double theta_x = c * p.theta_ig * e - p.q / c * em1;
  return {theta, theta_x};
}

double G(const ModelParams& p, double R, double c) {
  const double m = c * R;
  const double em1 = std::expm1(m);
  // θ_ig e^m - θ_hl = θ_ig (e^m - 1) - (θ_hl - θ_ig)
  return p.q * (em1 - m) - c * c * (p.theta_ig * em1 - (p.theta_hl - p.theta_ig));
}

GPartials G_partials(const ModelParams& p, double R, double c) {
  const double m = c * R;
  const double e = std::exp(m);
  const double em1 = std::expm1(m);
  const double dR = p.q * c * em1 - c * c * c * p.theta_ig * e;
  const double dc = p.q * R * em1 - c * p.theta_ig * e * (2.0 + m) + 2.0 * c * p.theta_hl;
  return {dR, dc};
}

}  // namespace ignifront
