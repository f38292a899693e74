#include "ignifront/phi_curve.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "ignifront/error.hpp"
#include "ignifront/explicit_region.hpp"

namespace ignifront {

namespace {

constexpr int kSignScanPoints = 64;

double tol_G(const ModelParams& p, double R, double c, double rel) {
  return rel * p.q * std::exp(c * R);
}

}  // namespace

double critical_function(const ModelParams& p, double c) {
  const double c2 = c * c;
  return (1.0 - p.theta_ig / p.q * c2) * std::exp(p.theta_hl / p.q * c2) - 1.0;
}

CriticalData critical_point(const ModelParams& p) {
  CriticalData d;
  d.b = std::sqrt(p.q / p.theta_ig);
  d.a = (p.theta_hl / p.theta_ig - 1.0) / d.b;
  d.c_tilde = std::sqrt(p.q * (1.0 / p.theta_ig - 1.0 / p.theta_hl));

  // Locate the single sign change of f on [c̃, b] before refining it.
  int changes = 0;
  double lo = d.c_tilde;
  double hi = d.b;
  double f_prev = critical_function(p, d.c_tilde);
  if (!(f_prev > 0.0)) throw Error(ErrorCode::BracketFailure, "critical function f(c~) <= 0");
  double c_prev = d.c_tilde;
  double f_lo = f_prev;
  double f_hi = 0.0;
  for (int i = 1; i <= kSignScanPoints; ++i) {
    const double c = d.c_tilde + (d.b - d.c_tilde) * i / kSignScanPoints;
    const double f = critical_function(p, c);
    if ((f > 0.0) != (f_prev > 0.0)) {
      ++changes;
      lo = c_prev;
      hi = c;
      f_lo = f_prev;
      f_hi = f;
    }
    c_prev = c;
    f_prev = f;
  }
  if (changes != 1) {
    throw Error(ErrorCode::BracketFailure,
                "critical function has " + std::to_string(changes) + " sign changes on [c~, b]");
  }

  std::uintmax_t iters = 200;
  const auto [r_lo, r_hi] = boost::math::tools::toms748_solve(
      [&](double c) { return critical_function(p, c); }, lo, hi, f_lo, f_hi,
      boost::math::tools::eps_tolerance<double>(53), iters);
  d.c0 = std::abs(critical_function(p, r_lo)) <= std::abs(critical_function(p, r_hi)) ? r_lo
                                                                                        : r_hi;
  d.R0 = d.c0 * p.theta_hl / p.q;
  d.x0_at_c0 = -std::log1p(-d.c0 * d.c0 * p.theta_ig / p.q) / d.c0;
  if (std::abs(d.R0 - d.x0_at_c0) > 1e-9 * std::max(1.0, d.R0)) {
    throw Error(ErrorCode::ToleranceFailure, "critical point: R0 and x0 disagree");
  }
  return d;
}

double phi(const ModelParams& p, const CriticalData& crit, double R, double c_guess,
           const PhiOptions& opt) {
  const double r_tol = 1e-12 * crit.R0;
  if (!(R > 0.0) || R > crit.R0 + r_tol) {
    throw Error(ErrorCode::OutOfRange, "phi is defined on (0, R0] only");
  }
  if (R >= crit.R0 - r_tol) return crit.c0;

  double lo = std::max(crit.c0, p.q * R / p.theta_hl);
  double g_lo = G(p, R, lo);
  if (!(g_lo > 0.0)) {
    // The curve leaves B₀ with zero slope, so G(R, c₀) is O((R₀-R)²) and may
    // round to zero right next to the endpoint.
    if (crit.R0 - R <= 1e-6 * crit.R0) return lo;
    throw Error(ErrorCode::BracketFailure, "G(R, c_lower) <= 0 away from R0");
  }

  double hi = std::isfinite(c_guess) ? c_guess : std::log(p.theta_hl / p.theta_ig) / R;
  hi = std::max(hi, lo);
  double g_hi = G(p, R, hi);
  while (g_hi > 0.0) {
    lo = hi;
    g_lo = g_hi;
    hi = 2.0 * hi;
    if (hi > opt.c_cap) throw Error(ErrorCode::BracketFailure, "phi: no sign change below c_cap");
    g_hi = G(p, R, hi);
  }
  if (g_hi == 0.0) return hi;

  // Safeguarded Newton on the bracket [lo, hi] with G(lo) > 0 > G(hi).
  double c = hi;
  double g = g_hi;
  double dx_old = hi - lo;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double dg = G_partials(p, R, c).dc;
    double c_next = c - g / dg;
    const bool newton_ok = std::isfinite(c_next) && c_next > lo && c_next < hi &&
                           std::abs(2.0 * g) <= std::abs(dx_old * dg);
    if (!newton_ok) c_next = 0.5 * (lo + hi);
    dx_old = std::abs(c_next - c);
    c = c_next;
    g = G(p, R, c);
    if (std::abs(g) <= tol_G(p, R, c, opt.tol_G_rel)) return c;
    if (g > 0.0) {
      lo = c;
    } else {
      hi = c;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return c;
  }
  throw Error(ErrorCode::ToleranceFailure, "phi: iteration limit reached");
}

double phi(const ModelParams& p, double R) { return phi(p, critical_point(p), R); }

CurveSamples sample_phi(const ModelParams& p, std::span<const double> R_grid,
                        const PhiOptions& opt) {
  const CriticalData crit = critical_point(p);
  CurveSamples out;
  out.kind = CurveKind::phi;
  out.points.reserve(R_grid.size());
  out.residuals.reserve(R_grid.size());
  double warm = std::numeric_limits<double>::quiet_NaN();
  double prev_R = 0.0;
  for (const double R : R_grid) {
    if (R <= prev_R) throw Error(ErrorCode::OutOfRange, "phi grid must be strictly ascending");
    prev_R = R;
    const double c = phi(p, crit, R, warm, opt);
    const double res = std::abs(G(p, R, c));
    if (res > tol_G(p, R, c, opt.certify_rel)) {
      throw Error(ErrorCode::ToleranceFailure, "phi residual above certification tolerance");
    }
    out.points.push_back({R, c});
    out.residuals.push_back(res);
    warm = c;
  }
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = hi;
    return g;
  }
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(ratio * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

double extrapolate_m_limit(const CurveSamples& phi_samples, int order) {
  if (order < 1 || phi_samples.points.size() < static_cast<std::size_t>(order)) {
    throw Error(ErrorCode::InsufficientData, "not enough samples to extrapolate m(R)");
  }
  std::vector<CurvePoint> pts(phi_samples.points.begin(), phi_samples.points.end());
  std::sort(pts.begin(), pts.end(), [](auto& x, auto& y) { return x.R < y.R; });
  std::vector<double> xs(order), tab(order);
  for (int i = 0; i < order; ++i) {
    xs[i] = pts[i].R;
    tab[i] = pts[i].R * pts[i].c;
  }
  // Neville's scheme evaluated at R = 0.
  for (int k = 1; k < order; ++k) {
    for (int i = 0; i < order - k; ++i) {
      tab[i] = (xs[i + k] * tab[i] - xs[i] * tab[i + 1]) / (xs[i + k] - xs[i]);
    }
  }
  return tab[0];
}

}  // namespace ignifront
