#pragma once

// The compatibility curve c = φ(R): the branch of {G = 0} inside Q₊, running
// from the asymptote R = 0 down to the tangency point B₀ = (R₀, c₀).

#include <limits>
#include <span>
#include <vector>

#include "ignifront/model.hpp"

namespace ignifront {

struct CriticalData {
  double a = 0.0;        // (θ_hl/θ_ig - 1)/b
  double b = 0.0;        // sqrt(q/θ_ig)
  double c_tilde = 0.0;  // sqrt(q(θ_hl-θ_ig)/(θ_hl θ_ig))
  double c0 = 0.0;
  double R0 = 0.0;
  double x0_at_c0 = 0.0;  // location of the preheat maximum at c = c0
};

enum class CurveKind { phi, psi };

struct CurvePoint {
  double R = 0.0;
  double c = 0.0;
};

struct CurveSamples {
  CurveKind kind = CurveKind::phi;
  std::vector<CurvePoint> points;
  std::vector<double> residuals;
};

/// f(c) = (1 - (θ_ig/q) c²) e^{(θ_hl/q) c²} - 1, whose root in (c̃, b) is c₀.
double critical_function(const ModelParams& p, double c);

/// Throws BracketFailure unless f has exactly one sign change on [c̃, b].
CriticalData critical_point(const ModelParams& p);

struct PhiOptions {
  double tol_G_rel = 1e-12;   // |G| <= tol_G_rel q e^{cR}
  double certify_rel = 1e-9;  // sample_phi rejects residuals above certify_rel q e^{cR}
  double c_cap = 1e6;
  int max_iterations = 200;
};

/// φ(R) for 0 < R <= R₀. `c_guess` (if finite) warm-starts the bracket search.
double phi(const ModelParams& p, const CriticalData& crit, double R,
           double c_guess = std::numeric_limits<double>::quiet_NaN(), const PhiOptions& opt = {});
double phi(const ModelParams& p, double R);

/// Tabulates φ on an ascending grid in (0, R₀], warm-starting each point from
/// its left neighbour. Every residual is certified; failures throw.
CurveSamples sample_phi(const ModelParams& p, std::span<const double> R_grid,
                        const PhiOptions& opt = {});

/// n geometric points from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);

/// Richardson (Neville) extrapolation of m(R) = R φ(R) to R = 0 from the
/// `order` smallest-R samples. The limit is ln(θ_hl/θ_ig).
double extrapolate_m_limit(const CurveSamples& phi_samples, int order = 3);

}  // namespace ignifront
