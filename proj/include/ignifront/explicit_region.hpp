#pragma once

// Closed-form profile on (-∞, R] and the compatibility function
//
//   G(R, c) = (e^{cR} - 1 - cR) q - c² (θ_ig e^{cR} - θ_hl),
//
// whose zero set encodes θ(R) = θ_hl for the preheat solution started at
// θ(0) = θ_ig, θ_x(0) = c θ_ig. In fact G = -c² (θ(R) - θ_hl).

#include "ignifront/model.hpp"

namespace ignifront {

struct CandidatePair {
  double R = 0.0;
  double c = 0.0;
  bool in_Q_plus = false;    // c θ_hl - q R >= -tol
  bool on_boundary = false;  // |c θ_hl - q R| <= tol
};

/// Q₊ membership with the boundary tolerance 1e-12 max(1, c θ_hl).
CandidatePair classify(const ModelParams& p, double R, double c);

struct ProfilePoint {
  double theta = 0.0;
  double theta_x = 0.0;
};

/// Preheat profile: θ_ig e^{cx} on x < 0, the reactive closed form on [0, R].
/// Throws SpeedNonPositive for c <= 0 and OutOfRange for x > R.
ProfilePoint preheat_profile(const ModelParams& p, double c, double R, double x);

double G(const ModelParams& p, double R, double c);

struct GPartials {
  double dR = 0.0;
  double dc = 0.0;
};

/// Exact partials of G, valid off the level set.
GPartials G_partials(const ModelParams& p, double R, double c);

/// Outgoing slope at the heat-loss interface, c θ_hl - q R.
inline double flux_at_R(const ModelParams& p, double R, double c) {
  return c * p.theta_hl - p.q * R;
}

}  // namespace ignifront
