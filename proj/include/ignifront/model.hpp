#pragma once

// Model parameters and the piecewise reaction term
//
//   F(θ) = q H(θ - θ_ig) - h ((1+θ)^4 - 1) H(θ - θ_hl),   H(0) = 1,
//
// together with its restriction to the heat-loss region, the potential
// U(u) = ∫_{θ_hl}^u F and the equilibrium θ₊ = (1 + q/h)^{1/4} - 1.

#include <functional>

namespace ignifront {

struct ModelParams {
  double q = 0.0;         // reaction intensity
  double h = 0.0;         // heat-loss intensity
  double theta_ig = 0.0;  // ignition threshold
  double theta_hl = 0.0;  // heat-loss threshold
  double theta_plus = 0.0;  // cached equilibrium, set by validate_params
};

/// Equilibrium temperature (1 + q/h)^{1/4} - 1.
double theta_plus(double q, double h);
inline double theta_plus(const ModelParams& p) { return theta_plus(p.q, p.h); }

/// Builds a ModelParams, enforcing q, h > 0 and 0 < θ_ig < θ_hl < θ₊.
/// Throws Error{NonFinite | NonPositiveParameter | OrderingViolated}.
ModelParams validate_params(double q, double h, double theta_ig, double theta_hl);

/// Full piecewise reaction with the quartic radiative loss. H(0) = 1 at both thresholds.
double reaction_full(const ModelParams& p, double theta);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Default neighbourhood W of [θ_hl, θ₊] on which the restricted reaction is evaluated.
Interval default_domain(double theta_hl, double theta_plus);

/// User-supplied nonlinearity for the heat-loss region. The handles must be
/// smooth on `domain`, with a unique zero θ₊ in [θ_hl, domain.hi] and F'(θ₊) < 0.
struct CustomReaction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  Interval domain;
};

/// The reaction as seen by the phase-plane and PDE code: either the quartic
/// radiative law or a custom F on the heat-loss region. Immutable after construction.
class Reaction {
 public:
  explicit Reaction(const ModelParams& params);
  Reaction(const ModelParams& params, CustomReaction custom);

  const ModelParams& params() const { return params_; }
  double theta_plus() const { return theta_plus_; }
  const Interval& domain() const { return domain_; }
  bool is_quartic() const { return !custom_.f; }

  /// F restricted to the heat-loss region; throws OutOfDomain outside W.
  double restricted(double u) const;
  double derivative(double u) const;

  /// Same as restricted() without the domain check. Used on hot paths that
  /// already guarantee u ∈ W (or, for the quartic law, anywhere on the line).
  double restricted_unchecked(double u) const {
    if (custom_.f) return custom_.f(u);
    // q - h((1+u)^4 - 1) written through θ₊ so the zero at θ₊ is exact.
    const double a = 1.0 + theta_plus_;
    const double b = 1.0 + u;
    return params_.h * (a - b) * (a + b) * (a * a + b * b);
  }

  /// Full reaction: 0 below θ_ig, q on [θ_ig, θ_hl), F on [θ_hl, ∞).
  double full(double theta) const {
    if (theta < params_.theta_ig) return 0.0;
    if (theta < params_.theta_hl) return params_.q;
    return restricted_unchecked(theta);
  }

  /// U(u) = ∫_{θ_hl}^u F(s) ds.
  double potential(double u) const;
  /// U(θ₊) - U(u), evaluated without cancellation near θ₊.
  double potential_drop(double u) const;
  /// v₀(u) = sqrt(2 (U(θ₊) - U(u))): the c = 0 separatrix.
  double hamiltonian_speed(double u) const;

 private:
  ModelParams params_;
  CustomReaction custom_;
  double theta_plus_ = 0.0;
  Interval domain_;
};

inline double reaction_restricted(const Reaction& r, double u) { return r.restricted(u); }
inline double reaction_derivative(const Reaction& r, double u) { return r.derivative(u); }
inline double potential_U(const Reaction& r, double u) { return r.potential(u); }

}  // namespace ignifront
