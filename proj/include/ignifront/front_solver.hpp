#pragma once

// The traveling front: the intersection (R*, c*) of φ and ψ, the assembled
// profile θ*(x) on the whole line, and its numerical audit.

#include <span>
#include <vector>

#include "ignifront/explicit_region.hpp"
#include "ignifront/model.hpp"
#include "ignifront/phase_plane.hpp"
#include "ignifront/phi_curve.hpp"
#include "ignifront/psi_curve.hpp"

namespace ignifront {

struct FrontTolerances {
  double intersect_rel = 1e-10;  // bisection width in R, relative to R₀
  PhiOptions phi{};
  PsiOptions psi{};
  SeparatrixOptions tail{1e-7, 1e-11, 1e-13, true};
  int max_halvings = 60;
  int monotonicity_probes = 8;

  /// Every tolerance multiplied by `factor` (the seed offset is kept).
  FrontTolerances scaled(double factor) const;
};

struct FrontCertificates {
  double phi_residual = 0.0;  // |G(R*, c*)| / (q e^{c* R*})
  double psi_residual = 0.0;  // |R_of_c(c*) - R*|
  double curve_gap = 0.0;     // |ψ(R*) - φ(R*)|
  double flux = 0.0;          // c* θ_hl - q R*
  double jump_c0_at_0 = 0.0;
  double jump_c1_at_0 = 0.0;
  double jump_c0_at_R = 0.0;
  double jump_c1_at_R = 0.0;
  bool delta_increasing = false;  // Δ = ψ - φ increasing across the outer bracket
  int halvings = 0;
  int bisections = 0;
};

class FrontSolution {
 public:
  FrontSolution(Reaction reaction, CriticalData crit, double R_star, double c_star,
                SeparatrixTrajectory tail, FrontCertificates cert);

  const Reaction& reaction() const { return reaction_; }
  const ModelParams& params() const { return reaction_.params(); }
  const CriticalData& critical() const { return crit_; }
  double R_star() const { return R_star_; }
  double c_star() const { return c_star_; }
  const SeparatrixTrajectory& tail() const { return tail_; }
  const FrontCertificates& certificates() const { return cert_; }
  double lambda_minus() const { return tail_.saddle().lambda_minus; }
  /// Largest x accepted by eval(): the stored orbit plus the linearised patch.
  double x_max() const;

  /// θ*(x), θ*_x(x). Throws ExtrapolationBeyondTail past x_max().
  ProfilePoint eval(double x) const;

 private:
  Reaction reaction_;
  CriticalData crit_;
  double R_star_ = 0.0;
  double c_star_ = 0.0;
  SeparatrixTrajectory tail_;
  FrontCertificates cert_;
};

/// Δ(R) = ψ(R) - φ(R) on (0, R₀].
double front_delta(const Reaction& r, const CriticalData& crit, double R,
                   const FrontTolerances& tol = {});

/// Throws NoSignChange when Δ(R₀) <= 0 or no Δ < 0 is found within the halving cap.
FrontSolution solve_front(const Reaction& r, const FrontTolerances& tol = {});
FrontSolution solve_front(const ModelParams& p, const FrontTolerances& tol = {});

inline ProfilePoint eval_front(const FrontSolution& s, double x) { return s.eval(x); }

struct FrontReport {
  double max_ode_residual = 0.0;
  double jump_c0_at_0 = 0.0;
  double jump_c1_at_0 = 0.0;
  double jump_c0_at_R = 0.0;
  double jump_c1_at_R = 0.0;
  double min_theta_x = 0.0;
  bool strictly_increasing = false;
  double limit_left = 0.0;   // |θ(x_min)|
  double limit_right = 0.0;  // |θ(x_max) - θ₊|
  int residual_points = 0;
};

/// Audits θ* on a uniform grid: FD residual of θ'' - c θ' + F_full(θ) at
/// stencils clear of 0 and R*, interface jumps, monotonicity and limits.
FrontReport verify_front(const FrontSolution& s, std::span<const double> grid);

/// Uniform grid on [-10/c*, R* + 10/|λ₋|] with the given spacing.
std::vector<double> default_verification_grid(const FrontSolution& s, double dx = 1e-3);

}  // namespace ignifront
