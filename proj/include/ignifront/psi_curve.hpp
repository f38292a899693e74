#pragma once

// The separatrix-matching curve c = ψ(R), defined by c θ_hl - q R = v_c(θ_hl).

#include <span>

#include "ignifront/model.hpp"
#include "ignifront/phase_plane.hpp"
#include "ignifront/phi_curve.hpp"

namespace ignifront {

struct PsiOptions {
  double tol_R_rel = 1e-10;  // |R_of_c(c) - R| <= tol_R_rel max(1, R)
  SeparatrixOptions separatrix{1e-7, 1e-11, 1e-13, false};
  int max_iterations = 200;
};

/// (c θ_hl - v_c(θ_hl)) / q. Negative near c = 0.
double R_of_c(const Reaction& r, double c, const SeparatrixOptions& opt = {});
double R_of_c(const ModelParams& p, double c, const SeparatrixOptions& opt = {});

/// (v₀(θ_hl) + q R) / θ_hl.
double c_plus_bound(const Reaction& r, double R);
double c_plus_bound(const ModelParams& p, double R);

/// Bisection on [q R / θ_hl, c₊(R)]. Throws OutOfRange for R < 0 and
/// BracketFailure if the bracket does not straddle R.
double psi(const Reaction& r, double R, const PsiOptions& opt = {});
double psi(const ModelParams& p, double R, const PsiOptions& opt = {});

/// Tabulates ψ on an ascending grid with residuals |R_of_c(c) - R|.
CurveSamples sample_psi(const Reaction& r, std::span<const double> R_grid,
                        const PsiOptions& opt = {});
CurveSamples sample_psi(const ModelParams& p, std::span<const double> R_grid,
                        const PsiOptions& opt = {});

}  // namespace ignifront
