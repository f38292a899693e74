#pragma once

// The first-order system X_c on the heat-loss region,
//
//   u' = v,   v' = c v - F(u),
//
// its saddle at (θ₊, 0), the stable separatrix v = v_c(u) on [θ_hl, θ₊] and
// the Melnikov derivative ∂_c v_c(ū).

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

#include "ignifront/dop853.hpp"
#include "ignifront/model.hpp"

namespace ignifront {

struct SaddleData {
  double u = 0.0;  // θ₊
  double v = 0.0;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  std::array<double, 2> stable_dir{};    // (1, λ₋)
  std::array<double, 2> unstable_dir{};  // (1, λ₊)
};

/// Closed-form eigen-data at (θ₊, 0). Throws OutOfRange for c < 0.
SaddleData saddle_eigen(const Reaction& r, double c);
SaddleData saddle_eigen(const ModelParams& p, double c);

struct SeparatrixOptions {
  double eps_seed_rel = 1e-7;  // ε = eps_seed_rel (θ₊ - θ_hl)
  double rtol = 1e-10;
  double atol = 1e-12;
  bool dense = true;  // keep the step polynomials for interpolation
};

struct OrbitSample {
  double t = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// Stable separatrix of the saddle, computed as a graph over u. Time is
/// normalised so that t = 0 at u = θ_hl and grows toward the saddle.
class SeparatrixTrajectory {
 public:
  double c() const { return c_; }
  double v_hl() const { return v_hl_; }
  double epsilon_seed() const { return eps_; }
  /// Time spent between u = θ_hl and the seed point.
  double t_seed() const { return T_; }
  const SaddleData& saddle() const { return saddle_; }
  /// Samples ordered by increasing t (increasing u).
  const std::vector<OrbitSample>& samples() const { return samples_; }
  bool has_dense() const { return !steps_.empty(); }

  /// v_c(u) on [θ_hl, θ₊]; the stable eigen-direction is used past the seed.
  double v_of_u(double u) const;
  /// t(u) on [θ_hl, θ₊); +∞ at θ₊.
  double time_of_u(double u) const;
  /// ∫₀^∞ e^{-cs} v_γ²(s + t(u)) ds.
  double melnikov_integral(double u) const;
  /// (u, v) at time t >= 0. Past the seed the linearised flow is used.
  std::array<double, 2> state_at_time(double t) const;

 private:
  friend SeparatrixTrajectory separatrix(const Reaction&, double, const SeparatrixOptions&);

  // Integration state in u: (v, τ, I) with τ the time left until the seed and
  // I the Melnikov integral.
  using Step = Dop853Step<3>;

  const Step& step_containing(double u) const;
  std::array<double, 3> state_at_u(double u) const;

  double c_ = 0.0;
  double theta_hl_ = 0.0;
  double theta_plus_ = 0.0;
  double v_hl_ = 0.0;
  double eps_ = 0.0;
  double u_seed_ = 0.0;
  double v_seed_ = 0.0;
  double I_seed_ = 0.0;
  double T_ = 0.0;
  double I_hl_ = 0.0;
  SaddleData saddle_;
  std::vector<OrbitSample> samples_;
  std::vector<Step> steps_;  // integration order: u decreasing
};

/// Integrates dv/du = c - F(u)/v backward from (θ₊ - ε, |λ₋| ε) to θ_hl.
/// Errors: OutOfRange (c < 0), SeedTooLarge, ToleranceFailure.
SeparatrixTrajectory separatrix(const Reaction& r, double c, const SeparatrixOptions& opt = {});
SeparatrixTrajectory separatrix(const ModelParams& p, double c, const SeparatrixOptions& opt = {});

/// v_c(θ_hl). Pure recomputation, no cache.
double v_at_hl(const Reaction& r, double c, const SeparatrixOptions& opt = {});
double v_at_hl(const ModelParams& p, double c, const SeparatrixOptions& opt = {});

/// ∂_c v_c(ū) from the Melnikov integral. θ_hl <= ū < θ₊.
/// Errors: OutOfRange, TailEstimateUnreliable, plus separatrix errors.
double melnikov_dvdc(const Reaction& r, double c, double u_bar, const SeparatrixOptions& opt = {});
double melnikov_dvdc(const ModelParams& p, double c, double u_bar,
                     const SeparatrixOptions& opt = {});

struct PortraitWindow {
  double u_min = 0.0;
  double u_max = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;
};

struct FieldSample {
  double u = 0.0;
  double v = 0.0;
  double du = 0.0;
  double dv = 0.0;
};

struct PhasePortrait {
  double c = 0.0;
  std::vector<FieldSample> field;
  // ∂𝓑: the vertical side [p1, p2], the bottom side [p1, p0] and the curved
  // side [p2, p0] on the c = 0 separatrix.
  std::vector<std::array<double, 2>> left_side;
  std::vector<std::array<double, 2>> bottom_side;
  std::vector<std::array<double, 2>> curved_side;
};

/// Direction field of X_c on an nu × nv grid, plus the boundary of 𝓑.
/// For a custom reaction, points outside its domain are skipped.
PhasePortrait phase_portrait(const Reaction& r, double c, const PortraitWindow& window, int nu,
                             int nv, int boundary_points = 64);

/// (u', v') of X_c.
inline std::array<double, 2> vector_field(const Reaction& r, double c, double u, double v) {
  return {v, c * v - r.restricted_unchecked(u)};
}

}  // namespace ignifront
