#include "ignifront/phase_plane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ignifront/error.hpp"

namespace ignifront {

SaddleData saddle_eigen(const Reaction& r, double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorCode::OutOfRange, "speed must be >= 0");
  const double tp = r.theta_plus();
  const double fp = r.derivative(tp);
  const double disc = std::sqrt(c * c - 4.0 * fp);
  SaddleData s;
  s.u = tp;
  s.v = 0.0;
  s.lambda_plus = 0.5 * (c + disc);
  s.lambda_minus = 2.0 * fp / (c + disc);  // (c - disc)/2 without cancellation
  s.stable_dir = {1.0, s.lambda_minus};
  s.unstable_dir = {1.0, s.lambda_plus};
  return s;
}

SaddleData saddle_eigen(const ModelParams& p, double c) { return saddle_eigen(Reaction(p), c); }

const SeparatrixTrajectory::Step& SeparatrixTrajectory::step_containing(double u) const {
  if (steps_.empty()) throw Error(ErrorCode::OutOfRange, "trajectory has no dense output");
  auto it = std::partition_point(steps_.begin(), steps_.end(),
                                 [u](const Step& s) { return s.x_new() > u; });
  if (it == steps_.end()) --it;
  return *it;
}

std::array<double, 3> SeparatrixTrajectory::state_at_u(double u) const {
  return step_containing(u).dense(u);
}

double SeparatrixTrajectory::v_of_u(double u) const {
  if (!(u >= theta_hl_ && u <= theta_plus_)) {
    throw Error(ErrorCode::OutOfRange, "v_c(u) needs theta_hl <= u <= theta_plus");
  }
  if (u >= u_seed_) return -saddle_.lambda_minus * (theta_plus_ - u);
  if (u == theta_hl_) return v_hl_;
  return state_at_u(u)[0];
}

double SeparatrixTrajectory::time_of_u(double u) const {
  if (!(u >= theta_hl_ && u <= theta_plus_)) {
    throw Error(ErrorCode::OutOfRange, "t(u) needs theta_hl <= u <= theta_plus");
  }
  if (u >= theta_plus_) return std::numeric_limits<double>::infinity();
  if (u >= u_seed_) return T_ + std::log(eps_ / (theta_plus_ - u)) / -saddle_.lambda_minus;
  if (u == theta_hl_) return 0.0;
  return T_ - state_at_u(u)[1];
}

double SeparatrixTrajectory::melnikov_integral(double u) const {
  if (!(u >= theta_hl_ && u <= theta_plus_)) {
    throw Error(ErrorCode::OutOfRange, "Melnikov integral needs theta_hl <= u <= theta_plus");
  }
  if (u >= u_seed_) {
    const double v = v_of_u(u);
    return v * v / (saddle_.lambda_plus - saddle_.lambda_minus);
  }
  if (u == theta_hl_) return I_hl_;
  return state_at_u(u)[2];
}

std::array<double, 2> SeparatrixTrajectory::state_at_time(double t) const {
  if (!(t >= 0.0)) throw Error(ErrorCode::OutOfRange, "state_at_time needs t >= 0");
  const double lm = saddle_.lambda_minus;
  if (t >= T_) {
    const double d = eps_ * std::exp(lm * (t - T_));
    return {theta_plus_ - d, -lm * d};
  }
  const double tau = T_ - t;
  auto it = std::partition_point(steps_.begin(), steps_.end(),
                                 [tau](const Step& s) { return s.y_new[1] < tau; });
  if (it == steps_.end()) --it;
  const Step& s = *it;
  // τ grows as u decreases; bracket [x_new, x_old] maps to [τ_new, τ_old].
  double lo = s.x_new();
  double hi = s.x_old;
  const double tau_lo = s.y_new[1];
  const double tau_hi = s.y_old[1];
  double u = tau_lo == tau_hi ? hi : lo + (hi - lo) * (tau_lo - tau) / (tau_lo - tau_hi);
  for (int it_n = 0; it_n < 60; ++it_n) {
    const auto y = s.dense(u);
    const double g = y[1] - tau;  // decreasing in u
    if (g > 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    double next = u + g * y[0];
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(u) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(u)) {
      u = next;
      break;
    }
    u = next;
  }
  return {u, s.dense_component(0, u)};
}

SeparatrixTrajectory separatrix(const Reaction& r, double c, const SeparatrixOptions& opt) {
  const SaddleData saddle = saddle_eigen(r, c);
  const double hl = r.params().theta_hl;
  const double tp = r.theta_plus();
  const double eps = opt.eps_seed_rel * (tp - hl);
  if (!(eps > 0.0) || !(eps < tp - hl)) {
    throw Error(ErrorCode::SeedTooLarge, "seed offset must lie in (0, theta_plus - theta_hl)");
  }

  SeparatrixTrajectory tr;
  tr.c_ = c;
  tr.theta_hl_ = hl;
  tr.theta_plus_ = tp;
  tr.eps_ = eps;
  tr.saddle_ = saddle;
  tr.u_seed_ = tp - eps;
  tr.v_seed_ = -saddle.lambda_minus * eps;
  tr.I_seed_ = tr.v_seed_ * tr.v_seed_ / (saddle.lambda_plus - saddle.lambda_minus);

  auto rhs = [&r, c](double u, const std::array<double, 3>& y, std::array<double, 3>& dy) {
    const double v = y[0];
    dy[0] = c - r.restricted_unchecked(u) / v;
    dy[1] = -1.0 / v;
    dy[2] = c * y[2] / v - v;
  };

  struct Raw {
    double u, v, tau;
  };
  std::vector<Raw> raw;
  raw.push_back({tr.u_seed_, tr.v_seed_, 0.0});
  bool lost = false;
  Dop853Options dopt;
  dopt.rtol = opt.rtol;
  dopt.atol = opt.atol;
  dopt.dense = opt.dense;
  dopt.h_initial = 1e-2 * eps;
  const std::array<double, 3> y0{tr.v_seed_, 0.0, tr.I_seed_};
  const auto res = dop853_integrate<3>(rhs, tr.u_seed_, y0, hl, dopt, [&](const auto& step) {
    if (!(step.y_new[0] > 0.0)) {
      lost = true;
      return false;
    }
    raw.push_back({step.x_new(), step.y_new[0], step.y_new[1]});
    if (opt.dense) tr.steps_.push_back(step);
    return true;
  });
  if (lost) {
    throw Error(ErrorCode::SeedTooLarge,
                "separatrix left v > 0 before reaching theta_hl at c=" + std::to_string(c));
  }
  if (res.status != Dop853Status::success) {
    throw Error(ErrorCode::ToleranceFailure, "separatrix integration failed (step-size underflow)");
  }

  tr.v_hl_ = res.y[0];
  tr.T_ = res.y[1];
  tr.I_hl_ = res.y[2];
  raw.back().u = hl;
  tr.samples_.reserve(raw.size());
  for (auto it = raw.rbegin(); it != raw.rend(); ++it) {
    tr.samples_.push_back({tr.T_ - it->tau, it->u, it->v});
  }
  return tr;
}

SeparatrixTrajectory separatrix(const ModelParams& p, double c, const SeparatrixOptions& opt) {
  return separatrix(Reaction(p), c, opt);
}

double v_at_hl(const Reaction& r, double c, const SeparatrixOptions& opt) {
  SeparatrixOptions o = opt;
  o.dense = false;
  return separatrix(r, c, o).v_hl();
}

double v_at_hl(const ModelParams& p, double c, const SeparatrixOptions& opt) {
  return v_at_hl(Reaction(p), c, opt);
}

double melnikov_dvdc(const Reaction& r, double c, double u_bar, const SeparatrixOptions& opt) {
  const double hl = r.params().theta_hl;
  const double tp = r.theta_plus();
  if (!(u_bar >= hl && u_bar < tp)) {
    throw Error(ErrorCode::OutOfRange, "Melnikov derivative needs theta_hl <= u_bar < theta_plus");
  }
  SeparatrixOptions o = opt;
  o.dense = u_bar != hl;
  const SeparatrixTrajectory tr = separatrix(r, c, o);
  const OrbitSample& end = tr.samples().back();
  const double lm = std::abs(tr.saddle().lambda_minus);
  const double eps = tr.epsilon_seed();
  if (tp - end.u > 10.0 * eps || end.v > 10.0 * eps * std::max(1.0, lm)) {
    throw Error(ErrorCode::TailEstimateUnreliable, "terminal point too far from the saddle");
  }
  return -tr.melnikov_integral(u_bar) / tr.v_of_u(u_bar);
}

double melnikov_dvdc(const ModelParams& p, double c, double u_bar, const SeparatrixOptions& opt) {
  return melnikov_dvdc(Reaction(p), c, u_bar, opt);
}

PhasePortrait phase_portrait(const Reaction& r, double c, const PortraitWindow& window, int nu,
                             int nv, int boundary_points) {
  PhasePortrait out;
  out.c = c;
  const bool skip_outside = !r.is_quartic();
  for (int i = 0; i < nu; ++i) {
    const double u =
        nu == 1 ? window.u_min : window.u_min + (window.u_max - window.u_min) * i / (nu - 1);
    if (skip_outside && !r.domain().contains(u)) continue;
    for (int j = 0; j < nv; ++j) {
      const double v =
          nv == 1 ? window.v_min : window.v_min + (window.v_max - window.v_min) * j / (nv - 1);
      const auto f = vector_field(r, c, u, v);
      out.field.push_back({u, v, f[0], f[1]});
    }
  }

  const double hl = r.params().theta_hl;
  const double tp = r.theta_plus();
  const double v2 = r.hamiltonian_speed(hl);
  const int n = std::max(2, boundary_points);
  for (int k = 0; k < n; ++k) {
    const double s = double(k) / (n - 1);
    out.left_side.push_back({hl, s * v2});
    const double u = hl + s * (tp - hl);
    out.bottom_side.push_back({u, 0.0});
    out.curved_side.push_back({u, r.hamiltonian_speed(u)});
  }
  return out;
}

}  // namespace ignifront
