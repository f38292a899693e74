#include "ignifront/pde_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ignifront/error.hpp"

namespace ignifront {

namespace {

constexpr double kFloor = 1e-300;
constexpr double kRecenterDistance = 1.0;

void check_grid(double dx, double dt, double T) {
  if (!(dx > 0.0) || !std::isfinite(dx)) throw Error(ErrorCode::OutOfRange, "dx must be > 0");
  if (!(T >= 0.0) || !std::isfinite(T)) throw Error(ErrorCode::OutOfRange, "T must be >= 0");
  if (!(dt > 0.0) || dt > 0.5 * dx * dx) {
    throw Error(ErrorCode::StabilityViolated, "explicit scheme needs 0 < dt <= dx^2/2");
  }
}

Snapshot make_snapshot(double t, double x0, double dx, const std::vector<double>& th) {
  Snapshot s;
  s.t = t;
  s.theta = th;
  s.x.resize(th.size());
  for (std::size_t i = 0; i < th.size(); ++i) s.x[i] = x0 + dx * static_cast<double>(i);
  return s;
}

// Explicit step with mirrored (Neumann) ends; `source(i, θ_i)` returns dt·F.
template <class Source>
void ftcs_step(const std::vector<double>& th, std::vector<double>& next, double ratio,
               Source&& source) {
  const std::size_t m = th.size() - 1;
  next[0] = th[0] + ratio * 2.0 * (th[1] - th[0]) + source(0, th[0]);
  for (std::size_t i = 1; i < m; ++i) {
    next[i] = th[i] + ratio * (th[i + 1] - 2.0 * th[i] + th[i - 1]) + source(i, th[i]);
  }
  next[m] = th[m] + ratio * 2.0 * (th[m - 1] - th[m]) + source(m, th[m]);
}

// Fraction of the cell around node i where the linear reconstruction exceeds `level`.
double cell_fraction(const std::vector<double>& th, std::size_t i, double level) {
  const std::size_t n = th.size();
  const std::size_t lo = i > 0 ? i - 1 : i;
  const std::size_t hi = i + 1 < n ? i + 1 : i;
  const double slope = (th[hi] - th[lo]) / static_cast<double>(hi - lo);  // per cell
  if (slope == 0.0) return th[i] >= level ? 1.0 : 0.0;
  const double f = 0.5 + (th[i] - level) / std::abs(slope);
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace

double ignition_crossing(std::span<const double> x, std::span<const double> theta,
                         double theta_ig) {
  for (std::size_t i = 1; i < theta.size(); ++i) {
    if (theta[i] >= theta_ig && theta[i - 1] < theta_ig) {
      const double w = (theta_ig - theta[i - 1]) / (theta[i] - theta[i - 1]);
      return x[i - 1] + w * (x[i] - x[i - 1]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

LabFrameResult simulate_lab_frame(const Reaction& r, const SimulationConfig& cfg) {
  const double dx = cfg.dx;
  const double dt = cfg.time_step();
  check_grid(dx, dt, cfg.T);
  if (!(cfg.L > 0.0) || !(cfg.width > 0.0) || !(cfg.output_interval > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "L, width and output_interval must be > 0");
  }
  const ModelParams& p = r.params();
  const double tp = r.theta_plus();
  const auto n = static_cast<std::size_t>(std::llround(2.0 * cfg.L / dx)) + 1;
  if (n < 8) throw Error(ErrorCode::OutOfRange, "grid too coarse for the window");

  double x_left = -cfg.L;
  std::vector<double> th(n), next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_left + dx * static_cast<double>(i);
    th[i] = std::max(kFloor, 0.5 * tp * (1.0 + std::tanh(x / cfg.width)));
  }

  LabFrameResult out;
  out.min_theta = *std::min_element(th.begin(), th.end());
  out.max_theta = *std::max_element(th.begin(), th.end());
  const double ratio = dt / (dx * dx);
  const long total = static_cast<long>(std::ceil(cfg.T / dt - 1e-9));
  const long out_every = std::max(1L, std::lround(cfg.output_interval / dt));
  std::vector<double> xs(n);
  auto fill_x = [&] {
    for (std::size_t i = 0; i < n; ++i) xs[i] = x_left + dx * static_cast<double>(i);
  };
  fill_x();

  auto record = [&](double t) {
    const double xi = ignition_crossing(xs, th, p.theta_ig);
    if (!std::isfinite(xi)) {
      throw Error(ErrorCode::FrontLeftDomain, "no theta_ig crossing inside the window");
    }
    const double margin = 0.1 * cfg.L;
    if (!cfg.recenter && (xi < xs.front() + margin || xi > xs.back() - margin)) {
      throw Error(ErrorCode::FrontLeftDomain, "front reached the window boundary");
    }
    out.series.t.push_back(t);
    out.series.x_ig.push_back(xi);
    return xi;
  };

  std::vector<double> snaps(cfg.snapshot_times);
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  auto take_snapshots = [&](double t) {
    while (next_snap < snaps.size() && snaps[next_snap] <= t + 0.5 * dt) {
      out.snapshots.push_back(make_snapshot(t, x_left, dx, th));
      ++next_snap;
    }
  };

  record(0.0);
  take_snapshots(0.0);
  for (long step = 1; step <= total; ++step) {
    if (!cfg.reaction) {
      ftcs_step(th, next, ratio, [](std::size_t, double) { return 0.0; });
    } else if (cfg.sampling == SourceSampling::cell_fraction) {
      const double q = p.q;
      const double ig = p.theta_ig, hl = p.theta_hl;
      const std::size_t last = n - 1;
      ftcs_step(th, next, ratio, [&](std::size_t i, double u) {
        const double lo = std::min({th[i > 0 ? i - 1 : 0], u, th[i < last ? i + 1 : last]});
        const double hi = std::max({th[i > 0 ? i - 1 : 0], u, th[i < last ? i + 1 : last]});
        if (hi < ig) return 0.0;
        if (lo >= ig && hi < hl) return dt * q;
        const double f_ig = lo >= ig ? 1.0 : cell_fraction(th, i, ig);
        const double f_hl = hi < hl ? 0.0 : lo >= hl ? 1.0 : cell_fraction(th, i, hl);
        return dt * (q * f_ig + (r.restricted_unchecked(u) - q) * f_hl);
      });
    } else if (r.is_quartic()) {
      const double ig = p.theta_ig, hl = p.theta_hl, q = p.q, h = p.h, a = 1.0 + tp;
      ftcs_step(th, next, ratio, [=](std::size_t, double u) {
        if (u < ig) return 0.0;
        if (u < hl) return dt * q;
        const double b = 1.0 + u;
        return dt * h * (a - b) * (a + b) * (a * a + b * b);
      });
    } else {
      ftcs_step(th, next, ratio, [&](std::size_t, double u) { return dt * r.full(u); });
    }
    th.swap(next);
    const double t = static_cast<double>(step) * dt;
    if (step % out_every == 0 || step == total) {
      const auto [mn, mx] = std::minmax_element(th.begin(), th.end());
      out.min_theta = std::min(out.min_theta, *mn);
      out.max_theta = std::max(out.max_theta, *mx);
      const double xi = record(t);
      const double centre = x_left + cfg.L;
      if (cfg.recenter && std::abs(xi - centre) > kRecenterDistance) {
        const long k = std::lround((xi - centre) / dx);
        if (k < 0) {
          const auto s = static_cast<std::size_t>(-k);
          std::copy_backward(th.begin(), th.end() - static_cast<long>(s), th.end());
          std::fill(th.begin(), th.begin() + static_cast<long>(s), th[s]);
        } else {
          const auto s = static_cast<std::size_t>(k);
          std::copy(th.begin() + static_cast<long>(s), th.end(), th.begin());
          std::fill(th.end() - static_cast<long>(s), th.end(), th[n - 1 - s]);
        }
        x_left += static_cast<double>(k) * dx;
        fill_x();
      }
    }
    take_snapshots(t);
  }
  out.steps = total;
  out.final_state = make_snapshot(static_cast<double>(total) * dt, x_left, dx, th);
  return out;
}

LabFrameResult simulate_lab_frame(const ModelParams& p, const SimulationConfig& cfg) {
  return simulate_lab_frame(Reaction(p), cfg);
}

double measure_speed(const FrontSeries& series, double window) {
  if (!(window > 0.0 && window <= 0.5)) {
    throw Error(ErrorCode::InsufficientData, "window fraction must lie in (0, 0.5]");
  }
  const std::size_t n = series.t.size();
  if (n < 4 || series.x_ig.size() != n) {
    throw Error(ErrorCode::InsufficientData, "series too short");
  }
  const double t0 = series.t.front();
  const double t1 = series.t.back();
  const double start = t1 - window * (t1 - t0);
  double st = 0.0, sx = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (series.t[i] >= start) {
      st += series.t[i];
      sx += series.x_ig[i];
      ++m;
    }
  }
  if (m < 3) throw Error(ErrorCode::InsufficientData, "fewer than 3 points in the window");
  const double tm = st / static_cast<double>(m);
  const double xm = sx / static_cast<double>(m);
  double stt = 0.0, stx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (series.t[i] >= start) {
      const double dtm = series.t[i] - tm;
      stt += dtm * dtm;
      stx += dtm * (series.x_ig[i] - xm);
    }
  }
  if (!(stt > 0.0)) throw Error(ErrorCode::InsufficientData, "degenerate time window");
  return -stx / stt;
}

ComovingDrift comoving_drift(const FrontSolution& s, const ComovingConfig& cfg) {
  const double dx = cfg.dx;
  const double dt = cfg.time_step();
  check_grid(dx, dt, cfg.T);
  if (!(cfg.x_max > cfg.x_min)) throw Error(ErrorCode::OutOfRange, "need x_min < x_max");
  const auto n = static_cast<std::size_t>(std::llround((cfg.x_max - cfg.x_min) / dx)) + 1;
  if (n < 8) throw Error(ErrorCode::OutOfRange, "grid too coarse");
  const double c = s.c_star() + cfg.speed_offset;
  const Reaction& r = s.reaction();
  const double theta_ig = s.params().theta_ig;

  std::vector<double> xs(n), th(n), next(n), ref(n);
  ComovingDrift out;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = cfg.x_min + dx * static_cast<double>(i);
    const ProfilePoint pt = s.eval(xs[i]);
    ref[i] = pt.theta;
    out.max_theta_x = std::max(out.max_theta_x, pt.theta_x);
  }
  th = ref;
  next = ref;

  const double ratio = dt / (dx * dx);
  const double adv = c * dt / (2.0 * dx);
  const long total = static_cast<long>(std::ceil(cfg.T / dt - 1e-9));
  for (long step = 0; step < total; ++step) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      next[i] = th[i] + ratio * (th[i + 1] - 2.0 * th[i] + th[i - 1]) -
                adv * (th[i + 1] - th[i - 1]) + dt * r.full(th[i]);
    }
    th.swap(next);
  }

  const double crossing = ignition_crossing(xs, th, theta_ig);
  if (!std::isfinite(crossing)) {
    throw Error(ErrorCode::FrontLeftDomain, "no theta_ig crossing after evolution");
  }
  out.offset = crossing;
  for (std::size_t i = 0; i < n; ++i) {
    out.raw_drift = std::max(out.raw_drift, std::abs(th[i] - ref[i]));
    const double xr = xs[i] - crossing;
    if (xr < cfg.x_min || xr > cfg.x_max) continue;
    out.drift = std::max(out.drift, std::abs(th[i] - s.eval(xr).theta));
  }
  out.final_state.t = static_cast<double>(total) * dt;
  out.final_state.x = xs;
  out.final_state.theta = th;
  return out;
}

double profile_mismatch(const FrontSolution& s, const Snapshot& snap) {
  const double crossing = ignition_crossing(snap.x, snap.theta, s.params().theta_ig);
  if (!std::isfinite(crossing)) {
    throw Error(ErrorCode::FrontLeftDomain, "snapshot has no theta_ig crossing");
  }
  const double lo = -10.0 / s.c_star();
  const double hi = s.R_star() + 10.0 / std::abs(s.lambda_minus());
  double worst = 0.0;
  for (std::size_t i = 0; i < snap.x.size(); ++i) {
    const double xr = snap.x[i] - crossing;
    if (xr < lo || xr > hi) continue;
    worst = std::max(worst, std::abs(snap.theta[i] - s.eval(xr).theta));
  }
  return worst;
}

}  // namespace ignifront
