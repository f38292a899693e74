#pragma once

// Explicit finite-difference simulations of θ_t = θ_xx + F_full(θ) used to
// cross-check the traveling front.

#include <span>
#include <vector>

#include "ignifront/front_solver.hpp"
#include "ignifront/model.hpp"

namespace ignifront {

enum class SourceSampling {
  pointwise,      // F_full(θ_i) at each node
  cell_fraction,  // Heaviside factors replaced by the fraction of the cell above each threshold
};

struct SimulationConfig {
  double L = 12.0;   // half-length of the computational window
  double dx = 5e-3;
  double dt = 0.0;   // 0 selects 0.4 dx²
  double T = 8.0;
  double width = 0.25;         // tanh smoothing of the initial step
  double window = 0.5;         // measurement window fraction
  double output_interval = 0.01;
  bool recenter = true;        // shift the window to keep the front centred
  bool reaction = true;        // false: pure heat equation
  SourceSampling sampling = SourceSampling::pointwise;
  std::vector<double> snapshot_times;

  double time_step() const { return dt > 0.0 ? dt : 0.4 * dx * dx; }
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> theta;
};

struct FrontSeries {
  std::vector<double> t;
  std::vector<double> x_ig;
};

struct LabFrameResult {
  FrontSeries series;
  Snapshot final_state;
  std::vector<Snapshot> snapshots;
  double min_theta = 0.0;
  double max_theta = 0.0;
  long steps = 0;
};

/// Throws StabilityViolated if dt > dx²/2, OutOfRange for malformed sizes,
/// FrontLeftDomain if the θ_ig level leaves the window.
LabFrameResult simulate_lab_frame(const Reaction& r, const SimulationConfig& cfg);
LabFrameResult simulate_lab_frame(const ModelParams& p, const SimulationConfig& cfg);

/// -slope of the least-squares line through the final `window` fraction of
/// the series. Throws InsufficientData.
double measure_speed(const FrontSeries& series, double window = 0.5);

struct ComovingConfig {
  double x_min = -7.5;
  double x_max = 7.5;
  double dx = 5e-3;
  double dt = 0.0;  // 0 selects 0.4 dx²
  double T = 10.0;
  double speed_offset = 0.0;  // frame speed is c* + speed_offset

  double time_step() const { return dt > 0.0 ? dt : 0.4 * dx * dx; }
};

struct ComovingDrift {
  double drift = 0.0;      // max |θ(x,T) - θ*(x - offset)|
  double offset = 0.0;     // translation of the θ_ig crossing
  double raw_drift = 0.0;  // max |θ(x,T) - θ*(x)|
  double max_theta_x = 0.0;
  Snapshot final_state;
};

/// Evolves θ* under θ_t = θ_xx - c θ_x + F_full(θ) with Dirichlet data from
/// θ* and reports the drift after re-alignment at the ignition level.
ComovingDrift comoving_drift(const FrontSolution& s, const ComovingConfig& cfg);

/// Location of the first θ_ig crossing, linearly interpolated.
/// Returns NaN when there is none.
double ignition_crossing(std::span<const double> x, std::span<const double> theta,
                         double theta_ig);

/// max |θ_sim(x) - θ*(x - shift)| over the snapshot after translating its
/// ignition crossing to x = 0.
double profile_mismatch(const FrontSolution& s, const Snapshot& snap);

}  // namespace ignifront
