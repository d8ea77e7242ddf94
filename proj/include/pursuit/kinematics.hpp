#pragma once

#include <cstddef>
#include <vector>

#include "pursuit/error.hpp"

namespace pursuit::kinematics {

// Pursuit geometry in a polar frame: the pole sits at the point where the
// evader was last seen, the polar axis points at the pursuer's start, and the
// evader flees radially at a constant (but initially unknown) speed. The
// pursuer closes radially, then rides an interception spiral whose radial
// speed matches the hypothesized evader speed. All angles in the public API
// are degrees; internal math is radians. Quantities are unit-agnostic as long
// as lengths, speeds and times are mutually consistent.

struct PursuitScenario {
  double initial_distance = 0.0;       // pursuer-to-pole distance at detection
  double pursuer_speed = 0.0;          // maximum pursuer speed
  std::vector<double> speed_set;       // candidate evader speeds, all < pursuer_speed
  std::vector<double> direction_set;   // candidate evader bearings, degrees in [0, 360)
};

struct EvaderStrategy {
  double direction_deg = 0.0;
  double speed = 0.0;
};

enum class EventKind { kClosing, kSpiral, kRealignInward, kRealignOutward, kCapture };

// One leg of the pursuer's trajectory. Radial legs have angle_swept == 0;
// spiral legs sweep at most one full turn.
struct PursuitEvent {
  EventKind kind = EventKind::kClosing;
  double t_start = 0.0;
  double t_end = 0.0;
  double radius_start = 0.0;
  double radius_end = 0.0;
  double angle_swept = 0.0;  // radians
};

struct TrajectorySample {
  double t = 0.0;
  double rho = 0.0;
  double phi = 0.0;  // cumulative polar angle, radians (not wrapped)
  double x = 0.0;
  double y = 0.0;
};

struct CaptureResult {
  double time = 0.0;
  std::vector<PursuitEvent> events;
};

// Check-duration matrix for the speed-ordering problem. Entry (i,j), i != j,
// is the duration of a full check of speed j (realignment plus one spiral
// turn) taken immediately after a completed first check of speed i; entry
// (i,i) is the duration of checking speed i first (radial closing plus one
// turn).
struct CheckCostMatrix {
  std::size_t n = 0;
  std::vector<double> entries;  // row-major n*n
  std::vector<double> labels;   // the speed values

  double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

/// Time for the radial closing leg: both agents reach radius v*t at t = D/(Vp+v).
double phase_one_time(double distance, double pursuer_speed, double evader_speed);

/// Time at which a spiral started at t_start has swept `sweep` radians:
/// t_start * exp(v * sweep / sqrt(Vp^2 - v^2)). sweep must lie in [0, 2*pi].
double spiral_time_to_angle(double t_start, double pursuer_speed, double evader_speed,
                            double sweep);

/// Interception time for a target with known speed and bearing: one closing
/// leg plus one spiral swept to the bearing. The bearing is normalized into
/// [0, 360) degrees.
double known_target_interception_time(double distance, double pursuer_speed,
                                      double evader_speed, double direction_deg);

/// Radial time increment that re-equalizes the pursuer's radius with the
/// hypothesized evader radius v_next * t_now. Closing inward divides by
/// (Vp + v_next), chasing outward by (Vp - v_next).
double realignment_time(double t_now, double rho_pursuer, double pursuer_speed,
                        double v_next);

/// Total time to capture an evader playing `evader` when the pursuer checks
/// the hypothesized speeds in `order` (indices into scenario.speed_set). A
/// wrong hypothesis costs a full spiral turn; the true hypothesis is captured
/// at a sweep equal to the evader's bearing. Returns the elapsed time and the
/// per-leg event log; the last event has kind kCapture.
CaptureResult guaranteed_capture_time(const PursuitScenario& scenario,
                                      const std::vector<std::size_t>& order,
                                      const EvaderStrategy& evader);

/// Check-duration matrix for all ordered speed pairs of the scenario.
CheckCostMatrix check_duration_matrix(const PursuitScenario& scenario);

/// Pursuer positions sampled at t = 0, dt, 2dt, ... plus the exact capture
/// instant. Radial legs hold phi constant; spiral legs follow rho = v*t with
/// phi advancing along the spiral law.
std::vector<TrajectorySample> sample_trajectory(const PursuitScenario& scenario,
                                                const std::vector<std::size_t>& order,
                                                const EvaderStrategy& evader, double dt);

/// Throws Error::domain / Error::argument when the scenario violates its
/// invariants (nonpositive distance, speeds outside (0, Vp), duplicates).
void validate_scenario(const PursuitScenario& scenario);

}  // namespace pursuit::kinematics
