#include "pursuit/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pursuit::kinematics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double normalize_deg(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0.0) d += 360.0;
  return d;
}

void require_speed_pair(double pursuer_speed, double evader_speed) {
  if (!(evader_speed > 0.0)) {
    throw Error::domain("evader speed must be positive, got " + std::to_string(evader_speed));
  }
  if (!(evader_speed < pursuer_speed)) {
    throw Error::domain("evader speed " + std::to_string(evader_speed) +
                        " must be below pursuer speed " + std::to_string(pursuer_speed));
  }
}

// Internal leg description; richer than PursuitEvent so the sampler can
// reconstruct positions without re-deriving the hypothesis speed.
struct Leg {
  EventKind kind;
  double t0, t1;
  double rho0, rho1;
  double phi0;          // cumulative angle at leg start
  double sweep;         // radians, 0 for radial legs
  double hyp_speed;     // hypothesized evader speed governing the leg, 0 for closing
};

struct Simulation {
  double capture_time = 0.0;
  std::vector<Leg> legs;
};

// Runs the hypothesis sequence. `capture_index` is the position in `order` of
// the true speed (order.size() when every check is a full wrong-hypothesis
// turn, e.g. for matrix construction prefixes).
Simulation simulate(const PursuitScenario& s, const std::vector<std::size_t>& order,
                    std::size_t capture_index, double capture_sweep) {
  Simulation sim;
  double t = 0.0;
  double rho = s.initial_distance;
  double phi = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double v = s.speed_set[order[k]];
    if (k == 0) {
      const double dt = phase_one_time(s.initial_distance, s.pursuer_speed, v);
      sim.legs.push_back({EventKind::kClosing, t, t + dt, rho, v * (t + dt), phi, 0.0, 0.0});
      t += dt;
      rho = v * t;
    } else {
      const double rho_e = v * t;
      const double dt = realignment_time(t, rho, s.pursuer_speed, v);
      const EventKind kind =
          rho > rho_e ? EventKind::kRealignInward : EventKind::kRealignOutward;
      sim.legs.push_back({kind, t, t + dt, rho, v * (t + dt), phi, 0.0, 0.0});
      t += dt;
      rho = v * t;
    }
    const bool capture = k == capture_index;
    const double sweep = capture ? capture_sweep : kTwoPi;
    const double t_end = spiral_time_to_angle(t, s.pursuer_speed, v, sweep);
    sim.legs.push_back({capture ? EventKind::kCapture : EventKind::kSpiral, t, t_end, rho,
                        v * t_end, phi, sweep, v});
    t = t_end;
    rho = v * t;
    phi += sweep;
    if (capture) break;
  }
  sim.capture_time = t;
  return sim;
}

std::vector<PursuitEvent> to_events(const Simulation& sim) {
  std::vector<PursuitEvent> events;
  events.reserve(sim.legs.size());
  for (const Leg& leg : sim.legs) {
    events.push_back({leg.kind, leg.t0, leg.t1, leg.rho0, leg.rho1, leg.sweep});
  }
  return events;
}

std::size_t find_speed_index(const PursuitScenario& s, double speed) {
  for (std::size_t i = 0; i < s.speed_set.size(); ++i) {
    if (s.speed_set[i] == speed) return i;
  }
  throw Error::argument("evader speed " + std::to_string(speed) +
                        " is not in the scenario speed set");
}

void require_permutation(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.size() != n) {
    throw Error::argument("order has " + std::to_string(order.size()) + " entries, expected " +
                          std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (std::size_t idx : order) {
    if (idx >= n || seen[idx]) throw Error::argument("order is not a permutation of speed indices");
    seen[idx] = true;
  }
}

Simulation simulate_strategy(const PursuitScenario& s, const std::vector<std::size_t>& order,
                             const EvaderStrategy& evader) {
  validate_scenario(s);
  require_permutation(order, s.speed_set.size());
  const std::size_t true_idx = find_speed_index(s, evader.speed);
  std::size_t capture_pos = 0;
  while (order[capture_pos] != true_idx) ++capture_pos;
  const double sweep = deg_to_rad(normalize_deg(evader.direction_deg));
  return simulate(s, order, capture_pos, sweep);
}

}  // namespace

double phase_one_time(double distance, double pursuer_speed, double evader_speed) {
  require_speed_pair(pursuer_speed, evader_speed);
  if (distance < 0.0) throw Error::domain("initial distance must be nonnegative");
  return distance / (pursuer_speed + evader_speed);
}

double spiral_time_to_angle(double t_start, double pursuer_speed, double evader_speed,
                            double sweep) {
  require_speed_pair(pursuer_speed, evader_speed);
  if (t_start < 0.0) throw Error::domain("spiral start time must be nonnegative");
  if (sweep < 0.0 || sweep > kTwoPi) {
    throw Error::domain("spiral sweep must lie in [0, 2*pi], got " + std::to_string(sweep));
  }
  const double tangential =
      std::sqrt(pursuer_speed * pursuer_speed - evader_speed * evader_speed);
  return t_start * std::exp(evader_speed * sweep / tangential);
}

double known_target_interception_time(double distance, double pursuer_speed,
                                      double evader_speed, double direction_deg) {
  const double t1 = phase_one_time(distance, pursuer_speed, evader_speed);
  return spiral_time_to_angle(t1, pursuer_speed, evader_speed,
                              deg_to_rad(normalize_deg(direction_deg)));
}

double realignment_time(double t_now, double rho_pursuer, double pursuer_speed, double v_next) {
  require_speed_pair(pursuer_speed, v_next);
  if (rho_pursuer < 0.0) throw Error::domain("pursuer radius must be nonnegative");
  const double rho_evader = v_next * t_now;
  const double gap = std::abs(rho_pursuer - rho_evader);
  return rho_pursuer > rho_evader ? gap / (pursuer_speed + v_next)
                                  : gap / (pursuer_speed - v_next);
}

CaptureResult guaranteed_capture_time(const PursuitScenario& scenario,
                                      const std::vector<std::size_t>& order,
                                      const EvaderStrategy& evader) {
  const Simulation sim = simulate_strategy(scenario, order, evader);
  return {sim.capture_time, to_events(sim)};
}

CheckCostMatrix check_duration_matrix(const PursuitScenario& scenario) {
  validate_scenario(scenario);
  const std::size_t n = scenario.speed_set.size();
  CheckCostMatrix m;
  m.n = n;
  m.labels = scenario.speed_set;
  m.entries.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Simulation first = simulate(scenario, {i}, 1, 0.0);
    m.entries[i * n + i] = first.capture_time;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Simulation pair = simulate(scenario, {i, j}, 2, 0.0);
      m.entries[i * n + j] = pair.capture_time - first.capture_time;
    }
  }
  return m;
}

std::vector<TrajectorySample> sample_trajectory(const PursuitScenario& scenario,
                                                const std::vector<std::size_t>& order,
                                                const EvaderStrategy& evader, double dt) {
  if (!(dt > 0.0)) throw Error::domain("sample step dt must be positive");
  const Simulation sim = simulate_strategy(scenario, order, evader);

  auto position_at = [&](double t) -> TrajectorySample {
    // Find the leg containing t (legs are contiguous in time).
    const Leg* leg = &sim.legs.back();
    for (const Leg& l : sim.legs) {
      if (t <= l.t1) {
        leg = &l;
        break;
      }
    }
    double rho = 0.0;
    double phi = leg->phi0;
    switch (leg->kind) {
      case EventKind::kClosing:
        rho = leg->rho0 - scenario.pursuer_speed * (t - leg->t0);
        break;
      case EventKind::kRealignInward:
        rho = leg->rho0 - scenario.pursuer_speed * (t - leg->t0);
        break;
      case EventKind::kRealignOutward:
        rho = leg->rho0 + scenario.pursuer_speed * (t - leg->t0);
        break;
      case EventKind::kSpiral:
      case EventKind::kCapture: {
        const double v = leg->hyp_speed;
        const double tangential =
            std::sqrt(scenario.pursuer_speed * scenario.pursuer_speed - v * v);
        rho = v * t;
        phi = leg->phi0 + (tangential / v) * std::log(t / leg->t0);
        break;
      }
    }
    return {t, rho, phi, rho * std::cos(phi), rho * std::sin(phi)};
  };

  std::vector<TrajectorySample> samples;
  const double t_capture = sim.capture_time;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= t_capture) break;
    samples.push_back(position_at(t));
  }
  const Leg& last = sim.legs.back();
  samples.push_back({t_capture, last.rho1, last.phi0 + last.sweep,
                     last.rho1 * std::cos(last.phi0 + last.sweep),
                     last.rho1 * std::sin(last.phi0 + last.sweep)});
  return samples;
}

void validate_scenario(const PursuitScenario& scenario) {
  if (!(scenario.initial_distance > 0.0)) {
    throw Error::domain("scenario initial_distance must be positive");
  }
  if (!(scenario.pursuer_speed > 0.0)) {
    throw Error::domain("scenario pursuer_speed must be positive");
  }
  if (scenario.speed_set.empty()) throw Error::argument("scenario speed_set is empty");
  for (double v : scenario.speed_set) require_speed_pair(scenario.pursuer_speed, v);
  for (std::size_t i = 0; i < scenario.speed_set.size(); ++i) {
    for (std::size_t j = i + 1; j < scenario.speed_set.size(); ++j) {
      if (scenario.speed_set[i] == scenario.speed_set[j]) {
        throw Error::argument("scenario speed_set entries must be pairwise distinct");
      }
    }
  }
  for (double a : scenario.direction_set) {
    if (a < 0.0 || a >= 360.0) {
      throw Error::domain("scenario directions must lie in [0, 360) degrees");
    }
  }
}

}  // namespace pursuit::kinematics
