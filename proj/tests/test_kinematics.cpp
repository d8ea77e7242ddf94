#include "pursuit/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace pursuit;
using namespace pursuit::kinematics;
using testutil::close_rel;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Independent oracle: the closing/spiral/realignment chain evaluated step by
// step from the closed forms, kept separate from the library's simulation.
struct Chain {
  double vp;
  double t = 0.0;
  double rho = 0.0;

  explicit Chain(double distance, double pursuer_speed) : vp(pursuer_speed), rho(distance) {}

  void close_in(double v) {
    t = rho / (vp + v);
    rho = v * t;
  }
  void realign(double v) {
    const double rho_e = v * t;
    t += rho > rho_e ? (rho - rho_e) / (vp + v) : (rho_e - rho) / (vp - v);
    rho = v * t;
  }
  void spiral(double v, double sweep) {
    t *= std::exp(v * sweep / std::sqrt(vp * vp - v * v));
    rho = v * t;
  }
};

const PursuitScenario kThreeSpeed{200.0, 100.0, {8.0, 56.0, 78.0}, {23.0, 137.0, 182.0}};

}  // namespace

TEST_SUITE("kinematics") {

TEST_CASE("phase one closing time") {
  CHECK(phase_one_time(200.0, 100.0, 8.0) == 200.0 / 108.0);
  CHECK(phase_one_time(0.0, 100.0, 8.0) == 0.0);
  CHECK(phase_one_time(50.0, 80.0, 4.0) == 50.0 / 84.0);
  CHECK(close_rel(phase_one_time(200.0, 100.0, 8.0), 1.85185, 1e-5));

  CHECK_THROWS_AS(phase_one_time(10.0, 100.0, 100.0), Error);
  CHECK_THROWS_AS(phase_one_time(10.0, 100.0, 120.0), Error);
  CHECK_THROWS_AS(phase_one_time(10.0, 100.0, 0.0), Error);
  CHECK_THROWS_AS(phase_one_time(-1.0, 100.0, 8.0), Error);
}

TEST_CASE("phase one meeting identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.1, 1e4);
  std::uniform_real_distribution<double> s(1.0, 300.0);
  std::uniform_real_distribution<double> r(0.01, 0.99);
  for (int k = 0; k < 1000; ++k) {
    const double distance = d(rng);
    const double vp = s(rng);
    const double v = r(rng) * vp;
    const double t1 = phase_one_time(distance, vp, v);
    CHECK(close_rel(vp * t1 + v * t1, distance, 1e-12));
  }
}

TEST_CASE("spiral time to angle") {
  const double t1 = 200.0 / 108.0;
  CHECK(spiral_time_to_angle(t1, 100.0, 8.0, 0.0) == t1);

  const double full_turn = t1 * std::exp(8.0 * kTwoPi / std::sqrt(100.0 * 100.0 - 8.0 * 8.0));
  CHECK(spiral_time_to_angle(t1, 100.0, 8.0, kTwoPi) == full_turn);
  CHECK(close_rel(full_turn, 3.0663, 1e-4));

  const double entry = spiral_time_to_angle(t1, 100.0, 8.0, rad(23.0));
  CHECK(close_rel(entry, 1.9125, 1e-4));
  CHECK(close_rel(entry, 1.9, 0.02));  // printed at two significant figures

  CHECK_THROWS_AS(spiral_time_to_angle(t1, 100.0, 8.0, -0.1), Error);
  CHECK_THROWS_AS(spiral_time_to_angle(t1, 100.0, 8.0, kTwoPi + 0.1), Error);
  CHECK_THROWS_AS(spiral_time_to_angle(t1, 100.0, 100.0, 1.0), Error);
}

TEST_CASE("known target interception time matches printed entries") {
  CHECK(close_rel(known_target_interception_time(100.0, 74.0, 23.0, 23.0), 1.18, 0.01));
  CHECK(close_rel(known_target_interception_time(200.0, 178.0, 50.0, 137.0), 1.77, 0.01));
  CHECK(close_rel(known_target_interception_time(30.0, 60.0, 7.0, 7.0), 0.4543, 1e-3));
  CHECK(close_rel(known_target_interception_time(30.0, 60.0, 7.0, 7.0), 0.46, 0.02));

  // bearings are normalized into [0, 360)
  CHECK(known_target_interception_time(100.0, 74.0, 23.0, 383.0) ==
        known_target_interception_time(100.0, 74.0, 23.0, 23.0));
  CHECK(known_target_interception_time(100.0, 74.0, 23.0, -337.0) ==
        known_target_interception_time(100.0, 74.0, 23.0, 23.0));
}

TEST_CASE("realignment time") {
  const double dt = realignment_time(3.0665, 24.53, 100.0, 56.0);
  CHECK(dt == (56.0 * 3.0665 - 24.53) / 44.0);  // outward chase
  CHECK(close_rel(dt, 3.3455, 1e-3));

  CHECK(realignment_time(7.25, 56.0 * 7.25, 100.0, 56.0) == 0.0);
  CHECK(realignment_time(2.0, 300.0, 100.0, 10.0) == 280.0 / 110.0);  // inward closing
  CHECK_THROWS_AS(realignment_time(1.0, 10.0, 100.0, 100.0), Error);
}

TEST_CASE("guaranteed capture reproduces the three-speed entries") {
  Chain oracle(200.0, 100.0);
  oracle.close_in(8.0);
  oracle.spiral(8.0, rad(23.0));

  auto r = guaranteed_capture_time(kThreeSpeed, {0, 1, 2}, {23.0, 8.0});
  CHECK(r.time == oracle.t);
  CHECK(close_rel(r.time, 1.9, 0.02));

  Chain o2(200.0, 100.0);
  o2.close_in(8.0);
  o2.spiral(8.0, kTwoPi);
  o2.realign(56.0);
  o2.spiral(56.0, rad(23.0));
  auto r2 = guaranteed_capture_time(kThreeSpeed, {0, 1, 2}, {23.0, 56.0});
  CHECK(r2.time == o2.t);
  CHECK(close_rel(r2.time, 8.4, 0.02));

  Chain o3(200.0, 100.0);
  o3.close_in(8.0);
  o3.spiral(8.0, kTwoPi);
  o3.realign(56.0);
  o3.spiral(56.0, kTwoPi);
  o3.realign(78.0);
  o3.spiral(78.0, rad(23.0));
  auto r3 = guaranteed_capture_time(kThreeSpeed, {0, 1, 2}, {23.0, 78.0});
  CHECK(r3.time == o3.t);
  CHECK(close_rel(r3.time, 1478.0, 0.02));
}

TEST_CASE("zero bearing with the true speed first collapses to the closing leg") {
  auto r = guaranteed_capture_time(kThreeSpeed, {1, 0, 2}, {0.0, 56.0});
  CHECK(r.time == phase_one_time(200.0, 100.0, 56.0));
  CHECK(r.events.size() == 2);
  CHECK(r.events.back().kind == EventKind::kCapture);
  CHECK(r.events.back().angle_swept == 0.0);
}

TEST_CASE("capture event log is consistent") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 200; ++k) {
    const auto s = testutil::random_scenario(rng);
    const auto order = testutil::random_order(rng, s.speed_set.size());
    std::uniform_real_distribution<double> dir(0.0, 360.0);
    std::uniform_int_distribution<std::size_t> pick(0, s.speed_set.size() - 1);
    const EvaderStrategy evader{dir(rng), s.speed_set[pick(rng)]};
    const auto r = guaranteed_capture_time(s, order, evader);

    CHECK(r.events.back().kind == EventKind::kCapture);
    CHECK(r.events.back().angle_swept <= kTwoPi);
    double total = 0.0;
    for (const auto& e : r.events) {
      CHECK(e.t_end >= e.t_start);
      CHECK(e.radius_start >= 0.0);
      CHECK(e.angle_swept >= 0.0);
      CHECK(e.angle_swept <= kTwoPi);
      total += e.t_end - e.t_start;
    }
    CHECK(close_rel(total, r.time, 1e-9));
  }
}

TEST_CASE("events before the true hypothesis ignore the bearing") {
  const auto a = guaranteed_capture_time(kThreeSpeed, {2, 0, 1}, {23.0, 56.0});
  const auto b = guaranteed_capture_time(kThreeSpeed, {2, 0, 1}, {310.0, 56.0});
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i + 1 < a.events.size(); ++i) {
    CHECK(a.events[i].t_start == b.events[i].t_start);
    CHECK(a.events[i].t_end == b.events[i].t_end);
    CHECK(a.events[i].radius_start == b.events[i].radius_start);
    CHECK(a.events[i].radius_end == b.events[i].radius_end);
    CHECK(a.events[i].angle_swept == b.events[i].angle_swept);
    CHECK(a.events[i].kind == b.events[i].kind);
  }
}

TEST_CASE("capture time grows with the bearing") {
  for (std::size_t pos = 0; pos < 3; ++pos) {
    double prev = -1.0;
    const std::vector<std::size_t> order{2, 0, 1};
    for (double dir = 10.0; dir < 360.0; dir += 25.0) {
      const auto r = guaranteed_capture_time(kThreeSpeed, order,
                                             {dir, kThreeSpeed.speed_set[order[pos]]});
      CHECK(r.time > prev);
      prev = r.time;
    }
  }
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(guaranteed_capture_time(kThreeSpeed, {0, 1}, {23.0, 8.0}), Error);
  CHECK_THROWS_AS(guaranteed_capture_time(kThreeSpeed, {0, 0, 2}, {23.0, 8.0}), Error);
  CHECK_THROWS_AS(guaranteed_capture_time(kThreeSpeed, {0, 1, 2}, {23.0, 9.0}), Error);

  PursuitScenario bad = kThreeSpeed;
  bad.speed_set.push_back(130.0);
  std::vector<std::size_t> order{0, 1, 2, 3};
  CHECK_THROWS_AS(guaranteed_capture_time(bad, order, {23.0, 8.0}), Error);
}

TEST_CASE("check duration matrix") {
  const PursuitScenario single{200.0, 100.0, {8.0}, {}};
  const auto m1 = check_duration_matrix(single);
  REQUIRE(m1.n == 1);
  Chain first(200.0, 100.0);
  first.close_in(8.0);
  first.spiral(8.0, kTwoPi);
  CHECK(m1.at(0, 0) == first.t);
  CHECK(close_rel(m1.at(0, 0), 3.0663, 1e-4));

  const auto m = check_duration_matrix(kThreeSpeed);
  REQUIRE(m.n == 3);
  CHECK(m.at(0, 0) == first.t);

  // entry (0,1): the 56-check duration right after a completed first 8-check
  Chain pair(200.0, 100.0);
  pair.close_in(8.0);
  pair.spiral(8.0, kTwoPi);
  const double after_first = pair.t;
  pair.realign(56.0);
  pair.spiral(56.0, kTwoPi);
  CHECK(m.at(0, 1) == pair.t - after_first);

  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.n; ++j) CHECK(m.at(i, j) > 0.0);
  }
}

TEST_CASE("trajectory sampling") {
  const PursuitScenario single{200.0, 100.0, {8.0}, {}};

  SUBCASE("coarse step keeps only start and capture") {
    const auto samples = sample_trajectory(single, {0}, {0.0, 8.0}, 100.0);
    REQUIRE(samples.size() == 2);
    CHECK(samples.front().t == 0.0);
    CHECK(samples.front().rho == 200.0);
    CHECK(samples.back().t == phase_one_time(200.0, 100.0, 8.0));
    CHECK(close_rel(samples.back().rho, 8.0 * 200.0 / 108.0, 1e-12));
    CHECK(close_rel(samples.back().rho, 14.8148, 1e-4));
  }

  SUBCASE("samples are consistent polar/cartesian pairs on the radial law") {
    const auto r = guaranteed_capture_time(single, {0}, {200.0, 8.0});
    const double spiral_start = r.events.back().t_start;
    const auto samples = sample_trajectory(single, {0}, {200.0, 8.0}, r.time / 512.0);
    for (const auto& s : samples) {
      CHECK(close_rel(s.x, s.rho * std::cos(s.phi), 1e-12));
      CHECK(close_rel(s.y, s.rho * std::sin(s.phi), 1e-12));
      if (s.t > spiral_start) CHECK(s.rho == 8.0 * s.t);
    }
  }

  SUBCASE("finite differences recover the pursuer speed on spiral legs") {
    const auto r = guaranteed_capture_time(kThreeSpeed, {0, 1, 2}, {200.0, 56.0});
    const double dt = r.time / 2048.0;
    const auto samples = sample_trajectory(kThreeSpeed, {0, 1, 2}, {200.0, 56.0}, dt);
    std::vector<std::pair<double, double>> spiral_spans;
    for (const auto& e : r.events) {
      if (e.kind == EventKind::kSpiral || e.kind == EventKind::kCapture) {
        spiral_spans.emplace_back(e.t_start, e.t_end);
      }
    }
    int checked = 0;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
      const auto& a = samples[i - 1];
      const auto& b = samples[i];
      const auto& c = samples[i + 1];
      if (c.t - a.t > 2.5 * dt) continue;  // straddles the exact capture sample
      const bool interior = [&] {
        for (auto [t0, t1] : spiral_spans) {
          if (a.t >= t0 && c.t <= t1) return true;
        }
        return false;
      }();
      if (!interior || b.t < 20.0 * dt) continue;
      const double rho_dot = (c.rho - a.rho) / (c.t - a.t);
      const double phi_dot = (c.phi - a.phi) / (c.t - a.t);
      const double speed = std::hypot(rho_dot, b.rho * phi_dot);
      CHECK(close_rel(speed, 100.0, 1e-3));
      ++checked;
    }
    CHECK(checked > 100);
  }

  CHECK_THROWS_AS(sample_trajectory(single, {0}, {0.0, 8.0}, 0.0), Error);
}

}  // TEST_SUITE
