#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rfs/switching.hpp"

using namespace rfs;

namespace {

TopologySet two_graphs() {
  TopologySet ts;
  Digraph g;
  g.adjacency = Matrix::Zero(2, 2);
  g.adjacency(1, 0) = 1.0;
  Vector b(2);
  b << 1, 0;
  g.leader_links = {b};
  ts.graphs.push_back(g);
  Digraph bad;
  bad.adjacency = Matrix::Zero(2, 2);
  bad.leader_links = {Vector::Zero(2)};
  ts.graphs.push_back(bad);
  ts.connected_set = {0};
  ts.bad_set = {1};
  return ts;
}

}  // namespace

TEST_CASE("sigma_at is right-continuous with half-open intervals") {
  SwitchingSchedule s;
  s.events = {{0.0, 0}, {1.0, 1}, {2.5, 0}};
  s.horizon = 4.0;
  CHECK(sigma_at(s, 0.0) == 0);
  CHECK(sigma_at(s, 0.999) == 0);
  CHECK(sigma_at(s, 1.0) == 1);
  CHECK(sigma_at(s, 2.499) == 1);
  CHECK(sigma_at(s, 2.5) == 0);
  CHECK(sigma_at(s, 4.0) == 0);
  CHECK_THROWS_AS(sigma_at(s, -0.1), ConfigError);
  CHECK_THROWS_AS(sigma_at(s, 4.1), ConfigError);
}

TEST_CASE("generated schedules respect the dwell floor and activation ratio") {
  const auto ts = two_graphs();
  const auto s = generate_schedule(ts, 20.0, 0.2, 0.05, 7);
  REQUIRE(!s.events.empty());
  CHECK(s.events.front().first == doctest::Approx(0.0));

  double t_bad = 0.0, t_con = 0.0, min_dwell = 1e9, worst_ratio = 0.0;
  for (size_t k = 0; k < s.events.size(); ++k) {
    const double end = k + 1 < s.events.size() ? s.events[k + 1].first : s.horizon;
    const double len = end - s.events[k].first;
    min_dwell = std::min(min_dwell, len);
    (s.events[k].second == 1 ? t_bad : t_con) += len;
    if (t_con > 0.0) worst_ratio = std::max(worst_ratio, t_bad / t_con);
  }
  CHECK(min_dwell >= 0.2 - 1e-12);
  CHECK(worst_ratio <= 0.05 + 1e-12);
  CHECK(t_bad > 0.0);  // bad graphs do get activated
}

TEST_CASE("schedule generation is deterministic under a seed") {
  const auto ts = two_graphs();
  const auto a = generate_schedule(ts, 20.0, 0.2, 0.05, 123);
  const auto b = generate_schedule(ts, 20.0, 0.2, 0.05, 123);
  const auto c = generate_schedule(ts, 20.0, 0.2, 0.05, 124);
  REQUIRE(a.events.size() == b.events.size());
  for (size_t k = 0; k < a.events.size(); ++k) {
    CHECK(a.events[k] == b.events[k]);
  }
  CHECK(a.events != c.events);
}

TEST_CASE("snap_to_grid aligns every event with the step grid") {
  SwitchingSchedule s;
  s.events = {{0.0, 0}, {0.30007, 1}, {0.59991, 0}};
  s.horizon = 1.0;
  snap_to_grid(s, 1e-3);
  for (const auto& [t, gi] : s.events) {
    const double steps = t / 1e-3;
    CHECK(std::abs(steps - std::round(steps)) < 1e-9);
  }
  CHECK(s.events[1].first == doctest::Approx(0.3));
  CHECK(s.events[2].first == doctest::Approx(0.6));
}

TEST_CASE("snap_to_grid collapses zero-length intervals") {
  SwitchingSchedule s;
  s.events = {{0.0, 0}, {0.10004, 1}, {0.10006, 0}};
  s.horizon = 1.0;
  snap_to_grid(s, 1e-3);
  REQUIRE(s.events.size() == 2);
  CHECK(s.events[1].second == 0);  // later assignment wins at the merged time
}

TEST_CASE("validate_schedule audits dwell, ratio, and the scalar conditions") {
  const auto ts = two_graphs();
  auto s = generate_schedule(ts, 20.0, 0.2, 0.05, 7);

  // Healthy parameters: alpha > eta_star > eta > 0 and pi below the cap.
  auto rep = validate_schedule(s, ts, /*eta_star=*/0.1, /*alpha=*/0.5,
                               /*beta=*/5.5, /*mu=*/1.0, /*eta=*/0.05);
  CHECK(rep.dwell_ok);
  CHECK(rep.ratio_ok);
  CHECK(rep.condition_ok);
  CHECK(rep.tau_a_required == doctest::Approx(0.0));  // mu = 1
  CHECK(rep.pi_max == doctest::Approx((0.5 - 0.1) / (5.5 + 0.1)));

  // Oversized ratio bound breaks the second scalar inequality.
  s.ratio_bound = 0.5;
  rep = validate_schedule(s, ts, 0.1, 0.5, 50.0, 1.0, 0.05);
  CHECK_FALSE(rep.condition_ok);
}
