#include "rfs/switching.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace rfs {

namespace {

bool is_bad(const TopologySet& ts, int gi) {
  return std::find(ts.bad_set.begin(), ts.bad_set.end(), gi) != ts.bad_set.end();
}

}  // namespace

int sigma_at(const SwitchingSchedule& s, double t) {
  if (s.events.empty() || t < s.events.front().first || t > s.horizon) {
    throw ConfigError("sigma_at: time outside schedule horizon");
  }
  // Last event with start time <= t.
  auto it = std::upper_bound(
      s.events.begin(), s.events.end(), t,
      [](double value, const std::pair<double, int>& ev) { return value < ev.first; });
  return std::prev(it)->second;
}

ScheduleReport validate_schedule(const SwitchingSchedule& s, const TopologySet& ts,
                                 double eta_star, double alpha, double beta,
                                 double mu, double eta) {
  if (s.events.empty() || s.horizon <= 0.0) {
    throw ConfigError("validate_schedule: degenerate schedule");
  }
  ScheduleReport rep;

  rep.min_dwell = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < s.events.size(); ++k) {
    const double end = (k + 1 < s.events.size()) ? s.events[k + 1].first : s.horizon;
    rep.min_dwell = std::min(rep.min_dwell, end - s.events[k].first);
  }
  rep.dwell_ok = rep.min_dwell >= s.dwell_floor - 1e-12;

  // Running supremum of T_bad / T_connected, evaluated at interval ends.
  double t_bad = 0.0;
  double t_con = 0.0;
  rep.realized_ratio = 0.0;
  for (size_t k = 0; k < s.events.size(); ++k) {
    const double end = (k + 1 < s.events.size()) ? s.events[k + 1].first : s.horizon;
    const double len = end - s.events[k].first;
    (is_bad(ts, s.events[k].second) ? t_bad : t_con) += len;
    if (t_con > 0.0) {
      rep.realized_ratio = std::max(rep.realized_ratio, t_bad / t_con);
    } else if (t_bad > 0.0) {
      rep.realized_ratio = std::numeric_limits<double>::infinity();
    }
  }
  rep.ratio_ok = rep.realized_ratio <= s.ratio_bound + 1e-12;

  rep.tau_a_required = std::log(mu) / (eta_star - eta);
  rep.pi_max = (alpha - eta_star) / (beta + eta_star);
  rep.condition_ok = (alpha > eta_star) && (eta_star > eta) && (eta > 0.0) &&
                     (s.ratio_bound < rep.pi_max);
  return rep;
}

SwitchingSchedule generate_schedule(const TopologySet& ts, double horizon,
                                    double dwell_floor, double ratio_target,
                                    std::uint64_t seed) {
  if (ts.connected_set.empty()) {
    throw ConfigError("generate_schedule: no connected graphs available");
  }
  if (ratio_target >= 1.0 || dwell_floor <= 0.0) {
    throw ConfigError("generate_schedule: infeasible parameters");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);

  SwitchingSchedule s;
  s.horizon = horizon;
  s.dwell_floor = dwell_floor;
  s.ratio_bound = ratio_target;

  double t = 0.0;
  double t_bad = 0.0;
  double t_con = 0.0;
  size_t ci = 0;
  size_t bi = 0;
  while (t < horizon) {
    double dwell = dwell_floor + 1.5 * dwell_floor * jitter(rng);
    // Absorb a remainder shorter than the floor into the final interval.
    if (horizon - (t + dwell) < dwell_floor) dwell = horizon - t;
    // Insert a bad interval only when it keeps the running ratio at or under
    // target; otherwise accrue connected time.
    const bool want_bad = !ts.bad_set.empty() && ratio_target > 0.0 &&
                          t_con > 0.0 && (t_bad + dwell) / t_con <= ratio_target;
    if (want_bad) {
      s.events.emplace_back(t, ts.bad_set[bi % ts.bad_set.size()]);
      ++bi;
      t_bad += dwell;
    } else {
      s.events.emplace_back(t, ts.connected_set[ci % ts.connected_set.size()]);
      ++ci;
      t_con += dwell;
    }
    t += dwell;
  }
  return s;
}

void snap_to_grid(SwitchingSchedule& s, double dt) {
  std::vector<std::pair<double, int>> snapped;
  for (auto& [t, gi] : s.events) {
    const double ts = std::round(t / dt) * dt;
    if (!snapped.empty() && std::abs(snapped.back().first - ts) < 0.5 * dt) {
      snapped.back().second = gi;  // zero-length interval collapsed
    } else {
      snapped.emplace_back(ts, gi);
    }
  }
  s.events = std::move(snapped);
}

}  // namespace rfs
