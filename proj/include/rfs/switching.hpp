#pragma once

#include <cstdint>
#include <vector>

#include "rfs/graph.hpp"

namespace rfs {

/// Indexed topology set split into connected and bad (possibly disconnected)
/// subsets.
struct TopologySet {
  std::vector<Digraph> graphs;
  std::vector<int> connected_set;
  std::vector<int> bad_set;
};

/// Piecewise-constant switching signal: graph `events[k].second` is active on
/// [events[k].first, events[k+1].first).
struct SwitchingSchedule {
  std::vector<std::pair<double, int>> events;  // (start time, graph index)
  double horizon = 0.0;
  double dwell_floor = 0.0;
  double ratio_bound = 0.0;  // pi in the activation-time condition
};

/// Outcome of validating a schedule against the dwell-time condition.
struct ScheduleReport {
  bool dwell_ok = false;
  double min_dwell = 0.0;
  double realized_ratio = 0.0;   // sup_t T_bad(t) / T_connected(t)
  bool ratio_ok = false;
  double tau_a_required = 0.0;   // ln(mu) / (eta_star - eta)
  double pi_max = 0.0;           // (alpha - eta_star) / (beta + eta_star)
  bool condition_ok = false;     // both scalar inequalities hold
};

/// Active graph index at time t (right-continuous, half-open intervals).
int sigma_at(const SwitchingSchedule& s, double t);

/// Checks dwell times, the realized bad/connected activation ratio, and the
/// two scalar inequalities tau_a > ln(mu)/(eta_star - eta),
/// pi < (alpha - eta_star)/(beta + eta_star).
ScheduleReport validate_schedule(const SwitchingSchedule& s, const TopologySet& ts,
                                 double eta_star, double alpha, double beta,
                                 double mu, double eta);

/// Deterministic-under-seed schedule whose realized activation ratio stays at
/// or below ratio_target; bad intervals are inserted greedily only once enough
/// connected time has accrued.
SwitchingSchedule generate_schedule(const TopologySet& ts, double horizon,
                                    double dwell_floor, double ratio_target,
                                    std::uint64_t seed);

/// Snaps every event time to the nearest multiple of dt (merging zero-length
/// intervals) so no integration step straddles an event.
void snap_to_grid(SwitchingSchedule& s, double dt);

}  // namespace rfs
