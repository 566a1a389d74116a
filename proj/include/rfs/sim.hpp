#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rfs/config.hpp"
#include "rfs/protocol.hpp"

namespace rfs {

/// Topology-set audit: per-connected-graph scaling certificates and the
/// spectral constants feeding the estimator design and the scalar dwell-time
/// conditions. Exchange matrices are the summed per-leader ones, which for a
/// single leader reduce to the usual H.
struct TopologyAnalysis {
  std::vector<ScalingCertificate> certificates;  // one per connected graph
  std::vector<ExchangeMatrix> bad_exchange;      // one per bad graph
  SpectralConstants sc;
  double epsilon = 0.0;  // resolved attenuation level for the design
};

TopologyAnalysis analyze_topologies(const ExperimentConfig& c);

/// Full offline design: estimator certificate plus one certified gain set per
/// agent, honoring explicit overrides from the config.
GainsDocument design_gains(const ExperimentConfig& c);

/// Explicit schedule from the config, or a generated one; snapped to the dt
/// grid either way.
SwitchingSchedule build_schedule(const ExperimentConfig& c);

/// Least-squares exponential fit v(t) ~ prefactor * exp(-rate * t) over the
/// tail half of the series (log-domain). Zeros truncate the fit window.
struct DecayFit {
  double rate = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;
};
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& v);

/// One closed-loop run, with derived series sampled on the decimated grid.
struct RunResult {
  std::string mode;
  double dt = 0.0;

  std::vector<double> t;
  std::vector<std::vector<Vector>> y;      // [sample][agent]
  std::vector<std::vector<Vector>> e;      // formation tracking errors
  std::vector<std::vector<double>> xi_norm;        // ||zeta_i - weighted leader||
  std::vector<std::vector<double>> xtilde_norm;    // ||x_i - xhat_i||
  std::vector<std::vector<double>> ytilde_a_norm;  // ||y^a_i - yhat^a_i||
  std::vector<double> E;  // (1/N) sqrt(sum ||e_i||^2)

  bool diverged = false;
  double blowup_time = -1.0;

  double formation_identity_max = 0.0;  // max ||e_i - C_i xbar_i|| along the run
  DecayFit xi_decay;

  double final_max_xi() const;
  double final_max_xtilde() const;
  double final_max_ytilde_a() const;
  double final_max_e() const;
};

/// Integrates the closed loop with classical RK4 at fixed dt. The active graph
/// is constant within a step (events are snapped to the grid). In standard
/// mode the attack estimator and the adaptive compensation are disabled.
/// Throws NonFiniteError on divergence in resilient mode; in standard mode the
/// blow-up is recorded and the run returns early.
RunResult run(const ExperimentConfig& c, const GainsDocument& gains,
              const std::string& mode);

void write_csv(const RunResult& r, std::ostream& os);
Json run_summary(const RunResult& r);

}  // namespace rfs
