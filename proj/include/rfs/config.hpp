#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "rfs/attack.hpp"
#include "rfs/plant.hpp"
#include "rfs/switching.hpp"
#include "rfs/synthesis.hpp"

namespace rfs {

using Json = nlohmann::json;

/// Fully resolved experiment description. Single-leader tracking is the
/// M = 1 special case of the containment setup, so leaders are always stored
/// as a list with convex weights.
struct ExperimentConfig {
  std::string mode = "resilient";  // resilient | standard | both

  std::vector<LinearPlant> plants;
  LeaderModel leader;
  std::vector<Vector> leader_initials;  // one r-vector per leader
  std::vector<double> gamma;            // convex weights, one per leader

  Matrix A_h;  // formation generator
  Matrix C_h;
  std::vector<Vector> h0;  // per-agent formation initial states

  TopologySet topologies;

  // Either an explicit event list or generator parameters.
  bool schedule_explicit = false;
  SwitchingSchedule schedule;  // filled when explicit
  double dwell_floor = 0.2;
  double ratio_target = 0.05;
  std::uint64_t schedule_seed = 7;

  std::vector<AttackProfile> attacks;

  // Gain-design parameters; explicit per-agent overrides win over auto-design.
  Matrix R0, Q0;
  double epsilon_factor = 4.0;    // epsilon = factor * sigma_m when sigma_m > 0
  double epsilon_absolute = 1.0;  // used when sigma_m = 0
  double hurwitz_margin = 0.5;
  double observer_margin = 0.5;
  std::map<int, Matrix> K1_explicit, L_explicit, M_explicit;

  // Protocol parameters.
  Vector vartheta0;                          // boundary-layer decay rates
  std::string rho_realization = "certified"; // certified | structured | projected

  // Integrator.
  double dt = 1e-3;
  double horizon = 20.0;
  std::uint64_t init_seed = 42;  // seeds x(0), xhat(0) when not explicit
  int csv_decimation = 10;

  // Optional explicit initial states (per agent); empty => seeded random.
  std::vector<Vector> x_initial, xhat_initial, zeta_initial;

  int n_agents() const { return static_cast<int>(plants.size()); }
  int n_leaders() const { return static_cast<int>(leader_initials.size()); }
};

/// Designed gains plus their certificates, serializable as one JSON document.
struct GainsDocument {
  EstimatorGainCertificate estimator;
  std::vector<AgentGainSet> agents;
  double epsilon = 0.0;       // the epsilon the estimator was designed with
  double lambda_m = 0.0;      // spectral constants the certificate relied on
  double sigma_m = 0.0;
  double mu = 1.0;
};

/// JSON (de)serialization helpers. Matrices are row-major nested arrays.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// Parses a config document; throws ConfigError on malformed input.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);
Json config_to_json(const ExperimentConfig& c);

Json gains_to_json(const GainsDocument& g);
GainsDocument gains_from_json(const Json& j);
GainsDocument load_gains(const std::string& path);

/// Path of a committed preset config ("case1" or "case2").
std::string preset_path(const std::string& name);

}  // namespace rfs
