#include "rfs/config.hpp"

#include <fstream>

namespace rfs {

namespace {

const Json& require(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing required field '" + key + "'");
  return j.at(key);
}

AttackProfile::Kind kind_from_string(const std::string& s) {
  if (s == "none") return AttackProfile::Kind::None;
  if (s == "ramp") return AttackProfile::Kind::Ramp;
  if (s == "sinusoid") return AttackProfile::Kind::Sinusoid;
  if (s == "table") return AttackProfile::Kind::Table;
  throw ConfigError("unknown attack kind '" + s + "'");
}

std::string kind_to_string(AttackProfile::Kind k) {
  switch (k) {
    case AttackProfile::Kind::Ramp: return "ramp";
    case AttackProfile::Kind::Sinusoid: return "sinusoid";
    case AttackProfile::Kind::Table: return "table";
    default: return "none";
  }
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ConfigError("expected a nested array for a matrix");
  }
  const int r = static_cast<int>(j.size());
  const int c = static_cast<int>(j.front().size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(j.at(i).size()) != c) {
      throw ConfigError("ragged matrix rows");
    }
    for (int k = 0; k < c; ++k) m(i, k) = j.at(i).at(k).get<double>();
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array for a vector");
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
  return v;
}

ExperimentConfig parse_config(const Json& j) {
  ExperimentConfig c;
  try {
    c.mode = j.value("mode", std::string("resilient"));
    if (c.mode != "resilient" && c.mode != "standard" && c.mode != "both") {
      throw ConfigError("mode must be resilient, standard, or both");
    }

    for (const auto& ja : require(j, "agents")) {
      LinearPlant p;
      p.agent_id = ja.value("id", static_cast<int>(c.plants.size()) + 1);
      p.A = matrix_from_json(require(ja, "A"));
      p.B = matrix_from_json(require(ja, "B"));
      p.C = matrix_from_json(require(ja, "C"));
      if (p.A.rows() != p.A.cols() || p.B.rows() != p.A.rows() ||
          p.C.cols() != p.A.rows()) {
        throw ConfigError("agent " + std::to_string(p.agent_id) +
                          ": inconsistent state dimensions");
      }
      c.plants.push_back(p);
    }
    if (c.plants.empty()) throw ConfigError("no agents given");

    const Json& jl = require(j, "leader");
    c.leader.A0 = matrix_from_json(require(jl, "A0"));
    c.leader.C0 = matrix_from_json(require(jl, "C0"));
    if (jl.contains("initial_states")) {
      for (const auto& js : jl.at("initial_states")) {
        c.leader_initials.push_back(vector_from_json(js));
      }
    } else {
      c.leader_initials.push_back(vector_from_json(require(jl, "x0")));
    }
    if (jl.contains("gamma")) {
      c.gamma = jl.at("gamma").get<std::vector<double>>();
    } else {
      c.gamma.assign(c.leader_initials.size(),
                     1.0 / static_cast<double>(c.leader_initials.size()));
    }
    if (c.gamma.size() != c.leader_initials.size()) {
      throw ConfigError("gamma size does not match the leader count");
    }
    double gsum = 0.0;
    for (double g : c.gamma) gsum += g;
    if (std::abs(gsum - 1.0) > 1e-9) {
      throw ConfigError("convex weights gamma must sum to 1");
    }
    for (const auto& v : c.leader_initials) {
      if (v.size() != c.leader.r()) {
        throw ConfigError("leader initial state dimension mismatch");
      }
    }

    const Json& jf = require(j, "formation");
    c.A_h = matrix_from_json(require(jf, "A_h"));
    c.C_h = matrix_from_json(require(jf, "C_h"));
    for (const auto& jh : require(jf, "h0")) c.h0.push_back(vector_from_json(jh));
    if (static_cast<int>(c.h0.size()) != c.n_agents()) {
      throw ConfigError("formation h0 must have one entry per agent");
    }

    const Json& jt = require(j, "topologies");
    for (const auto& jg : require(jt, "graphs")) {
      Digraph g;
      g.adjacency = matrix_from_json(require(jg, "adjacency"));
      for (const auto& jb : require(jg, "leader_links")) {
        g.leader_links.push_back(vector_from_json(jb));
      }
      if (g.adjacency.rows() != c.n_agents() ||
          g.n_leaders() != c.n_leaders()) {
        throw ConfigError("graph dimensions do not match agent/leader counts");
      }
      c.topologies.graphs.push_back(g);
    }
    c.topologies.connected_set = jt.value("connected_set", std::vector<int>{});
    c.topologies.bad_set = jt.value("bad_set", std::vector<int>{});
    if (c.topologies.connected_set.empty()) {
      throw ConfigError("connected_set must not be empty");
    }
    for (int idx : c.topologies.connected_set) {
      if (idx < 0 || idx >= static_cast<int>(c.topologies.graphs.size())) {
        throw ConfigError("connected_set index out of range");
      }
    }
    for (int idx : c.topologies.bad_set) {
      if (idx < 0 || idx >= static_cast<int>(c.topologies.graphs.size())) {
        throw ConfigError("bad_set index out of range");
      }
    }

    const Json& js = require(j, "schedule");
    if (js.contains("events")) {
      c.schedule_explicit = true;
      for (const auto& je : js.at("events")) {
        c.schedule.events.emplace_back(je.at(0).get<double>(),
                                       je.at(1).get<int>());
      }
      c.schedule.horizon = js.value("horizon", 20.0);
      c.schedule.dwell_floor = js.value("dwell_floor", 0.2);
      c.schedule.ratio_bound = js.value("ratio_target", 0.05);
    }
    c.dwell_floor = js.value("dwell_floor", 0.2);
    c.ratio_target = js.value("ratio_target", 0.05);
    c.schedule_seed = js.value("seed", std::uint64_t{7});

    if (j.contains("attacks")) {
      for (const auto& ja : j.at("attacks")) {
        AttackProfile p;
        p.agent_id = require(ja, "agent").get<int>();
        p.kind = kind_from_string(ja.value("kind", std::string("none")));
        p.active = ja.value("active", true);
        p.start_time = ja.value("start_time", 0.0);
        if (ja.contains("slope")) p.slope = vector_from_json(ja.at("slope"));
        if (ja.contains("amplitude")) {
          p.amplitude = vector_from_json(ja.at("amplitude"));
        }
        p.omega = ja.value("omega", 0.0);
        p.phase = ja.value("phase", 0.0);
        if (ja.contains("table_times")) {
          p.table_times = ja.at("table_times").get<std::vector<double>>();
          for (const auto& jv : require(ja, "table_values")) {
            p.table_values.push_back(vector_from_json(jv));
          }
        }
        c.attacks.push_back(p);
      }
    }

    const int pdim = c.leader.p();
    const Json jg = j.value("gains", Json::object());
    c.R0 = jg.contains("R0") ? matrix_from_json(jg.at("R0"))
                             : Matrix(Matrix::Identity(pdim, pdim));
    c.Q0 = jg.contains("Q0")
               ? matrix_from_json(jg.at("Q0"))
               : Matrix(4.0 * Matrix::Identity(c.leader.r(), c.leader.r()));
    c.epsilon_factor = jg.value("epsilon_factor", 4.0);
    c.epsilon_absolute = jg.value("epsilon_absolute", 1.0);
    c.hurwitz_margin = jg.value("hurwitz_margin", 0.5);
    c.observer_margin = jg.value("observer_margin", 0.5);
    auto read_overrides = [&](const char* key, std::map<int, Matrix>& out) {
      if (!jg.contains(key)) return;
      for (const auto& [sid, jm] : jg.at(key).items()) {
        out[std::stoi(sid)] = matrix_from_json(jm);
      }
    };
    read_overrides("K1", c.K1_explicit);
    read_overrides("L", c.L_explicit);
    read_overrides("M", c.M_explicit);

    const Json jp = j.value("protocol", Json::object());
    c.vartheta0 = jp.contains("vartheta0")
                      ? vector_from_json(jp.at("vartheta0"))
                      : Vector(Vector::Ones(pdim));
    if ((c.vartheta0.array() <= 0.0).any()) {
      throw ConfigError("vartheta0 entries must be strictly positive");
    }
    c.rho_realization = jp.value("rho_realization", std::string("certified"));
    if (c.rho_realization != "certified" && c.rho_realization != "structured" &&
        c.rho_realization != "projected") {
      throw ConfigError("rho_realization must be certified, structured, or projected");
    }

    const Json ji = j.value("integrator", Json::object());
    c.dt = ji.value("dt", 1e-3);
    c.horizon = ji.value("horizon", 20.0);
    c.init_seed = ji.value("seed", std::uint64_t{42});
    c.csv_decimation = ji.value("csv_decimation", 10);
    if (c.dt <= 0.0 || c.horizon <= 0.0 || c.csv_decimation < 1) {
      throw ConfigError("integrator parameters out of range");
    }

    if (j.contains("initial_states")) {
      const Json& jis = j.at("initial_states");
      auto read_list = [&](const char* key, std::vector<Vector>& out) {
        if (!jis.contains(key)) return;
        for (const auto& jv : jis.at(key)) out.push_back(vector_from_json(jv));
        if (static_cast<int>(out.size()) != c.n_agents()) {
          throw ConfigError(std::string("initial_states.") + key +
                            " must have one entry per agent");
        }
      };
      read_list("x", c.x_initial);
      read_list("xhat", c.xhat_initial);
      read_list("zeta", c.zeta_initial);
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return parse_config(j);
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["mode"] = c.mode;
  j["agents"] = Json::array();
  for (const auto& p : c.plants) {
    j["agents"].push_back({{"id", p.agent_id},
                           {"A", matrix_to_json(p.A)},
                           {"B", matrix_to_json(p.B)},
                           {"C", matrix_to_json(p.C)}});
  }
  Json jl;
  jl["A0"] = matrix_to_json(c.leader.A0);
  jl["C0"] = matrix_to_json(c.leader.C0);
  jl["initial_states"] = Json::array();
  for (const auto& v : c.leader_initials) {
    jl["initial_states"].push_back(vector_to_json(v));
  }
  jl["gamma"] = c.gamma;
  j["leader"] = jl;
  Json jf;
  jf["A_h"] = matrix_to_json(c.A_h);
  jf["C_h"] = matrix_to_json(c.C_h);
  jf["h0"] = Json::array();
  for (const auto& v : c.h0) jf["h0"].push_back(vector_to_json(v));
  j["formation"] = jf;
  Json jt;
  jt["graphs"] = Json::array();
  for (const auto& g : c.topologies.graphs) {
    Json jg;
    jg["adjacency"] = matrix_to_json(g.adjacency);
    jg["leader_links"] = Json::array();
    for (const auto& b : g.leader_links) {
      jg["leader_links"].push_back(vector_to_json(b));
    }
    jt["graphs"].push_back(jg);
  }
  jt["connected_set"] = c.topologies.connected_set;
  jt["bad_set"] = c.topologies.bad_set;
  j["topologies"] = jt;
  Json js;
  if (c.schedule_explicit) {
    js["events"] = Json::array();
    for (const auto& [t, gi] : c.schedule.events) {
      js["events"].push_back(Json::array({t, gi}));
    }
    js["horizon"] = c.schedule.horizon;
  }
  js["dwell_floor"] = c.dwell_floor;
  js["ratio_target"] = c.ratio_target;
  js["seed"] = c.schedule_seed;
  j["schedule"] = js;
  j["attacks"] = Json::array();
  for (const auto& a : c.attacks) {
    Json ja;
    ja["agent"] = a.agent_id;
    ja["kind"] = kind_to_string(a.kind);
    ja["active"] = a.active;
    ja["start_time"] = a.start_time;
    if (a.slope.size() > 0) ja["slope"] = vector_to_json(a.slope);
    if (a.amplitude.size() > 0) {
      ja["amplitude"] = vector_to_json(a.amplitude);
      ja["omega"] = a.omega;
      ja["phase"] = a.phase;
    }
    if (!a.table_times.empty()) {
      ja["table_times"] = a.table_times;
      ja["table_values"] = Json::array();
      for (const auto& v : a.table_values) {
        ja["table_values"].push_back(vector_to_json(v));
      }
    }
    j["attacks"].push_back(ja);
  }
  Json jg;
  jg["R0"] = matrix_to_json(c.R0);
  jg["Q0"] = matrix_to_json(c.Q0);
  jg["epsilon_factor"] = c.epsilon_factor;
  jg["epsilon_absolute"] = c.epsilon_absolute;
  jg["hurwitz_margin"] = c.hurwitz_margin;
  jg["observer_margin"] = c.observer_margin;
  auto write_overrides = [&](const char* key, const std::map<int, Matrix>& m) {
    if (m.empty()) return;
    Json jo = Json::object();
    for (const auto& [id, mat] : m) jo[std::to_string(id)] = matrix_to_json(mat);
    jg[key] = jo;
  };
  write_overrides("K1", c.K1_explicit);
  write_overrides("L", c.L_explicit);
  write_overrides("M", c.M_explicit);
  j["gains"] = jg;
  j["protocol"] = {{"vartheta0", vector_to_json(c.vartheta0)},
                   {"rho_realization", c.rho_realization}};
  j["integrator"] = {{"dt", c.dt},
                     {"horizon", c.horizon},
                     {"seed", c.init_seed},
                     {"csv_decimation", c.csv_decimation}};
  if (!c.x_initial.empty() || !c.xhat_initial.empty() || !c.zeta_initial.empty()) {
    Json jis;
    auto write_list = [&](const char* key, const std::vector<Vector>& v) {
      if (v.empty()) return;
      Json a = Json::array();
      for (const auto& x : v) a.push_back(vector_to_json(x));
      jis[key] = a;
    };
    write_list("x", c.x_initial);
    write_list("xhat", c.xhat_initial);
    write_list("zeta", c.zeta_initial);
    j["initial_states"] = jis;
  }
  return j;
}

namespace {

Json estimator_to_json(const EstimatorGainCertificate& e) {
  return {{"K0", matrix_to_json(e.K0)},     {"P0", matrix_to_json(e.P0)},
          {"R0", matrix_to_json(e.R0)},     {"Q0", matrix_to_json(e.Q0)},
          {"epsilon", e.epsilon},           {"kappa0", e.kappa0},
          {"alpha", e.alpha},               {"beta", e.beta},
          {"margin1", e.margin1},           {"margin2", e.margin2},
          {"interval_lo", e.interval_lo},   {"interval_hi", e.interval_hi}};
}

EstimatorGainCertificate estimator_from_json(const Json& j) {
  EstimatorGainCertificate e;
  e.K0 = matrix_from_json(j.at("K0"));
  e.P0 = matrix_from_json(j.at("P0"));
  e.R0 = matrix_from_json(j.at("R0"));
  e.Q0 = matrix_from_json(j.at("Q0"));
  e.epsilon = j.at("epsilon").get<double>();
  e.kappa0 = j.at("kappa0").get<double>();
  e.alpha = j.at("alpha").get<double>();
  e.beta = j.at("beta").get<double>();
  e.margin1 = j.at("margin1").get<double>();
  e.margin2 = j.at("margin2").get<double>();
  e.interval_lo = j.at("interval_lo").get<double>();
  e.interval_hi = j.value("interval_hi", 0.0);
  return e;
}

Json agent_gains_to_json(const AgentGainSet& g) {
  return {{"K1", matrix_to_json(g.K1)},
          {"K2", matrix_to_json(g.K2)},
          {"K3", matrix_to_json(g.K3)},
          {"L", matrix_to_json(g.L)},
          {"M", matrix_to_json(g.M)},
          {"A_rho", matrix_to_json(g.A_rho)},
          {"B_rho", matrix_to_json(g.B_rho)},
          {"Cbar", matrix_to_json(g.Cbar)},
          {"P_rho", matrix_to_json(g.P_rho)},
          {"Q_rho", matrix_to_json(g.Q_rho)},
          {"map_certified", matrix_to_json(g.map_certified)},
          {"map_structured", matrix_to_json(g.map_structured)},
          {"map_projected", matrix_to_json(g.map_projected)},
          {"closed_loop_abscissa", g.closed_loop_abscissa},
          {"observer_abscissa", g.observer_abscissa}};
}

AgentGainSet agent_gains_from_json(const Json& j) {
  AgentGainSet g;
  g.K1 = matrix_from_json(j.at("K1"));
  g.K2 = matrix_from_json(j.at("K2"));
  g.K3 = matrix_from_json(j.at("K3"));
  g.L = matrix_from_json(j.at("L"));
  g.M = matrix_from_json(j.at("M"));
  g.A_rho = matrix_from_json(j.at("A_rho"));
  g.B_rho = matrix_from_json(j.at("B_rho"));
  g.Cbar = matrix_from_json(j.at("Cbar"));
  g.P_rho = matrix_from_json(j.at("P_rho"));
  g.Q_rho = matrix_from_json(j.at("Q_rho"));
  g.map_certified = matrix_from_json(j.at("map_certified"));
  g.map_structured = matrix_from_json(j.at("map_structured"));
  g.map_projected = matrix_from_json(j.at("map_projected"));
  g.closed_loop_abscissa = j.at("closed_loop_abscissa").get<double>();
  g.observer_abscissa = j.at("observer_abscissa").get<double>();
  return g;
}

}  // namespace

Json gains_to_json(const GainsDocument& g) {
  Json j;
  j["estimator"] = estimator_to_json(g.estimator);
  j["agents"] = Json::array();
  for (const auto& a : g.agents) j["agents"].push_back(agent_gains_to_json(a));
  j["epsilon"] = g.epsilon;
  j["lambda_m"] = g.lambda_m;
  j["sigma_m"] = g.sigma_m;
  j["mu"] = g.mu;
  return j;
}

GainsDocument gains_from_json(const Json& j) {
  GainsDocument g;
  try {
    g.estimator = estimator_from_json(j.at("estimator"));
    for (const auto& ja : j.at("agents")) {
      g.agents.push_back(agent_gains_from_json(ja));
    }
    g.epsilon = j.value("epsilon", 0.0);
    g.lambda_m = j.value("lambda_m", 0.0);
    g.sigma_m = j.value("sigma_m", 0.0);
    g.mu = j.value("mu", 1.0);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("gains parse failure: ") + e.what());
  }
  return g;
}

GainsDocument load_gains(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open gains file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return gains_from_json(j);
}

std::string preset_path(const std::string& name) {
  if (name != "case1" && name != "case2") {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return std::string(RFS_CONFIG_DIR) + "/" + name + ".json";
}

}  // namespace rfs
