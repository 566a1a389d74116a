#include "rfs/sim.hpp"

#include <cmath>
#include <iomanip>
#include <random>

#include "rfs/log.hpp"

namespace rfs {

TopologyAnalysis analyze_topologies(const ExperimentConfig& c) {
  TopologyAnalysis out;
  const int M = c.n_leaders();
  for (int idx : c.topologies.connected_set) {
    const Digraph& g = c.topologies.graphs[idx];
    const bool rooted = (M == 1) ? has_leader_rooted_spanning_tree(g)
                                 : has_leaders_rooted_reach(g);
    if (!rooted) {
      throw CertificationError("connected graph " + std::to_string(idx) +
                               " is not leader-rooted");
    }
    const auto mex = multi_leader_exchange(g, c.gamma, idx);
    ExchangeMatrix em;
    em.H = mex.H_sum;
    em.graph_index = idx;
    out.certificates.push_back(diagonal_scaling(em));
  }
  for (int idx : c.topologies.bad_set) {
    const auto mex = multi_leader_exchange(c.topologies.graphs[idx], c.gamma, idx);
    ExchangeMatrix em;
    em.H = mex.H_sum;
    em.graph_index = idx;
    out.bad_exchange.push_back(em);
  }
  out.sc = spectral_constants(out.certificates, out.bad_exchange);
  out.epsilon = out.sc.sigma_m > 0.0 ? c.epsilon_factor * out.sc.sigma_m
                                     : c.epsilon_absolute;
  return out;
}

GainsDocument design_gains(const ExperimentConfig& c) {
  const TopologyAnalysis ta = analyze_topologies(c);
  GainsDocument doc;
  doc.epsilon = ta.epsilon;
  doc.lambda_m = ta.sc.lambda_m;
  doc.sigma_m = ta.sc.sigma_m;
  doc.mu = ta.sc.mu;
  doc.estimator = design_estimator_gain(c.leader, ta.sc, c.R0, c.Q0, ta.epsilon);
  log(LogLevel::Info, "estimator: kappa0=", doc.estimator.kappa0,
      " alpha=", doc.estimator.alpha, " beta=", doc.estimator.beta);

  for (const auto& plant : c.plants) {
    const RegulatorSolution reg = solve_regulator(plant, c.leader);
    const RegulatorSolution freg = solve_formation_regulator(plant, c.A_h, c.C_h);

    Matrix K1;
    if (auto it = c.K1_explicit.find(plant.agent_id); it != c.K1_explicit.end()) {
      K1 = it->second;
    } else {
      K1 = design_state_feedback(plant, c.hurwitz_margin);
    }

    Matrix L, M;
    const auto itL = c.L_explicit.find(plant.agent_id);
    const auto itM = c.M_explicit.find(plant.agent_id);
    if ((itL != c.L_explicit.end()) != (itM != c.M_explicit.end())) {
      throw ConfigError("agent " + std::to_string(plant.agent_id) +
                        ": explicit L and M must be supplied together");
    }
    if (itL != c.L_explicit.end()) {
      L = itL->second;
      M = itM->second;
    } else {
      std::tie(L, M) = design_observer_gains(plant, c.observer_margin);
    }

    doc.agents.push_back(
        certify_agent_gains(plant, reg, freg.X, freg.U, K1, L, M));
  }
  return doc;
}

SwitchingSchedule build_schedule(const ExperimentConfig& c) {
  SwitchingSchedule s;
  if (c.schedule_explicit) {
    s = c.schedule;
    s.horizon = c.horizon;
  } else {
    s = generate_schedule(c.topologies, c.horizon, c.dwell_floor,
                          c.ratio_target, c.schedule_seed);
  }
  snap_to_grid(s, c.dt);
  return s;
}

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& v) {
  DecayFit fit;
  if (t.size() != v.size() || t.size() < 4) return fit;
  size_t lo = t.size() / 2;
  size_t hi = t.size();
  for (size_t k = lo; k < hi; ++k) {
    if (!(v[k] > 0.0)) {  // zero or non-finite: fit the pre-zero prefix
      hi = k;
      break;
    }
  }
  if (hi - lo < 3) return fit;
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(hi - lo);
  for (size_t k = lo; k < hi; ++k) {
    const double y = std::log(v[k]);
    st += t[k];
    sy += y;
    stt += t[k] * t[k];
    sty += t[k] * y;
  }
  const double denom = n * stt - st * st;
  if (std::abs(denom) < 1e-300) return fit;
  const double b = (n * sty - st * sy) / denom;
  const double a = (sy - b * st) / n;
  fit.rate = -b;
  fit.prefactor = std::exp(a);
  double ss = 0;
  for (size_t k = lo; k < hi; ++k) {
    const double r = std::log(v[k]) - (a + b * t[k]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

namespace {

/// Offsets of every continuous state inside the flat integrator vector.
struct StateLayout {
  int M = 0, r = 0, p = 0, q = 0;
  std::vector<int> x_off, h_off, zeta_off, xhat_off, yhata_off, eps_off;
  int total = 0;

  StateLayout(const ExperimentConfig& c) {
    M = c.n_leaders();
    r = c.leader.r();
    p = c.leader.p();
    q = static_cast<int>(c.A_h.rows());
    int off = M * r;
    for (const auto& plant : c.plants) {
      x_off.push_back(off);
      off += plant.n();
      h_off.push_back(off);
      off += q;
      zeta_off.push_back(off);
      off += r;
      xhat_off.push_back(off);
      off += plant.n();
      yhata_off.push_back(off);
      off += p;
      eps_off.push_back(off);
      off += p;
    }
    total = off;
  }
  Eigen::VectorBlock<const Vector> leader(const Vector& s, int k) const {
    return s.segment(k * r, r);
  }
};

Vector agent_attack(const std::vector<AttackProfile>& attacks, int agent_id,
                    double t, int p) {
  Vector a = Vector::Zero(p);
  for (const auto& prof : attacks) {
    if (prof.agent_id == agent_id) a += attack_signal(prof, t, p);
  }
  return a;
}

}  // namespace

double RunResult::final_max_xi() const {
  double m = 0;
  for (double v : xi_norm.back()) m = std::max(m, v);
  return m;
}
double RunResult::final_max_xtilde() const {
  double m = 0;
  for (double v : xtilde_norm.back()) m = std::max(m, v);
  return m;
}
double RunResult::final_max_ytilde_a() const {
  double m = 0;
  for (double v : ytilde_a_norm.back()) m = std::max(m, v);
  return m;
}
double RunResult::final_max_e() const {
  double m = 0;
  for (const auto& v : e.back()) m = std::max(m, v.norm());
  return m;
}

RunResult run(const ExperimentConfig& c, const GainsDocument& gains,
              const std::string& mode) {
  if (mode != "resilient" && mode != "standard") {
    throw ConfigError("run: mode must be resilient or standard");
  }
  const bool standard = (mode == "standard");
  const int N = c.n_agents();
  if (static_cast<int>(gains.agents.size()) != N) {
    throw ConfigError("run: gains document does not match the agent count");
  }
  const StateLayout lay(c);
  const CompensationConfig comp{c.vartheta0};
  const SwitchingSchedule sched = build_schedule(c);

  // Regulator solutions for the derived-series identities.
  std::vector<RegulatorSolution> regs, fregs;
  for (const auto& plant : c.plants) {
    regs.push_back(solve_regulator(plant, c.leader));
    fregs.push_back(solve_formation_regulator(plant, c.A_h, c.C_h));
  }

  // Initial state.
  Vector s = Vector::Zero(lay.total);
  for (int k = 0; k < lay.M; ++k) {
    s.segment(k * lay.r, lay.r) = c.leader_initials[k];
  }
  std::mt19937_64 rng(c.init_seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto seeded = [&](int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = uni(rng);
    return v;
  };
  for (int i = 0; i < N; ++i) {
    const int n = c.plants[i].n();
    s.segment(lay.x_off[i], n) =
        c.x_initial.empty() ? seeded(n) : c.x_initial[i];
    s.segment(lay.xhat_off[i], n) =
        c.xhat_initial.empty() ? seeded(n) : c.xhat_initial[i];
    s.segment(lay.h_off[i], lay.q) = c.h0[i];
    if (!c.zeta_initial.empty()) {
      s.segment(lay.zeta_off[i], lay.r) = c.zeta_initial[i];
    }
  }

  // Compensation drive map per the configured realization.
  enum class Realization { Certified, Structured, Projected };
  const Realization real = c.rho_realization == "certified"
                               ? Realization::Certified
                               : (c.rho_realization == "structured"
                                      ? Realization::Structured
                                      : Realization::Projected);

  auto rate = [&](double t, const Vector& st, const Digraph& g) {
    Vector ds = Vector::Zero(lay.total);
    std::vector<Vector> leaders(lay.M), zetas(N);
    for (int k = 0; k < lay.M; ++k) leaders[k] = lay.leader(st, k);
    for (int i = 0; i < N; ++i) {
      zetas[i] = st.segment(lay.zeta_off[i], lay.r);
    }
    for (int k = 0; k < lay.M; ++k) {
      ds.segment(k * lay.r, lay.r) = c.leader.A0 * leaders[k];
    }
    const auto xi = containment_error(zetas, leaders, g);
    for (int i = 0; i < N; ++i) {
      const LinearPlant& plant = c.plants[i];
      const AgentGainSet& gs = gains.agents[i];
      const int n = plant.n();
      const auto x = st.segment(lay.x_off[i], n);
      const auto h = st.segment(lay.h_off[i], lay.q);
      const auto xhat = st.segment(lay.xhat_off[i], n);
      const auto yhata = st.segment(lay.yhata_off[i], lay.p);
      const auto eps = st.segment(lay.eps_off[i], lay.p);

      ds.segment(lay.h_off[i], lay.q) = c.A_h * h;
      ds.segment(lay.zeta_off[i], lay.r) = estimator_rate(
          zetas[i], xi[i], c.leader.A0, gains.estimator.K0, c.leader.C0);

      const Vector ya = agent_attack(c.attacks, plant.agent_id, t, lay.p);
      const Vector yc = plant.C * x + ya;
      const Vector ytilde = residual(yc, xhat, yhata, plant.C);

      Vector f = Vector::Zero(lay.p);
      if (!standard) {
        Vector rho_bar;
        switch (real) {
          case Realization::Certified: {
            Vector rho(n + lay.p);
            rho.head(n) = x - xhat;
            rho.tail(lay.p) = ya - yhata;
            rho_bar = gs.map_certified * rho;
            break;
          }
          case Realization::Structured:
            rho_bar = gs.map_structured * ytilde;
            break;
          case Realization::Projected:
            rho_bar = gs.map_projected * ytilde;
            break;
        }
        f = compensation(rho_bar, eps, t, comp);
        ds.segment(lay.eps_off[i], lay.p) = adaptive_rate(rho_bar, t, comp);
        ds.segment(lay.yhata_off[i], lay.p) =
            attack_estimator_rate(ytilde, f, gs.M);
      }

      const Vector u = control(xhat, zetas[i], h, gs);
      ds.segment(lay.x_off[i], n) = plant.A * x + plant.B * u;
      ds.segment(lay.xhat_off[i], n) = observer_rate(xhat, u, ytilde, plant, gs.L);
    }
    return ds;
  };

  const long steps = std::lround(c.horizon / c.dt);
  RunResult res;
  res.mode = mode;
  res.dt = c.dt;
  const Vector gammas =
      Eigen::Map<const Vector>(c.gamma.data(), static_cast<long>(c.gamma.size()));

  std::vector<double> xi_agg_t, xi_agg_v;
  auto record = [&](double t, const Vector& st) {
    Vector xw = Vector::Zero(lay.r);
    for (int k = 0; k < lay.M; ++k) xw += gammas(k) * lay.leader(st, k);
    const Vector y0w = c.leader.C0 * xw;

    res.t.push_back(t);
    std::vector<Vector> ys(N), es(N);
    std::vector<double> xin(N), xtn(N), yan(N);
    double esum = 0.0, xisum = 0.0;
    for (int i = 0; i < N; ++i) {
      const LinearPlant& plant = c.plants[i];
      const int n = plant.n();
      const auto x = st.segment(lay.x_off[i], n);
      const auto h = st.segment(lay.h_off[i], lay.q);
      const auto xhat = st.segment(lay.xhat_off[i], n);
      const auto yhata = st.segment(lay.yhata_off[i], lay.p);
      ys[i] = plant.C * x;
      es[i] = ys[i] - c.C_h * h - y0w;
      esum += es[i].squaredNorm();
      const Vector xitil = st.segment(lay.zeta_off[i], lay.r) - xw;
      xin[i] = xitil.norm();
      xisum += xitil.squaredNorm();
      xtn[i] = (x - xhat).norm();
      const Vector ya = agent_attack(c.attacks, plant.agent_id, t, lay.p);
      yan[i] = (ya - yhata).norm();

      const Vector xbar = x - regs[i].X * xw - fregs[i].X * h;
      const double id_err = (es[i] - plant.C * xbar).norm();
      res.formation_identity_max = std::max(res.formation_identity_max, id_err);
    }
    res.y.push_back(std::move(ys));
    res.e.push_back(std::move(es));
    res.xi_norm.push_back(std::move(xin));
    res.xtilde_norm.push_back(std::move(xtn));
    res.ytilde_a_norm.push_back(std::move(yan));
    res.E.push_back(std::sqrt(esum) / N);
    xi_agg_t.push_back(t);
    xi_agg_v.push_back(std::sqrt(xisum));
  };

  for (long k = 0; k <= steps; ++k) {
    const double t = k * c.dt;
    if (!s.allFinite()) {
      if (standard) {
        res.diverged = true;
        res.blowup_time = t;
        log(LogLevel::Info, "standard mode diverged at t=", t);
        break;
      }
      throw NonFiniteError("state became non-finite at t=" + std::to_string(t));
    }
    if (k % c.csv_decimation == 0 || k == steps) record(t, s);
    if (k == steps) break;
    const Digraph& g = c.topologies.graphs[sigma_at(sched, t)];
    const Vector k1 = rate(t, s, g);
    const Vector k2 = rate(t + 0.5 * c.dt, s + 0.5 * c.dt * k1, g);
    const Vector k3 = rate(t + 0.5 * c.dt, s + 0.5 * c.dt * k2, g);
    const Vector k4 = rate(t + c.dt, s + c.dt * k3, g);
    s += (c.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  res.xi_decay = decay_fit(xi_agg_t, xi_agg_v);
  return res;
}

void write_csv(const RunResult& r, std::ostream& os) {
  os << std::setprecision(17);
  os << "t";
  const size_t N = r.y.empty() ? 0 : r.y.front().size();
  for (size_t i = 0; i < N; ++i) {
    for (int j = 0; j < r.y.front()[i].size(); ++j) {
      os << ",y" << (i + 1) << "_" << (j + 1);
    }
    for (int j = 0; j < r.e.front()[i].size(); ++j) {
      os << ",e" << (i + 1) << "_" << (j + 1);
    }
    os << ",xi" << (i + 1) << ",xtilde" << (i + 1) << ",ytilde_a" << (i + 1);
  }
  os << ",E\n";
  for (size_t k = 0; k < r.t.size(); ++k) {
    os << r.t[k];
    for (size_t i = 0; i < N; ++i) {
      for (int j = 0; j < r.y[k][i].size(); ++j) os << "," << r.y[k][i](j);
      for (int j = 0; j < r.e[k][i].size(); ++j) os << "," << r.e[k][i](j);
      os << "," << r.xi_norm[k][i] << "," << r.xtilde_norm[k][i] << ","
         << r.ytilde_a_norm[k][i];
    }
    os << "," << r.E[k] << "\n";
  }
}

Json run_summary(const RunResult& r) {
  Json j;
  j["mode"] = r.mode;
  j["dt"] = r.dt;
  j["t_final"] = r.t.back();
  j["E_initial"] = r.E.front();
  j["E_final"] = r.E.back();
  j["max_xi_final"] = r.final_max_xi();
  j["max_xtilde_final"] = r.final_max_xtilde();
  j["max_ytilde_a_final"] = r.final_max_ytilde_a();
  j["max_e_final"] = r.final_max_e();
  j["diverged"] = r.diverged;
  j["blowup_time"] = r.blowup_time;
  j["formation_identity_max"] = r.formation_identity_max;
  j["xi_decay_rate"] = r.xi_decay.rate;
  j["xi_decay_prefactor"] = r.xi_decay.prefactor;
  j["xi_decay_residual"] = r.xi_decay.residual;
  return j;
}

}  // namespace rfs
