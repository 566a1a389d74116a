#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rfs/log.hpp"
#include "rfs/sim.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolvability = 3;
constexpr int kExitCertification = 4;
constexpr int kExitNonFinite = 5;

struct CommonOpts {
  std::string config_path;
  std::string gains_path;
  std::string out = "out";
  std::string preset;
  std::string mode;
  double dt = -1.0;
  double horizon = -1.0;
  std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "experiment config JSON");
  cmd->add_option("--gains", o.gains_path, "pre-designed gains JSON");
  cmd->add_option("--out", o.out, "output file or directory");
  cmd->add_option("--preset", o.preset, "built-in preset")
      ->check(CLI::IsMember({"case1", "case2"}));
  cmd->add_option("--mode", o.mode, "controller mode")
      ->check(CLI::IsMember({"resilient", "standard", "both"}));
  cmd->add_option("--dt", o.dt, "integration step override");
  cmd->add_option("--horizon", o.horizon, "horizon override [s]");
  cmd->add_option("--seed", o.seed, "initial-state seed override");
}

rfs::ExperimentConfig resolve_config(const CommonOpts& o) {
  std::string path = o.config_path;
  if (path.empty()) {
    if (o.preset.empty()) {
      throw rfs::ConfigError("either --config or --preset is required");
    }
    path = rfs::preset_path(o.preset);
  }
  rfs::ExperimentConfig c = rfs::load_config(path);
  if (!o.mode.empty()) c.mode = o.mode;
  if (o.dt > 0.0) c.dt = o.dt;
  if (o.horizon > 0.0) c.horizon = o.horizon;
  if (o.seed >= 0) c.init_seed = static_cast<std::uint64_t>(o.seed);
  return c;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw rfs::ConfigError("cannot write " + path.string());
  out << text;
}

int cmd_design_gains(const CommonOpts& o) {
  const auto config = resolve_config(o);
  const auto gains = rfs::design_gains(config);
  const fs::path out = o.out == "out" ? fs::path("gains.json") : fs::path(o.out);
  write_text(out, rfs::gains_to_json(gains).dump(2) + "\n");
  std::cout << "wrote " << out.string() << " (" << gains.agents.size()
            << " agent gain sets, kappa0=" << gains.estimator.kappa0 << ")\n";
  return 0;
}

int cmd_validate(const CommonOpts& o) {
  const auto config = resolve_config(o);
  const int M = config.n_leaders();
  bool ok = true;
  for (size_t gi = 0; gi < config.topologies.graphs.size(); ++gi) {
    const auto& g = config.topologies.graphs[gi];
    const bool rooted = (M == 1) ? rfs::has_leader_rooted_spanning_tree(g)
                                 : rfs::has_leaders_rooted_reach(g);
    const bool connected =
        std::find(config.topologies.connected_set.begin(),
                  config.topologies.connected_set.end(),
                  static_cast<int>(gi)) != config.topologies.connected_set.end();
    std::cout << "graph " << gi << ": leader-rooted=" << (rooted ? "yes" : "no")
              << " set=" << (connected ? "connected" : "bad") << "\n";
    if (connected && !rooted) ok = false;
  }
  const auto ta = rfs::analyze_topologies(config);
  for (const auto& cert : ta.certificates) {
    std::cout << "graph " << cert.graph_index << ": q_min=" << cert.q_min
              << " lambda_min(Q)=" << cert.lambda_min_Q << "\n";
  }
  std::cout << "constants: mu=" << ta.sc.mu << " lambda_m=" << ta.sc.lambda_m
            << " sigma_m=" << ta.sc.sigma_m << " epsilon=" << ta.epsilon << "\n";

  const auto est = rfs::design_estimator_gain(config.leader, ta.sc, config.R0,
                                              config.Q0, ta.epsilon);
  std::cout << "estimator: kappa0=" << est.kappa0 << " in (" << est.interval_lo
            << ", " << est.interval_hi << "), alpha=" << est.alpha
            << ", beta=" << est.beta << "\n";

  auto sched = rfs::build_schedule(config);
  // Pick eta* in the middle of the feasible band for the configured ratio
  // bound pi: the scalar condition needs pi < (alpha - eta*) / (beta + eta*).
  const double pi = config.ratio_target;
  const double eta_star_max = (est.alpha - pi * est.beta) / (1.0 + pi);
  const double eta_star = 0.5 * std::max(eta_star_max, 1e-6);
  const double eta = eta_star / 2.0;
  const auto rep = rfs::validate_schedule(sched, config.topologies, eta_star,
                                          est.alpha, est.beta, ta.sc.mu, eta);
  std::cout << "schedule: min_dwell=" << rep.min_dwell
            << " realized_ratio=" << rep.realized_ratio
            << " pi_max=" << rep.pi_max
            << " tau_a_required=" << rep.tau_a_required << "\n";
  std::cout << "checks: dwell=" << (rep.dwell_ok ? "ok" : "FAIL")
            << " ratio=" << (rep.ratio_ok ? "ok" : "FAIL")
            << " scalars=" << (rep.condition_ok ? "ok" : "FAIL") << "\n";
  if (!ok || !rep.dwell_ok || !rep.ratio_ok || !rep.condition_ok) {
    throw rfs::CertificationError("validation failed");
  }
  std::cout << "all checks passed\n";
  return 0;
}

int run_and_write(const rfs::ExperimentConfig& config,
                  const rfs::GainsDocument& gains, const std::string& mode,
                  const fs::path& dir, rfs::Json& summaries) {
  const auto res = rfs::run(config, gains, mode);
  fs::create_directories(dir);
  std::ofstream csv(dir / (mode + ".csv"));
  rfs::write_csv(res, csv);
  summaries[mode] = rfs::run_summary(res);
  std::cout << mode << ": E(final)=" << res.E.back()
            << " max|e|=" << res.final_max_e()
            << (res.diverged ? " (diverged)" : "") << "\n";
  return 0;
}

int cmd_simulate(const CommonOpts& o, bool comparison) {
  auto config = resolve_config(o);
  if (comparison) config.mode = "both";
  const rfs::GainsDocument gains = o.gains_path.empty()
                                       ? rfs::design_gains(config)
                                       : rfs::load_gains(o.gains_path);
  const fs::path dir(o.out);
  rfs::Json summaries;
  if (config.mode == "resilient" || config.mode == "both") {
    run_and_write(config, gains, "resilient", dir, summaries);
  }
  if (config.mode == "standard" || config.mode == "both") {
    run_and_write(config, gains, "standard", dir, summaries);
  }
  if (summaries.contains("resilient") && summaries.contains("standard")) {
    rfs::Json cmp;
    cmp["resilient_E_final"] = summaries["resilient"]["E_final"];
    cmp["standard_E_final"] = summaries["standard"]["E_final"];
    cmp["standard_diverged"] = summaries["standard"]["diverged"];
    const double e0 = summaries["standard"]["E_initial"].get<double>();
    const double ef = summaries["standard"]["E_final"].get<double>();
    cmp["standard_growth_factor"] = e0 > 0.0 ? ef / e0 : 0.0;
    summaries["comparison"] = cmp;
  }
  write_text(dir / "summary.json", summaries.dump(2) + "\n");
  std::cout << "wrote " << (dir / "summary.json").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resilient formation-tracking toolkit"};
  app.require_subcommand(1);

  CommonOpts od, os, ov, oc;
  add_common(app.add_subcommand("design-gains", "synthesize and certify gains"), od);
  add_common(app.add_subcommand("simulate", "closed-loop simulation"), os);
  add_common(app.add_subcommand("validate", "assumption and schedule audit"), ov);
  add_common(app.add_subcommand("compare", "resilient vs standard comparison"), oc);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("design-gains")) return cmd_design_gains(od);
    if (app.got_subcommand("simulate")) return cmd_simulate(os, false);
    if (app.got_subcommand("validate")) return cmd_validate(ov);
    if (app.got_subcommand("compare")) return cmd_simulate(oc, true);
  } catch (const rfs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const rfs::SolvabilityError& e) {
    std::cerr << "solvability error: " << e.what() << "\n";
    return kExitSolvability;
  } catch (const rfs::CertificationError& e) {
    std::cerr << "certification error: " << e.what() << "\n";
    return kExitCertification;
  } catch (const rfs::NonFiniteError& e) {
    std::cerr << "non-finite state: " << e.what() << "\n";
    return kExitNonFinite;
  }
  return 0;
}
