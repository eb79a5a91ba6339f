#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ccs/experiment.hpp"

namespace fs = std::filesystem;
using namespace ccs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitConsistency = 3;

std::string sci(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, x);
  return buf;
}

// Atomic write: stage into a temporary sibling, then rename.
void write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

// Flat key-value config: one "key value" or "key = value" pair per line,
// '#' starts a comment.
std::map<std::string, std::string> parse_config(const fs::path& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), '=', ' ');
    std::istringstream ls(line);
    std::string key, value;
    if (ls >> key >> value) kv[key] = value;
  }
  return kv;
}

struct RunOptions {
  std::string scenario = "psystem-jump";
  int approach = 3;
  std::size_t cells = 1000;
  double cfl = 0.49;
  double epsilon = 0.0;
  double x_min = -200.0, x_max = 200.0;
  double alpha = 146820.4, gamma = 1.0;
  std::string out_dir = ".";
};

psystem::Experiment to_experiment(const RunOptions& opt) {
  psystem::Experiment exp;
  exp.alpha = opt.alpha;
  exp.gamma = opt.gamma;
  exp.x_min = opt.x_min;
  exp.x_max = opt.x_max;
  exp.cfl = opt.cfl;
  if (opt.scenario == "kirchhoff-demo") {
    // zero outtake reduces approach 3 to the Kirchhoff condition Q_R = Q_L
    exp.schedule.plateau = 0.0;
    exp.schedule.ramp_rate = 0.0;
  }
  return exp;
}

void validate(const RunOptions& opt) {
  if (opt.cells < 4 || opt.cells % 2 != 0)
    throw CLI::ValidationError("--cells", "cell count must be even and >= 4");
  if (!(opt.cfl > 0.0 && opt.cfl < 1.0))
    throw CLI::ValidationError("--cfl", "CFL must lie in (0,1)");
  if (opt.approach < 1 || opt.approach > 4)
    throw CLI::ValidationError("--approach", "approach must be 1-4");
  if (opt.scenario != "psystem-jump" && opt.scenario != "kirchhoff-demo" &&
      opt.scenario != "custom")
    throw CLI::ValidationError("--scenario", "unknown scenario " + opt.scenario);
}

int cmd_run(const RunOptions& opt) {
  validate(opt);
  const psystem::Experiment exp = to_experiment(opt);
  const psystem::PSystemModel model{exp.alpha, exp.gamma, 2.0 * exp.rho0};
  const psystem::ExperimentResult result =
      psystem::run_experiment(exp, opt.approach, opt.cells, opt.epsilon);

  fs::create_directories(opt.out_dir);
  const Grid grid(opt.cells, exp.x_min, exp.x_max);
  for (std::size_t s = 0; s < result.sim.snapshots.size(); ++s) {
    const GridState& snap = result.sim.snapshots[s];
    std::ostringstream body;
    body << "x,rho,rhov,p\n";
    for (std::size_t k = 0; k < snap.u.size(); ++k) {
      body << sci(grid.cell_center(k), 17) << ',' << sci(snap.u[k][0], 17) << ','
           << sci(snap.u[k][1], 17) << ',' << sci(model.pressure(snap.u[k][0]), 17)
           << '\n';
    }
    write_file(fs::path(opt.out_dir) /
                   ("snapshot_" + std::to_string(s) + "_t" + sci(snap.time, 5) + ".csv"),
               body.str());
  }
  std::ostringstream err;
  err << "t,E1,E2\n";
  for (std::size_t k = 0; k < result.errors.times.size(); ++k)
    err << sci(result.errors.times[k], 17) << ',' << sci(result.errors.e1[k], 17)
        << ',' << sci(result.errors.e2[k], 17) << '\n';
  write_file(fs::path(opt.out_dir) / "coupling_errors.csv", err.str());
  std::printf("wrote %zu snapshots and coupling_errors.csv to %s\n",
              result.sim.snapshots.size(), opt.out_dir.c_str());
  return kExitOk;
}

int cmd_convergence(const RunOptions& opt, std::vector<std::size_t> cells,
                    bool all_approaches) {
  validate(opt);
  if (cells.empty()) cells = {100, 200, 400, 800, 1600};
  for (std::size_t k = 0; k + 1 < cells.size(); ++k)
    if (cells[k + 1] != 2 * cells[k])
      throw CLI::ValidationError("--cells-list", "cell counts must double");
  const psystem::Experiment exp = to_experiment(opt);
  fs::create_directories(opt.out_dir);

  std::vector<int> approaches =
      all_approaches ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{opt.approach};
  for (int approach : approaches) {
    const auto rows = psystem::convergence_sweep(exp, approach, cells);
    std::vector<std::pair<std::size_t, double>> e1s, e2s;
    for (const auto& r : rows) {
      e1s.push_back({r.cells, r.l1_e1});
      e2s.push_back({r.cells, r.l1_e2});
    }
    const auto eoc1 = diagnostics::eoc(e1s);
    const auto eoc2 = diagnostics::eoc(e2s);
    std::ostringstream body;
    body << "cells,L1E1,EOC1,L1E2,EOC2\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      body << rows[k].cells << ',' << sci(rows[k].l1_e1, 4) << ','
           << (k == 0 ? "" : sci(eoc1[k - 1], 3)) << ',' << sci(rows[k].l1_e2, 4)
           << ',' << (k == 0 ? "" : sci(eoc2[k - 1], 3)) << '\n';
    }
    const fs::path file =
        fs::path(opt.out_dir) / ("convergence_approach" + std::to_string(approach) + ".csv");
    write_file(file, body.str());
    std::printf("approach %d:\n%s", approach, body.str().c_str());
  }
  return kExitOk;
}

int cmd_consistency(int approach_id) {
  if (approach_id < 1 || approach_id > 4)
    throw CLI::ValidationError("--approach", "approach must be 1-4");
  const psystem::PSystemModel model{146820.4, 1.0, 2.0};
  const double a = psystem::relax_rate_a(model);
  const double e_value = -0.5;
  const FluxModel fm = psystem::make_flux_model(model);
  const GeneralCoupling coupling =
      psystem::build_coupling(psystem::CouplingApproach::make(approach_id), e_value, a);

  // samples on the Psi_U = 0 manifold: rho_R = rho_L, momentum jump by E
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rho_dist(0.5, 2.0);
  std::uniform_real_distribution<double> mom_dist(-1.5, 1.5);
  std::vector<std::pair<StateVec, StateVec>> samples;
  for (int k = 0; k < 200; ++k) {
    const double rho = rho_dist(rng);
    const double mom_l = mom_dist(rng);
    samples.push_back({{rho, mom_l + e_value}, {rho, mom_l}});
    samples.push_back({{rho_dist(rng), mom_dist(rng)}, {rho_dist(rng), mom_dist(rng)}});
  }
  const auto report = check_consistency(
      [&](const StateVec& u_r, const StateVec& u_l) {
        return psystem::psi_u(u_r, u_l, e_value, model);
      },
      coupling, fm, fm, samples, 1e-9);

  std::printf("approach %d: forward %s, %zu forward counterexamples, "
              "%zu reverse counterexamples (kappa = %g)\n",
              approach_id, report.forward_ok ? "ok" : "FAILED",
              report.forward_counterexamples.size(),
              report.reverse_counterexamples.size(), report.kappa);
  auto show = [](const char* tag, const ConsistencyCounterexample& c) {
    std::printf("  %s counterexample: U_R=(%g, %g) U_L=(%g, %g) "
                "|Psi_U|=%.3e |Psi_Q lifted|=%.3e\n",
                tag, c.u_r[0], c.u_r[1], c.u_l[0], c.u_l[1], c.psi_u_norm,
                c.psi_q_norm);
  };
  if (!report.forward_counterexamples.empty())
    show("forward", report.forward_counterexamples.front());
  if (!report.reverse_counterexamples.empty())
    show("reverse", report.reverse_counterexamples.front());
  const bool pass = report.forward_ok && report.reverse_counterexamples.empty();
  return pass ? kExitOk : kExitConsistency;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central scheme for conservation laws coupled at a point interface"};
  app.require_subcommand(1);

  RunOptions opt;
  std::string config_file;
  std::vector<std::size_t> cells_list;
  bool all_approaches = true;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "flat key-value config file");
    cmd->add_option("--scenario", opt.scenario, "psystem-jump | kirchhoff-demo | custom");
    cmd->add_option("--approach", opt.approach, "coupling approach 1-4");
    cmd->add_option("--cells", opt.cells, "number of mesh cells (even)");
    cmd->add_option("--cfl", opt.cfl, "Courant number in (0,1)");
    cmd->add_option("--epsilon", opt.epsilon, "relaxation rate; 0 = central scheme");
    cmd->add_option("--out", opt.out_dir, "output directory");
  };

  CLI::App* run = app.add_subcommand("run", "single simulation with CSV output");
  add_common(run);
  CLI::App* conv = app.add_subcommand("convergence", "coupling-error mesh sweep");
  add_common(conv);
  conv->add_option("--cells-list", cells_list, "doubling cell counts");
  CLI::App* cons = app.add_subcommand("consistency", "coupling-condition consistency report");
  int cons_approach = 4;
  cons->add_option("--approach", cons_approach, "coupling approach 1-4")->required();

  try {
    app.parse(argc, argv);
    if (!config_file.empty()) {
      const auto kv = parse_config(config_file);
      CLI::App* sub = app.get_subcommands().front();
      auto apply = [&](const char* flag, auto& target) {
        const auto it = kv.find(flag);
        if (it != kv.end() && sub->count(std::string("--") + flag) == 0) {
          std::istringstream(it->second) >> target;
        }
      };
      apply("scenario", opt.scenario);
      apply("approach", opt.approach);
      apply("cells", opt.cells);
      apply("cfl", opt.cfl);
      apply("epsilon", opt.epsilon);
      apply("x_min", opt.x_min);
      apply("x_max", opt.x_max);
      apply("alpha", opt.alpha);
      apply("gamma", opt.gamma);
      apply("out", opt.out_dir);
    }
    if (run->parsed()) return cmd_run(opt);
    if (conv->parsed())
      return cmd_convergence(opt, cells_list, all_approaches && conv->count("--approach") == 0);
    if (cons->parsed()) return cmd_consistency(cons_approach);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kExitSolver;
  }
  return kExitConfig;
}
