#include <CLI11.hpp>

#include <iostream>

#include "nlslab/experiments.hpp"
#include "nlslab/ground_state.hpp"

namespace {

struct Overrides {
  std::string config_file;
  std::string out;
  std::vector<int> points;
  std::vector<double> half_lengths;
  double p = -1.0, omega = -999.0, lambda = -1.0, t_end = -1.0, dt0 = -1.0, tol = -1.0;
  long seed = -1;
  int dims = 0;
  bool precondition = false, dealias = false, linear_only = false;
};

void apply(const Overrides& o, nls::ExperimentConfig& cfg) {
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.dims > 0) cfg.n_dims = o.dims;
  if (!o.points.empty()) cfg.points = o.points;
  if (!o.half_lengths.empty()) cfg.half_lengths = o.half_lengths;
  if (o.p > 0) cfg.p = o.p;
  if (o.omega > -999.0) cfg.omega = o.omega;
  if (o.lambda > 0) cfg.lambda = o.lambda;
  if (o.t_end >= 0) cfg.evolve.t_end = o.t_end;
  if (o.dt0 > 0) cfg.evolve.dt0 = o.dt0;
  if (o.tol > 0) cfg.ground.residual_tol = o.tol;
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  if (o.precondition) cfg.ground.precondition = true;
  if (o.dealias) {
    cfg.ground.dealias = true;
    cfg.evolve.dealias = true;
  }
  if (o.linear_only) cfg.evolve.linear_only = true;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_file, "JSON config file; flags override its values");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--dims", o.dims, "space dimension (2 or 3)");
  cmd->add_option("--points", o.points, "per-axis grid sizes")->delimiter(',');
  cmd->add_option("--half-lengths", o.half_lengths, "per-axis box half-lengths")->delimiter(',');
  cmd->add_option("--p", o.p, "nonlinearity exponent");
  cmd->add_option("--omega", o.omega, "frequency omega");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_flag("--dealias", o.dealias, "2/3-rule dealiasing mask");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: Nehari-manifold ground states, split-step evolution and "
               "blow-up certification for NLS with one confined direction"};
  app.require_subcommand(1);

  Overrides o;
  auto* ground = app.add_subcommand("ground", "solve the ground state, write .fld + certificate");
  auto* evolve = app.add_subcommand("evolve", "integrate an initial state, write trajectory CSV");
  auto* instab = app.add_subcommand("instability",
                                    "ground -> scale by lambda -> evolve -> blow-up certificate");
  auto* verify = app.add_subcommand("verify", "run the identity/property suite");
  auto* sweep = app.add_subcommand("sweep", "repeat a command over omega or lambda values");
  for (auto* c : {ground, evolve, instab, verify, sweep}) add_common(c, o);
  for (auto* c : {ground, instab, verify, sweep})
    c->add_option("--tol", o.tol, "ground-state residual tolerance");
  for (auto* c : {ground, instab, verify, sweep})
    c->add_flag("--precondition", o.precondition, "inverse-Helmholtz preconditioner");
  for (auto* c : {evolve, instab, sweep}) {
    c->add_option("--t-end", o.t_end, "integration end time");
    c->add_option("--dt0", o.dt0, "base time step");
  }
  evolve->add_flag("--linear-only", o.linear_only, "disable the nonlinearity");
  instab->add_option("--lambda", o.lambda, "ground-state scaling factor");
  sweep->add_option("--lambda", o.lambda, "base lambda when sweeping omega");

  CLI11_PARSE(app, argc, argv);

  try {
    nls::ExperimentConfig cfg;
    if (!o.config_file.empty()) cfg = nls::load_config_file(o.config_file);
    apply(o, cfg);
    if (ground->parsed()) cfg.command = "ground";
    if (evolve->parsed()) cfg.command = "evolve";
    if (instab->parsed()) cfg.command = "instability";
    if (verify->parsed()) cfg.command = "verify";
    if (sweep->parsed()) cfg.command = "sweep";
    cfg.validate();
    return nls::run_experiment(cfg);
  } catch (const nls::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nls::NonconvergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
