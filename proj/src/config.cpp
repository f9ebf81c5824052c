#include "nlslab/config.hpp"

#include <fstream>

#include <json.hpp>

namespace nls {

namespace {

using nlohmann::json;

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_ground(const json& j, GroundStateOptions& g) {
  get_if(j, "step_size", g.step_size);
  get_if(j, "max_iters", g.max_iters);
  get_if(j, "residual_tol", g.residual_tol);
  get_if(j, "recenter_every", g.recenter_every);
  get_if(j, "seed_width", g.seed_width);
  get_if(j, "precondition", g.precondition);
  get_if(j, "dealias", g.dealias);
}

void parse_evolve(const json& j, EvolveOptions& e) {
  get_if(j, "dt0", e.dt0);
  get_if(j, "t_end", e.t_end);
  get_if(j, "sample_every", e.sample_every);
  get_if(j, "grad_blowup_factor", e.grad_blowup_factor);
  get_if(j, "dt_floor", e.dt_floor);
  get_if(j, "boundary_mass_cap", e.boundary_mass_cap);
  get_if(j, "boundary_margin", e.boundary_margin);
  get_if(j, "linear_only", e.linear_only);
  get_if(j, "dealias", e.dealias);
}

}  // namespace

ExperimentConfig load_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig c;
  try {
    get_if(j, "command", c.command);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      get_if(g, "n_dims", c.n_dims);
      get_if(g, "points", c.points);
      get_if(g, "half_lengths", c.half_lengths);
    }
    if (j.contains("params")) {
      const auto& p = j.at("params");
      get_if(p, "p", c.p);
      get_if(p, "omega", c.omega);
    }
    if (j.contains("ground")) parse_ground(j.at("ground"), c.ground);
    if (j.contains("evolve")) parse_evolve(j.at("evolve"), c.evolve);
    if (j.contains("initial")) {
      const auto& u = j.at("initial");
      get_if(u, "kind", c.initial.kind);
      get_if(u, "path", c.initial.path);
      get_if(u, "amplitude", c.initial.amplitude);
      get_if(u, "widths", c.initial.widths);
    }
    if (j.contains("instability")) {
      const auto& i = j.at("instability");
      get_if(i, "lambda", c.lambda);
      get_if(i, "slack", c.slack);
    }
    if (j.contains("verify")) {
      const auto& v = j.at("verify");
      get_if(v, "n_fields", c.verify_fields);
      get_if(v, "lemma_fields", c.verify_lemma_fields);
    }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      get_if(s, "parameter", c.sweep.parameter);
      get_if(s, "values", c.sweep.values);
      get_if(s, "command", c.sweep.command);
      get_if(s, "max_workers", c.sweep.max_workers);
    }
    get_if(j, "output_dir", c.output_dir);
    get_if(j, "seed", c.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return load_config(text);
}

void ExperimentConfig::validate() const {
  static const char* known[] = {"ground", "evolve", "instability", "verify", "sweep"};
  bool ok = false;
  for (const char* k : known) ok |= command == k;
  if (!ok) throw ConfigError("config: unknown command '" + command + "'");

  try {
    const ModelParams mp = params();
    Grid::build(n_dims, points, half_lengths);  // shape check
    ground.validate();
    evolve.validate();
    if (command == "instability" || (command == "sweep" && sweep.command == "instability")) {
      if (!mp.instability_regime())
        throw ConfigError("config: instability requires p >= 1 + 4/(N-1) = " +
                          std::to_string(1.0 + 4.0 / (n_dims - 1)) + ", got p = " +
                          std::to_string(p));
      if (!(lambda > 0.0)) throw ConfigError("config: lambda must be positive");
    }
    if (command == "evolve" && initial.kind != "gaussian" && initial.kind != "snapshot")
      throw ConfigError("config: initial.kind must be gaussian or snapshot");
    if (command == "evolve" && initial.kind == "snapshot" && initial.path.empty())
      throw ConfigError("config: initial.kind snapshot needs initial.path");
    if (command == "sweep") {
      if (sweep.parameter != "omega" && sweep.parameter != "lambda")
        throw ConfigError("config: sweep.parameter must be omega or lambda");
      if (sweep.values.empty()) throw ConfigError("config: sweep.values is empty");
      if (sweep.command != "ground" && sweep.command != "evolve" &&
          sweep.command != "instability")
        throw ConfigError("config: sweep.command must be ground, evolve or instability");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::string ExperimentConfig::resolved_json() const {
  json j;
  j["command"] = command;
  j["grid"] = {{"n_dims", n_dims}, {"points", points}, {"half_lengths", half_lengths}};
  j["params"] = {{"p", p}, {"omega", omega}};
  j["ground"] = {{"step_size", ground.step_size},
                 {"max_iters", ground.max_iters},
                 {"residual_tol", ground.residual_tol},
                 {"recenter_every", ground.recenter_every},
                 {"seed_width", ground.seed_width},
                 {"precondition", ground.precondition},
                 {"dealias", ground.dealias}};
  j["evolve"] = {{"dt0", evolve.dt0},
                 {"t_end", evolve.t_end},
                 {"sample_every", evolve.sample_every},
                 {"grad_blowup_factor", evolve.grad_blowup_factor},
                 {"dt_floor", evolve.dt_floor},
                 {"boundary_mass_cap", evolve.boundary_mass_cap},
                 {"boundary_margin", evolve.boundary_margin},
                 {"linear_only", evolve.linear_only},
                 {"dealias", evolve.dealias}};
  j["initial"] = {{"kind", initial.kind},
                  {"path", initial.path},
                  {"amplitude", initial.amplitude},
                  {"widths", initial.widths}};
  j["instability"] = {{"lambda", lambda}, {"slack", slack}};
  j["verify"] = {{"n_fields", verify_fields}, {"lemma_fields", verify_lemma_fields}};
  if (command == "sweep")
    j["sweep"] = {{"parameter", sweep.parameter},
                  {"values", sweep.values},
                  {"command", sweep.command},
                  {"max_workers", sweep.max_workers}};
  j["output_dir"] = output_dir;
  j["seed"] = seed;
  return j.dump(2);
}

}  // namespace nls
