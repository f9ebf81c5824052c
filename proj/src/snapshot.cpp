#include "nlslab/snapshot.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace nls {

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << content;
}

void write_snapshot(const Field& f, const std::string& path, const SnapshotMeta& meta) {
  static_assert(sizeof(cplx) == 2 * sizeof(double));
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.write(reinterpret_cast<const char*>(f.data()),
              static_cast<std::streamsize>(f.size() * sizeof(cplx)));
  }
  const Grid& g = *f.grid;
  nlohmann::json j;
  j["n_dims"] = g.n_dims();
  std::vector<int> pts;
  std::vector<double> hls;
  for (const auto& ax : g.axes()) {
    pts.push_back(ax.points);
    hls.push_back(ax.half_length);
  }
  j["points"] = pts;
  j["half_lengths"] = hls;
  j["time"] = meta.time;
  j["omega"] = meta.omega;
  j["p"] = meta.p;
  write_text_file(path + ".json", j.dump(2) + "\n");
}

LoadedSnapshot read_snapshot(const std::string& path) {
  std::ifstream side(path + ".json");
  if (!side) throw std::runtime_error("missing sidecar " + path + ".json");
  nlohmann::json j;
  side >> j;

  const int n_dims = j.at("n_dims").get<int>();
  auto points = j.at("points").get<std::vector<int>>();
  auto half_lengths = j.at("half_lengths").get<std::vector<double>>();
  auto grid = Grid::build(n_dims, points, half_lengths);

  LoadedSnapshot s{Field::zeros(grid), {}};
  s.meta.time = j.at("time").get<double>();
  s.meta.omega = j.at("omega").get<double>();
  s.meta.p = j.at("p").get<double>();

  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  in.read(reinterpret_cast<char*>(s.field.data()),
          static_cast<std::streamsize>(s.field.size() * sizeof(cplx)));
  if (static_cast<std::size_t>(in.gcount()) != s.field.size() * sizeof(cplx))
    throw std::runtime_error("snapshot truncated: " + path);
  return s;
}

std::string ground_state_certificate_json(const GroundState& gs, double p,
                                          const std::string& resolved_config_json) {
  nlohmann::json j;
  j["omega"] = gs.omega;
  j["p"] = p;
  j["level"] = gs.level;
  j["residual"] = gs.residual;
  j["nehari_value"] = gs.nehari_value;
  j["iterations"] = gs.iterations;
  nlohmann::json grid;
  std::vector<int> pts;
  std::vector<double> hls;
  for (const auto& ax : gs.profile.grid->axes()) {
    pts.push_back(ax.points);
    hls.push_back(ax.half_length);
  }
  grid["points"] = pts;
  grid["half_lengths"] = hls;
  j["grid"] = grid;
  if (!resolved_config_json.empty())
    j["config"] = nlohmann::json::parse(resolved_config_json);
  return j.dump(2);
}

}  // namespace nls
