#pragma once

#include <string>

#include "nlslab/ground_state.hpp"

namespace nls {

// Field snapshots: <path> holds raw little-endian (re,im) float64 pairs in
// row-major axis order; <path>.json is the sidecar
// {n_dims, points[], half_lengths[], time, omega, p}.
struct SnapshotMeta {
  double time = 0.0;
  double omega = 0.0;
  double p = 0.0;
};

void write_snapshot(const Field& f, const std::string& path, const SnapshotMeta& meta);

struct LoadedSnapshot {
  Field field;
  SnapshotMeta meta;
};

LoadedSnapshot read_snapshot(const std::string& path);

// ground-state certificate {omega, p, level, residual, nehari_value,
// iterations, grid}, plus the resolved config when provided
std::string ground_state_certificate_json(const GroundState& gs, double p,
                                          const std::string& resolved_config_json = "");

void write_text_file(const std::string& path, const std::string& content);

}  // namespace nls
