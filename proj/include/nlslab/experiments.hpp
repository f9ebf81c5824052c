#pragma once

#include "nlslab/config.hpp"
#include "nlslab/diagnostics.hpp"

namespace nls {

// Exit codes: 0 success, 1 certificate/property failure, 2 config error.
// Artifacts land under cfg.output_dir together with resolved_config.json.
int run_experiment(const ExperimentConfig& cfg);

// individual commands, exposed for tests
int run_ground(const ExperimentConfig& cfg);
int run_evolve_cmd(const ExperimentConfig& cfg);
int run_instability(const ExperimentConfig& cfg);
int run_verify(const ExperimentConfig& cfg);
int run_sweep(const ExperimentConfig& cfg);

// the instability pipeline without the disk artifacts, reused by tests
struct InstabilityOutcome {
  GroundState ground;
  TrajectoryRecord record;
  BlowupCertificate certificate;
};
InstabilityOutcome instability_pipeline(const ExperimentConfig& cfg);

}  // namespace nls
