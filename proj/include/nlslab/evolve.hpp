#pragma once

#include <string>
#include <vector>

#include "nlslab/functionals.hpp"

namespace nls {

struct EvolveOptions {
  double dt0 = 1e-3;
  double t_end = 1.0;
  double sample_every = 1e-2;
  double grad_blowup_factor = 1e3;  // halt when grad_sq exceeds this times its initial value
  double dt_floor = 1e-9;
  double boundary_mass_cap = 1e-6;
  double boundary_margin = 0.1;
  bool linear_only = false;  // drop the nonlinearity (test mode)
  bool dealias = false;      // 2/3-rule mask folded into the kinetic substep

  void validate() const;
};

enum class RunStatus { completed, blowup_detected, boundary_violation, dt_underflow };
const char* to_string(RunStatus s);

// Monitor time series plus termination state. All series share one length;
// times are the actual step times nearest the sampling cadence.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
  std::vector<double> action_value;
  std::vector<double> nehari_value;
  std::vector<double> virial_p_value;
  std::vector<double> moment_f;
  std::vector<double> grad_sq;
  std::vector<double> boundary;
  RunStatus status = RunStatus::completed;
  double halt_time = 0.0;
  double omega = 0.0;
  double p = 0.0;
  Field final_state;  // may be non-finite after a blow-up halt
};

// One Strang step B(dt/2) A(dt) B(dt/2): A is the exact free flow in
// frequency space, B the exact pointwise potential+nonlinearity phase.
// Exactly L2-norm preserving. Negative dt runs the reverse flow.
Field strang_step(const Field& u, double dt, const ModelParams& mp, bool linear_only = false);

// dt' = min(dt0, 0.1 / (1 + max|u|^{p-1})); the dt_floor cut is reported by
// evolve as a dt_underflow halt
double adaptive_dt(const Field& u, const ModelParams& mp, const EvolveOptions& opts);

TrajectoryRecord evolve(const Field& u0, const ModelParams& mp, const EvolveOptions& opts);

// CSV export: header t,mass,energy,action,nehari,virial_p,moment_f,grad_sq,
// boundary,status; one row per sample
void write_trajectory_csv(const TrajectoryRecord& rec, const std::string& path);
std::string trajectory_csv(const TrajectoryRecord& rec);

}  // namespace nls
