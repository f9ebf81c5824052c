#pragma once

#include <string>
#include <vector>

#include "nlslab/evolve.hpp"
#include "nlslab/ground_state.hpp"

namespace nls {

// F = sum of transverse second moments sum_{j<N} ||x_j f||^2
double moment_F(const Field& f);

// momentum form of F': 4 sum_{j<N} Im int conj(u) x_j d_j u
double momentum_f_prime(const Field& f);

// Second-difference check of F'' = 16 P along a uniformly sampled record.
struct VirialReport {
  std::vector<double> times;
  std::vector<double> F_series;
  std::vector<double> F_second_diff;     // 4th-order stencil, NaN at the two-sample margins
  std::vector<double> sixteen_p_series;  // 16 P(u(t))
  double max_residual = 0.0;             // max interior |F'' - 16P|
  double rel_residual = 0.0;             // max_residual / max(1, max|16P|)
};

VirialReport virial_check(const TrajectoryRecord& rec);

// membership in B_omega = {S_omega < d, P < 0}, with a strict 1e-12 margin
bool in_blowup_set(const Field& f, const ModelParams& mp, double d_level);

// S_omega(f) - P(f) - d_level, nonnegative whenever P(f) <= 0 (alpha >= 2)
double lemma1_gap(const Field& f, const ModelParams& mp, double d_level);

// positive root of 8 gap t^2 + f0' t + f0 = 0; requires gap < 0, f0 > 0
double tmax_upper_bound(double f0, double f0_prime, double gap);

struct BlowupCertificate {
  double s_omega_u0 = 0.0;
  double d_level = 0.0;
  double p_u0 = 0.0;
  double gap = 0.0;  // s_omega_u0 - d_level, negative for a valid certificate
  double f0 = 0.0;
  double f0_prime = 0.0;           // one-sided 2nd-order difference, source of record
  double f0_prime_momentum = 0.0;  // analytic momentum integral cross-check
  double t_upper = 0.0;
  double halted_at = 0.0;
  double slack = 1.1;
  bool in_set_along_flow = false;
  bool concavity_ok = false;  // F'' <= 16 gap + 5% at interior samples until halt
  std::vector<double> f_second_diff;  // nonuniform 3-point estimates, NaN margins
  RunStatus status = RunStatus::completed;
  bool inconclusive = false;  // boundary_violation: domain artifact, not blow-up
  bool valid = false;
};

BlowupCertificate certify_blowup(const Field& u0, const ModelParams& mp,
                                 const GroundState& ground, const TrajectoryRecord& rec,
                                 double slack = 1.1);

std::string to_json(const VirialReport& r);
std::string to_json(const BlowupCertificate& c);

// trajectory CSV with F'' and 16P columns appended
void write_trajectory_with_virial_csv(const TrajectoryRecord& rec, const VirialReport& vr,
                                      const std::string& path);

}  // namespace nls
