#pragma once

#include <stdexcept>
#include <vector>

#include "nlslab/functionals.hpp"

namespace nls {

struct GroundStateOptions {
  double step_size = 0.01;
  int max_iters = 60000;
  double residual_tol = 1e-6;
  int recenter_every = 10;
  std::vector<double> seed_width;  // empty: width 1 per axis
  bool precondition = false;       // inverse-Helmholtz metric 1/(1+omega+|k|^2)
  bool dealias = false;            // 2/3-rule mask on the iterates
  bool record_trace = false;       // keep the per-iterate action series

  void validate() const;
};

// Converged Nehari-manifold minimizer: real nonnegative profile with
// K_omega ~ 0, level = S_omega(profile) = d(omega), residual
// ||S_omega'(phi)|| / ||phi|| below tolerance.
struct GroundState {
  Field profile;
  double omega = 0.0;
  double level = 0.0;
  double residual = 0.0;
  double nehari_value = 0.0;
  int iterations = 0;
  std::vector<double> action_trace;
};

struct NonconvergedError : std::runtime_error {
  NonconvergedError(std::string msg, GroundState best_so_far)
      : std::runtime_error(std::move(msg)), best(std::move(best_so_far)) {}
  GroundState best;
};

// lambda0(f) * f, the exact projection onto the Nehari manifold along the ray
Field nehari_project(const Field& f, const ModelParams& mp);

// shift on transverse axes so the |f|^2 centroid sits at the origin
Field center_transverse(const Field& f);

// projected gradient flow v <- project(center(v - tau S'(v))) from a real
// Gaussian seed (or the given initial iterate), with step halving whenever
// the projected action increases
GroundState solve_ground_state(const ModelParams& mp, std::shared_ptr<const Grid> grid,
                               const GroundStateOptions& opts,
                               const Field* initial = nullptr);

}  // namespace nls
