#pragma once

#include "nlslab/field.hpp"

namespace nls {

// Model exponent p, frequency omega, dimension N. Valid range: p > 1
// (and p < 1 + 4/(N-2) for N >= 3), omega > -1.
struct ModelParams {
  int n_dims;
  double p;
  double omega;

  ModelParams(int n_dims_, double p_, double omega_);

  double alpha() const { return 0.5 * (n_dims - 1) * (p - 1.0); }
  // L2-critical or supercritical in dimension N-1, i.e. alpha >= 2
  bool instability_regime() const { return p >= 1.0 + 4.0 / (n_dims - 1) - 1e-12; }
};

double mass(const Field& f);  // ||f||_{L2}^2

// ||grad f||^2 + ||f||^2 + ||x_N f||^2
double x_norm_sq(const Field& f);

// quadratic part ||grad f||^2 + ||x_N f||^2 + omega ||f||^2
double q_form(const Field& f, double omega);

// E = 1/2 ||grad f||^2 + 1/2 ||x_N f||^2 - 1/(p+1) ||f||_{p+1}^{p+1}
double energy(const Field& f, const ModelParams& mp);

// S_omega = E + omega/2 ||f||^2
double action(const Field& f, const ModelParams& mp);

// K_omega = ||grad f||^2 + ||x_N f||^2 + omega ||f||^2 - ||f||_{p+1}^{p+1}
double nehari(const Field& f, const ModelParams& mp);

// J_omega = (p-1)/(2(p+1)) * q_form
double j_functional(const Field& f, const ModelParams& mp);

// P = 1/2 sum_{j<N} ||d_j f||^2 - alpha/(2(p+1)) ||f||_{p+1}^{p+1}
double virial_p(const Field& f, const ModelParams& mp);

// S_omega'(f) = -lap f + x_N^2 f + omega f - |f|^{p-1} f
Field action_gradient(const Field& f, const ModelParams& mp);

// lambda0 = (q_form / ||f||_{p+1}^{p+1})^{1/(p-1)}, the positive root of
// nehari(lambda f) = 0 along the ray
double nehari_scale(const Field& f, const ModelParams& mp);

struct Rescaled {
  Field field;
  double boundary_mass;
  bool boundary_warning;  // support no longer well inside the box
};

// v^lambda(x) = lambda^{(N-1)/2} v(lambda x_1, ..., lambda x_{N-1}, x_N),
// trigonometric interpolation on the transverse axes
Rescaled transverse_rescale(const Field& f, double lambda);

// 2 ||d_N f|| ||x_N f|| - ||f||^2, nonnegative up to quadrature error
double heisenberg_gap(const Field& f);

// everything the trajectory monitors need, with a single forward transform
struct FunctionalBundle {
  double mass;
  double energy;
  double action;
  double nehari;
  double virial_p;
  double moment_f;  // sum of transverse second moments
  double grad_sq;   // ||grad f||^2
  double boundary;
};

FunctionalBundle all_functionals(const Field& f, const ModelParams& mp,
                                 double boundary_margin);

}  // namespace nls
