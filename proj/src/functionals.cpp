#include "nlslab/functionals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nlslab/kernels.hpp"
#include "nlslab/spectral.hpp"

namespace nls {

ModelParams::ModelParams(int n_dims_, double p_, double omega_)
    : n_dims(n_dims_), p(p_), omega(omega_) {
  if (n_dims < 2) throw std::invalid_argument("params: n_dims must be >= 2");
  if (!(p > 1.0)) throw std::invalid_argument("params: p must exceed 1");
  if (n_dims >= 3 && !(p < 1.0 + 4.0 / (n_dims - 2)))
    throw std::invalid_argument("params: p must be below 1 + 4/(N-2) = " +
                                std::to_string(1.0 + 4.0 / (n_dims - 2)));
  if (!(omega > -1.0))
    throw std::invalid_argument("params: omega must exceed -1, got " + std::to_string(omega));
}

double mass(const Field& f) { return lp_norm_pp(f, 2.0); }

double x_norm_sq(const Field& f) {
  const auto grads = gradient_norms_sq(f);
  double g = 0.0;
  for (double v : grads) g += v;
  return g + mass(f) + weighted_moment(f, f.grid->n_dims() - 1);
}

double q_form(const Field& f, double omega) {
  const auto grads = gradient_norms_sq(f);
  double g = 0.0;
  for (double v : grads) g += v;
  return g + weighted_moment(f, f.grid->n_dims() - 1) + omega * mass(f);
}

double energy(const Field& f, const ModelParams& mp) {
  const auto grads = gradient_norms_sq(f);
  double g = 0.0;
  for (double v : grads) g += v;
  return 0.5 * g + 0.5 * weighted_moment(f, f.grid->n_dims() - 1) -
         lp_norm_pp(f, mp.p + 1.0) / (mp.p + 1.0);
}

double action(const Field& f, const ModelParams& mp) {
  return energy(f, mp) + 0.5 * mp.omega * mass(f);
}

double nehari(const Field& f, const ModelParams& mp) {
  return q_form(f, mp.omega) - lp_norm_pp(f, mp.p + 1.0);
}

double j_functional(const Field& f, const ModelParams& mp) {
  return (mp.p - 1.0) / (2.0 * (mp.p + 1.0)) * q_form(f, mp.omega);
}

double virial_p(const Field& f, const ModelParams& mp) {
  const auto grads = gradient_norms_sq(f);
  double gt = 0.0;
  for (int j = 0; j + 1 < f.grid->n_dims(); ++j) gt += grads[static_cast<size_t>(j)];
  return 0.5 * gt - mp.alpha() / (2.0 * (mp.p + 1.0)) * lp_norm_pp(f, mp.p + 1.0);
}

Field action_gradient(const Field& f, const ModelParams& mp) {
  const Grid& g = *f.grid;
  Field out = f;
  g.forward(out.data());
  kern::active().mul_real(out.data(), g.ksq().data(), out.size());
  g.inverse(out.data());  // now -lap f
  kern::active().action_gradient_accum(out.data(), f.data(), g.potential().data(),
                                       mp.omega, mp.p, out.size());
  return out;
}

double nehari_scale(const Field& f, const ModelParams& mp) {
  const double lp = lp_norm_pp(f, mp.p + 1.0);
  if (!(lp > 0.0))
    throw std::invalid_argument("nehari_scale: no Nehari ray intersection (zero field)");
  const double q = q_form(f, mp.omega);
  return std::pow(q / lp, 1.0 / (mp.p - 1.0));
}

namespace {

// modified Dirichlet kernel: the trig interpolation weight of an even-n
// periodic grid, with the Nyquist mode split symmetrically (real-valued)
double dirichlet(double delta, double half_length, int n) {
  const double period = 2.0 * half_length;
  const double r = std::remainder(delta, period);
  const double theta = std::numbers::pi * r / half_length;
  if (std::abs(theta) < 1e-13) return 1.0;
  return std::sin(0.5 * n * theta) / std::tan(0.5 * theta) / n;
}

// out <- R * in along one axis, R row-major n x n
void apply_matrix_axis(Field& f, int axis, const std::vector<double>& R) {
  const Grid& g = *f.grid;
  const std::size_t n = static_cast<std::size_t>(g.axis(axis).points);
  const std::size_t stride = g.stride(axis);
  const std::size_t lines = f.size() / n;
  std::vector<cplx> in(n), out(n);
  for (std::size_t l = 0; l < lines; ++l) {
    const std::size_t outer = l / stride;
    const std::size_t inner = l % stride;
    const std::size_t base = outer * n * stride + inner;
    for (std::size_t m = 0; m < n; ++m) in[m] = f.values[base + m * stride];
    for (std::size_t m = 0; m < n; ++m) {
      cplx acc{0.0, 0.0};
      const double* row = R.data() + m * n;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * in[j];
      out[m] = acc;
    }
    for (std::size_t m = 0; m < n; ++m) f.values[base + m * stride] = out[m];
  }
}

}  // namespace

Rescaled transverse_rescale(const Field& f, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("transverse_rescale: lambda must be positive");
  const Grid& g = *f.grid;
  Rescaled r{f, 0.0, false};
  if (lambda != 1.0) {
    for (int axis = 0; axis + 1 < g.n_dims(); ++axis) {
      const int n = g.axis(axis).points;
      const auto& x = g.coord(axis);
      std::vector<double> R(static_cast<size_t>(n) * static_cast<size_t>(n));
      for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j)
          R[static_cast<size_t>(m) * n + j] =
              dirichlet(lambda * x[static_cast<size_t>(m)] - x[static_cast<size_t>(j)],
                        g.axis(axis).half_length, n);
      apply_matrix_axis(r.field, axis, R);
      kern::active().scale(r.field.data(), std::sqrt(lambda), r.field.size());
    }
  }
  r.boundary_mass = boundary_mass(r.field, 0.1);
  const double total = mass(r.field);
  r.boundary_warning = total > 0.0 && r.boundary_mass > 1e-8 * total;
  return r;
}

double heisenberg_gap(const Field& f) {
  const int last = f.grid->n_dims() - 1;
  const double dn = gradient_norms_sq(f)[static_cast<size_t>(last)];
  const double xn = weighted_moment(f, last);
  return 2.0 * std::sqrt(dn) * std::sqrt(xn) - mass(f);
}

FunctionalBundle all_functionals(const Field& f, const ModelParams& mp,
                                 double boundary_margin) {
  const Grid& g = *f.grid;
  const auto& k = kern::active();
  aligned_vector<cplx> hat(f.values);
  g.forward(hat.data());
  const double norm = g.cell_volume() / static_cast<double>(g.size());

  FunctionalBundle b{};
  double grads = 0.0, grads_t = 0.0;
  for (int j = 0; j < g.n_dims(); ++j) {
    const double gj = k.weighted_sum_abs_sq(hat.data(), g.kj_sq(j).data(), hat.size()) * norm;
    grads += gj;
    if (j + 1 < g.n_dims()) grads_t += gj;
  }
  b.grad_sq = grads;
  b.mass = k.sum_abs_sq(f.data(), f.size()) * g.cell_volume();
  const double lp = k.sum_abs_pow(f.data(), mp.p + 1.0, f.size()) * g.cell_volume();
  const double xn = k.weighted_sum_abs_sq(f.data(), g.potential().data(), f.size()) *
                    g.cell_volume();
  double mom = 0.0;
  for (int j = 0; j + 1 < g.n_dims(); ++j)
    mom += k.weighted_sum_abs_sq(f.data(), g.xj_sq(j).data(), f.size()) * g.cell_volume();

  b.energy = 0.5 * grads + 0.5 * xn - lp / (mp.p + 1.0);
  b.action = b.energy + 0.5 * mp.omega * b.mass;
  b.nehari = grads + xn + mp.omega * b.mass - lp;
  b.virial_p = 0.5 * grads_t - mp.alpha() / (2.0 * (mp.p + 1.0)) * lp;
  b.moment_f = mom;
  b.boundary = boundary_mass(f, boundary_margin);
  return b;
}

}  // namespace nls
