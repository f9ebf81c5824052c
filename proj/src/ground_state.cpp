#include "nlslab/ground_state.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nlslab/format.hpp"
#include "nlslab/kernels.hpp"
#include "nlslab/spectral.hpp"

namespace nls {

void GroundStateOptions::validate() const {
  if (!(step_size > 0.0)) throw std::invalid_argument("ground: step_size must be positive");
  if (!(residual_tol > 0.0)) throw std::invalid_argument("ground: residual_tol must be positive");
  if (recenter_every < 1) throw std::invalid_argument("ground: recenter_every must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("ground: max_iters must be >= 1");
}

Field nehari_project(const Field& f, const ModelParams& mp) {
  const double lam = nehari_scale(f, mp);
  Field out = f;
  kern::active().scale(out.data(), lam, out.size());
  return out;
}

Field center_transverse(const Field& f) {
  const int nd = f.grid->n_dims();
  std::vector<double> y(static_cast<size_t>(nd - 1), 0.0);
  bool move = false;
  for (int j = 0; j + 1 < nd; ++j) {
    const double c = centroid(f, j);
    if (std::abs(c) > 1e-14 * f.grid->axis(j).half_length) {
      y[static_cast<size_t>(j)] = -c;
      move = true;
    }
  }
  return move ? translate(f, y) : f;
}

namespace {

void drop_imaginary(Field& f) {
  for (auto& z : f.values) z = cplx(z.real(), 0.0);
}

struct Norms {
  double q;       // ||grad||^2 + ||x_N f||^2 + omega ||f||^2
  double lp;      // ||f||_{p+1}^{p+1}
  double mass;
};

Norms measure(const Field& f, const ModelParams& mp) {
  const Grid& g = *f.grid;
  const auto& k = kern::active();
  aligned_vector<cplx> hat(f.values);
  g.forward(hat.data());
  const double norm = g.cell_volume() / static_cast<double>(g.size());
  const double grads = k.weighted_sum_abs_sq(hat.data(), g.ksq().data(), hat.size()) * norm;
  const double m = k.sum_abs_sq(f.data(), f.size()) * g.cell_volume();
  const double xn = k.weighted_sum_abs_sq(f.data(), g.potential().data(), f.size()) *
                    g.cell_volume();
  const double lp = k.sum_abs_pow(f.data(), mp.p + 1.0, f.size()) * g.cell_volume();
  return {grads + xn + mp.omega * m, lp, m};
}

}  // namespace

GroundState solve_ground_state(const ModelParams& mp, std::shared_ptr<const Grid> grid,
                               const GroundStateOptions& opts, const Field* initial) {
  opts.validate();
  const Grid& g = *grid;
  const auto& k = kern::active();

  Field v = Field::zeros(grid);
  if (initial) {
    if (initial->grid.get() != grid.get())
      throw std::invalid_argument("ground: initial iterate lives on a different grid");
    v = *initial;
    drop_imaginary(v);
  } else {
    std::vector<double> widths = opts.seed_width;
    if (widths.empty()) widths.assign(static_cast<size_t>(g.n_dims()), 1.0);
    v = gaussian_field(grid, 1.0, widths);
  }
  v = nehari_project(v, mp);

  aligned_vector<double> precond;
  if (opts.precondition) {
    precond.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      precond[i] = 1.0 / (1.0 + mp.omega + g.ksq()[i]);
  }

  auto pack = [&](Field profile, double level, double res, double kval, int iters,
                  std::vector<double> trace) {
    GroundState gs;
    gs.profile = std::move(profile);
    gs.omega = mp.omega;
    gs.level = level;
    gs.residual = res;
    gs.nehari_value = kval;
    gs.iterations = iters;
    gs.action_trace = std::move(trace);
    return gs;
  };

  Norms nv = measure(v, mp);
  double s_prev = 0.5 * nv.q - nv.lp / (mp.p + 1.0);
  // the inverse-Helmholtz metric normalizes the quadratic part to O(1), so
  // its natural step is O(1); the halving guard walks it down from there
  double tau = opts.precondition ? std::max(opts.step_size, 0.25) : opts.step_size;
  std::vector<double> trace;
  if (opts.record_trace) trace.push_back(s_prev);

  double res = 0.0;
  int iter = 0;
  for (; iter <= opts.max_iters; ++iter) {
    // S'(v) with one forward/backward pair
    Field grad = v;
    g.forward(grad.data());
    kern::active().mul_real(grad.data(), g.ksq().data(), grad.size());
    g.inverse(grad.data());
    k.action_gradient_accum(grad.data(), v.data(), g.potential().data(), mp.omega, mp.p,
                            grad.size());
    res = std::sqrt(k.sum_abs_sq(grad.data(), grad.size()) /
                    k.sum_abs_sq(v.data(), v.size()));
    if (res <= opts.residual_tol) break;
    if (iter == opts.max_iters) break;

    if (opts.precondition) {
      g.forward(grad.data());
      k.mul_real(grad.data(), precond.data(), grad.size());
      g.inverse(grad.data());
    }

    // descend, recenter, project; halve tau until the projected action drops
    while (true) {
      Field w = v;
      k.axpy(w.data(), grad.data(), -tau, w.size());
      drop_imaginary(w);
      if ((iter + 1) % opts.recenter_every == 0) {
        w = center_transverse(w);
        drop_imaginary(w);
      }
      if (opts.dealias) {
        apply_dealias(w);
        drop_imaginary(w);
      }
      const Norms nw = measure(w, mp);
      if (!(nw.lp > 0.0))
        throw NonconvergedError("ground: iterate collapsed to zero",
                                pack(v, s_prev, res, 0.0, iter, trace));
      const double lam = std::pow(nw.q / nw.lp, 1.0 / (mp.p - 1.0));
      const double s_new = 0.5 * lam * lam * nw.q -
                           std::pow(lam, mp.p + 1.0) * nw.lp / (mp.p + 1.0);
      if (s_new <= s_prev + 1e-13 * std::max(1.0, std::abs(s_prev))) {
        k.scale(w.data(), lam, w.size());
        v = std::move(w);
        s_prev = s_new;
        break;
      }
      tau *= 0.5;
      if (tau < 1e-10)
        throw NonconvergedError("ground: step size underflow in descent guard",
                                pack(v, s_prev, res, 0.0, iter, trace));
    }
    if (opts.record_trace) trace.push_back(s_prev);
  }

  if (res > opts.residual_tol)
    throw NonconvergedError(
        "ground: no convergence to residual " + format_double(opts.residual_tol) + " in " +
            std::to_string(opts.max_iters) + " iterations (residual " + format_double(res) + ")",
        pack(v, s_prev, res, nehari(v, mp), iter, trace));

  // sign convention: real nonnegative representative
  double total = 0.0;
  for (const auto& z : v.values) total += z.real();
  if (total < 0.0) k.scale(v.data(), -1.0, v.size());

  return pack(std::move(v), s_prev, res, nehari(v, mp), iter, std::move(trace));
}

}  // namespace nls
