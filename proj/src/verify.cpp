#include "nlslab/verify.hpp"

#include <cmath>
#include <limits>

#include "nlslab/diagnostics.hpp"
#include "nlslab/kernels.hpp"
#include "nlslab/random_fields.hpp"
#include "nlslab/spectral.hpp"

namespace nls {

namespace {

struct Acc {
  double worst = 0.0;
  void track(double err) { worst = std::max(worst, err); }
};

double rel_err(double got, double want, double scale_floor = 1.0) {
  return std::abs(got - want) / std::max(scale_floor, std::abs(want));
}

}  // namespace

std::vector<CheckResult> identity_suite(std::shared_ptr<const Grid> grid,
                                        const ModelParams& mp, std::uint64_t seed,
                                        int n_fields) {
  FieldStream stream(seed);
  const double fd_h = 1e-4;

  Acc j1, euler, ray, virial_fd, heis, homog, gauge, shift, grad_fd;

  for (int i = 0; i < n_fields; ++i) {
    const Field v = stream.next(grid);
    const double s = action(v, mp);
    const double kv = nehari(v, mp);
    const double q = q_form(v, mp.omega);
    const double lp = lp_norm_pp(v, mp.p + 1.0);

    // J1
    j1.track(rel_err(j_functional(v, mp), s - kv / (mp.p + 1.0)));

    // Euler identity
    const Field g = action_gradient(v, mp);
    const double pairing =
        kern::active().dot(g.data(), v.data(), v.size()).re * grid->cell_volume();
    euler.track(std::abs(pairing - kv) / std::max(1.0, q));

    // exact ray projection
    const double lam0 = nehari_scale(v, mp);
    Field proj = v;
    kern::active().scale(proj.data(), lam0, proj.size());
    ray.track(std::abs(nehari(proj, mp)) / std::max(1.0, q));

    // P against the transverse-scaling derivative of E
    const double ep = energy(transverse_rescale(v, 1.0 + fd_h).field, mp);
    const double em = energy(transverse_rescale(v, 1.0 - fd_h).field, mp);
    const double p_fd = 0.5 * (ep - em) / (2.0 * fd_h);
    virial_fd.track(rel_err(virial_p(v, mp), p_fd));

    // Heisenberg
    heis.track(-heisenberg_gap(v));

    // homogeneity of the action along the ray
    for (double lam : {0.5, 1.0, 2.0}) {
      Field w = v;
      kern::active().scale(w.data(), lam, w.size());
      const double poly = 0.5 * lam * lam * q - std::pow(lam, mp.p + 1.0) * lp / (mp.p + 1.0);
      homog.track(rel_err(action(w, mp), poly));
    }

    // gauge invariance
    {
      Field w = v;
      const cplx phase = std::polar(1.0, 0.7);
      for (auto& z : w.values) z *= phase;
      gauge.track(rel_err(action(w, mp), s));
      gauge.track(rel_err(virial_p(w, mp), virial_p(v, mp)));
      gauge.track(rel_err(nehari(w, mp), kv));
    }

    // transverse translation invariance, deliberately off-lattice
    {
      std::vector<double> y(static_cast<size_t>(grid->n_dims() - 1));
      for (auto& o : y) o = stream.uniform(-1.0, 1.0) * 0.77;
      const Field w = translate(v, y);
      shift.track(rel_err(action(w, mp), s));
      shift.track(rel_err(energy(w, mp), energy(v, mp)));
      shift.track(rel_err(nehari(w, mp), kv));
      shift.track(rel_err(virial_p(w, mp), virial_p(v, mp)));
      shift.track(rel_err(j_functional(w, mp), j_functional(v, mp)));
    }

    // gradient pairing against finite differences along a random direction
    {
      Field h = stream.next(grid);
      const double scale = std::sqrt(mass(v) / mass(h));
      kern::active().scale(h.data(), scale, h.size());
      Field plus = v, minus = v;
      kern::active().axpy(plus.data(), h.data(), fd_h, plus.size());
      kern::active().axpy(minus.data(), h.data(), -fd_h, minus.size());
      const double fd = (action(plus, mp) - action(minus, mp)) / (2.0 * fd_h);
      const double pair =
          kern::active().dot(g.data(), h.data(), h.size()).re * grid->cell_volume();
      grad_fd.track(std::abs(pair - fd) / std::max(1.0, std::abs(fd)));
    }
  }

  auto mk = [&](std::string name, const Acc& a, double tol) {
    CheckResult r;
    r.name = std::move(name);
    r.worst = a.worst;
    r.tol = tol;
    r.pass = a.worst <= tol;
    r.count = n_fields;
    return r;
  };
  return {
      mk("j_functional_identity", j1, 1e-12),
      mk("euler_identity", euler, 1e-10),
      mk("nehari_ray_projection", ray, 1e-10),
      mk("virial_scaling_derivative", virial_fd, 1e-6),
      mk("heisenberg_nonnegative", heis, 1e-8),
      mk("action_homogeneity", homog, 1e-10),
      mk("gauge_invariance", gauge, 1e-10),
      mk("translate_invariance", shift, 1e-10),
      mk("gradient_consistency", grad_fd, 1e-6),
  };
}

CheckResult lemma_gap_sweep(std::shared_ptr<const Grid> grid, const ModelParams& mp,
                            double d_level, std::uint64_t seed, int n_fields) {
  FieldStream stream(seed);
  const double tol = 1e-6 * std::max(1.0, d_level);
  CheckResult r;
  r.name = "lemma_gap_sweep";
  r.tol = tol;
  r.count = n_fields;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_fields; ++i) {
    Field v = stream.next(grid);
    // amplitude scaling drives P below zero: P(cv) = c^2 A - c^{p+1} B
    const auto grads = gradient_norms_sq(v);
    double a = 0.0;
    for (int j = 0; j + 1 < grid->n_dims(); ++j) a += 0.5 * grads[static_cast<size_t>(j)];
    const double b = mp.alpha() / (2.0 * (mp.p + 1.0)) * lp_norm_pp(v, mp.p + 1.0);
    const double c = std::pow(a / b, 1.0 / (mp.p - 1.0)) * (1.05 + 0.45 * stream.uniform());
    kern::active().scale(v.data(), c, v.size());
    worst = std::min(worst, lemma1_gap(v, mp, d_level));
  }
  r.worst = worst;
  r.pass = worst >= -tol;
  return r;
}

}  // namespace nls
