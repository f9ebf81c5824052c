#include "nlslab/evolve.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "nlslab/format.hpp"
#include "nlslab/kernels.hpp"
#include "nlslab/spectral.hpp"

namespace nls {

void EvolveOptions::validate() const {
  if (!(dt0 > 0.0)) throw std::invalid_argument("evolve: dt0 must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("evolve: t_end must be nonnegative");
  if (!(sample_every > 0.0)) throw std::invalid_argument("evolve: sample_every must be positive");
  if (!(dt_floor > 0.0) || dt_floor >= dt0)
    throw std::invalid_argument("evolve: need 0 < dt_floor < dt0");
  if (!(grad_blowup_factor > 1.0))
    throw std::invalid_argument("evolve: grad_blowup_factor must exceed 1");
  if (!(boundary_mass_cap > 0.0))
    throw std::invalid_argument("evolve: boundary_mass_cap must be positive");
  if (!(boundary_margin > 0.0 && boundary_margin < 0.5))
    throw std::invalid_argument("evolve: boundary_margin must be in (0, 0.5)");
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::boundary_violation: return "boundary_violation";
    case RunStatus::dt_underflow: return "dt_underflow";
  }
  return "unknown";
}

namespace {

// Owns the multiplier caches for repeated stepping on one grid.
class Stepper {
 public:
  Stepper(std::shared_ptr<const Grid> grid, const ModelParams& mp, bool linear_only,
          bool dealias)
      : grid_(std::move(grid)), mp_(mp), linear_only_(linear_only), dealias_(dealias) {}

  void step(Field& u, double dt) {
    half_potential(u, dt);
    kinetic(u, dt);
    half_potential(u, dt);
  }

 private:
  void half_potential(Field& u, double dt) {
    const auto& pot = grid_->potential();
    if (linear_only_) {
      if (dt != cached_b_dt_) {
        b_mult_.resize(grid_->size());
        for (std::size_t i = 0; i < grid_->size(); ++i) {
          const double th = -0.5 * dt * pot[i];
          b_mult_[i] = cplx(std::cos(th), std::sin(th));
        }
        cached_b_dt_ = dt;
      }
      kern::active().mul_cplx(u.data(), b_mult_.data(), u.size());
    } else {
      kern::active().nonlinear_phase(u.data(), pot.data(), 0.5 * dt, mp_.p, u.size());
    }
  }

  void kinetic(Field& u, double dt) {
    if (dt != cached_a_dt_) {
      a_mult_.resize(grid_->size());
      const auto& ksq = grid_->ksq();
      const auto& mask = grid_->dealias_mask();
      for (std::size_t i = 0; i < grid_->size(); ++i) {
        const double th = -dt * ksq[i];
        a_mult_[i] = cplx(std::cos(th), std::sin(th));
        if (dealias_) a_mult_[i] *= mask[i];
      }
      cached_a_dt_ = dt;
    }
    grid_->forward(u.data());
    kern::active().mul_cplx(u.data(), a_mult_.data(), u.size());
    grid_->inverse(u.data());
  }

  std::shared_ptr<const Grid> grid_;
  ModelParams mp_;
  bool linear_only_;
  bool dealias_;
  double cached_a_dt_ = 0.0;
  double cached_b_dt_ = 0.0;
  aligned_vector<cplx> a_mult_;
  aligned_vector<cplx> b_mult_;
};

double grad_sq_only(const Field& u) {
  const Grid& g = *u.grid;
  aligned_vector<cplx> hat(u.values);
  g.forward(hat.data());
  return kern::active().weighted_sum_abs_sq(hat.data(), g.ksq().data(), hat.size()) *
         g.cell_volume() / static_cast<double>(g.size());
}

}  // namespace

Field strang_step(const Field& u, double dt, const ModelParams& mp, bool linear_only) {
  if (dt == 0.0) throw std::invalid_argument("strang_step: dt must be nonzero");
  Stepper st(u.grid, mp, linear_only, false);
  Field out = u;
  st.step(out, dt);
  return out;
}

double adaptive_dt(const Field& u, const ModelParams& mp, const EvolveOptions& opts) {
  const double amax_sq = kern::active().max_abs_sq(u.data(), u.size());
  const double c_adapt = 0.1;
  return std::min(opts.dt0, c_adapt / (1.0 + kern::amp_pow(amax_sq, mp.p)));
}

TrajectoryRecord evolve(const Field& u0, const ModelParams& mp, const EvolveOptions& opts) {
  opts.validate();
  if (!u0.finite()) throw std::invalid_argument("evolve: initial state is not finite");

  TrajectoryRecord rec;
  rec.omega = mp.omega;
  rec.p = mp.p;

  auto sample = [&](double t, const FunctionalBundle& b) {
    rec.times.push_back(t);
    rec.mass.push_back(b.mass);
    rec.energy.push_back(b.energy);
    rec.action_value.push_back(b.action);
    rec.nehari_value.push_back(b.nehari);
    rec.virial_p_value.push_back(b.virial_p);
    rec.moment_f.push_back(b.moment_f);
    rec.grad_sq.push_back(b.grad_sq);
    rec.boundary.push_back(b.boundary);
  };

  Field u = u0;
  const FunctionalBundle b0 = all_functionals(u, mp, opts.boundary_margin);
  sample(0.0, b0);
  const double grad0 = b0.grad_sq;
  const double amax0_sq = kern::active().max_abs_sq(u.data(), u.size());

  if (opts.t_end <= 0.0) {
    rec.status = RunStatus::completed;
    rec.halt_time = 0.0;
    rec.final_state = std::move(u);
    return rec;
  }

  Stepper stepper(u.grid, mp, opts.linear_only, opts.dealias);
  double t = 0.0;
  double next_sample = opts.sample_every;
  rec.status = RunStatus::completed;

  while (t < opts.t_end - 1e-12) {
    double dt = adaptive_dt(u, mp, opts);
    if (dt < opts.dt_floor) {
      rec.status = RunStatus::dt_underflow;
      break;
    }
    if (t + dt > opts.t_end) dt = opts.t_end - t;
    stepper.step(u, dt);
    t += dt;

    const double mass_now = kern::active().sum_abs_sq(u.data(), u.size());
    if (!std::isfinite(mass_now)) {
      rec.status = RunStatus::blowup_detected;
      break;
    }

    // the gradient spike near collapse is narrower than the sampling cadence,
    // so once the amplitude has clearly grown the detector runs every step
    const bool amplified =
        kern::active().max_abs_sq(u.data(), u.size()) > 4.0 * amax0_sq;
    const bool due = t >= next_sample - 1e-12 || t >= opts.t_end - 1e-12;
    if (!due && !amplified) continue;

    if (due) {
      const FunctionalBundle b = all_functionals(u, mp, opts.boundary_margin);
      sample(t, b);
      while (next_sample <= t + 1e-12) next_sample += opts.sample_every;
      if (b.grad_sq > opts.grad_blowup_factor * grad0) {
        rec.status = RunStatus::blowup_detected;
        break;
      }
      if (b.boundary > opts.boundary_mass_cap) {
        rec.status = RunStatus::boundary_violation;
        break;
      }
    } else {  // amplified, between samples: gradient check only
      const double gs = grad_sq_only(u);
      if (!std::isfinite(gs) || gs > opts.grad_blowup_factor * grad0) {
        sample(t, all_functionals(u, mp, opts.boundary_margin));
        rec.status = RunStatus::blowup_detected;
        break;
      }
    }
  }

  rec.halt_time = t;
  rec.final_state = std::move(u);
  return rec;
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
  const auto& fmt = format_double;
  std::string out = "t,mass,energy,action,nehari,virial_p,moment_f,grad_sq,boundary,status\n";
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    out += fmt(rec.times[i]);
    out += ',';
    out += fmt(rec.mass[i]);
    out += ',';
    out += fmt(rec.energy[i]);
    out += ',';
    out += fmt(rec.action_value[i]);
    out += ',';
    out += fmt(rec.nehari_value[i]);
    out += ',';
    out += fmt(rec.virial_p_value[i]);
    out += ',';
    out += fmt(rec.moment_f[i]);
    out += ',';
    out += fmt(rec.grad_sq[i]);
    out += ',';
    out += fmt(rec.boundary[i]);
    out += ',';
    out += to_string(rec.status);
    out += '\n';
  }
  return out;
}

void write_trajectory_csv(const TrajectoryRecord& rec, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << trajectory_csv(rec);
}

}  // namespace nls
