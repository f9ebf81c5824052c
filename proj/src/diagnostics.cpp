#include "nlslab/diagnostics.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "nlslab/format.hpp"
#include "nlslab/kernels.hpp"
#include "nlslab/spectral.hpp"

namespace nls {

double moment_F(const Field& f) {
  double acc = 0.0;
  for (int j = 0; j + 1 < f.grid->n_dims(); ++j) acc += weighted_moment(f, j);
  return acc;
}

double momentum_f_prime(const Field& f) {
  const Grid& g = *f.grid;
  aligned_vector<cplx> hat(f.values);
  g.forward(hat.data());
  double acc = 0.0;
  for (int j = 0; j + 1 < g.n_dims(); ++j) {
    // x_j d_j u in physical space
    Field der = Field::zeros(f.grid);
    const auto& k = g.wavenumber(j);
    const std::size_t stride = g.stride(j);
    const std::size_t n = static_cast<std::size_t>(g.axis(j).points);
    for (std::size_t idx = 0; idx < hat.size(); ++idx) {
      const double kj = k[(idx / stride) % n];
      const cplx h = hat[idx];
      der.values[idx] = cplx(-kj * h.imag(), kj * h.real());  // i k_j * hat
    }
    g.inverse(der.data());
    const auto& x = g.coord(j);
    for (std::size_t idx = 0; idx < der.size(); ++idx)
      der.values[idx] *= x[(idx / stride) % n];
    const auto d = kern::active().dot(f.data(), der.data(), f.size());
    acc += d.im * g.cell_volume();
  }
  return 4.0 * acc;
}

VirialReport virial_check(const TrajectoryRecord& rec) {
  const std::size_t n = rec.times.size();
  if (n < 5) throw std::invalid_argument("virial_check: need at least 5 samples");
  const double h = (rec.times.back() - rec.times.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double hi = rec.times[i + 1] - rec.times[i];
    if (std::abs(hi - h) > 1e-6 * h)
      throw std::invalid_argument("virial_check: samples are not uniformly spaced");
  }

  VirialReport r;
  r.times = rec.times;
  r.F_series = rec.moment_f;
  r.sixteen_p_series.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.sixteen_p_series[i] = 16.0 * rec.virial_p_value[i];
  r.F_second_diff.assign(n, std::numeric_limits<double>::quiet_NaN());

  double max_res = 0.0, max_p = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_p = std::max(max_p, std::abs(r.sixteen_p_series[i]));
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double f2 = (-r.F_series[i - 2] + 16.0 * r.F_series[i - 1] - 30.0 * r.F_series[i] +
                       16.0 * r.F_series[i + 1] - r.F_series[i + 2]) /
                      (12.0 * h * h);
    r.F_second_diff[i] = f2;
    max_res = std::max(max_res, std::abs(f2 - r.sixteen_p_series[i]));
  }
  r.max_residual = max_res;
  r.rel_residual = max_res / std::max(1.0, max_p);
  return r;
}

bool in_blowup_set(const Field& f, const ModelParams& mp, double d_level) {
  const double s = action(f, mp);
  const double pv = virial_p(f, mp);
  const auto grads = gradient_norms_sq(f);
  double gt = 0.0;
  for (int j = 0; j + 1 < f.grid->n_dims(); ++j) gt += grads[static_cast<size_t>(j)];
  const double margin_s = 1e-12 * std::max(1.0, std::abs(d_level));
  const double margin_p = 1e-12 * std::max(1.0, 0.5 * gt);
  return s < d_level - margin_s && pv < -margin_p;
}

double lemma1_gap(const Field& f, const ModelParams& mp, double d_level) {
  if (!mp.instability_regime())
    throw std::invalid_argument("lemma1_gap: requires the instability regime alpha >= 2");
  if (!(mass(f) > 0.0)) throw std::invalid_argument("lemma1_gap: zero field");
  const double pv = virial_p(f, mp);
  if (pv > 0.0)
    throw std::invalid_argument("lemma1_gap: P(f) > 0, the inequality is not claimed there");
  return action(f, mp) - pv - d_level;
}

double tmax_upper_bound(double f0, double f0_prime, double gap) {
  if (!(gap < 0.0)) throw std::invalid_argument("tmax_upper_bound: gap must be negative");
  if (!(f0 > 0.0)) throw std::invalid_argument("tmax_upper_bound: f0 must be positive");
  const double a = 8.0 * gap;
  const double disc = f0_prime * f0_prime - 4.0 * a * f0;
  return (-f0_prime - std::sqrt(disc)) / (2.0 * a);
}

namespace {

// f'(t0) from three leading samples, exact for quadratics, tolerant of
// slightly nonuniform times
double one_sided_derivative(const std::vector<double>& t, const std::vector<double>& f) {
  const double t0 = t[0], t1 = t[1], t2 = t[2];
  return f[0] * (2.0 * t0 - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
         f[1] * (t0 - t2) / ((t1 - t0) * (t1 - t2)) +
         f[2] * (t0 - t1) / ((t2 - t0) * (t2 - t1));
}

}  // namespace

BlowupCertificate certify_blowup(const Field& u0, const ModelParams& mp,
                                 const GroundState& ground, const TrajectoryRecord& rec,
                                 double slack) {
  if (rec.times.size() < 3)
    throw std::invalid_argument("certify_blowup: record too short");

  BlowupCertificate c;
  c.slack = slack;
  c.status = rec.status;
  c.s_omega_u0 = action(u0, mp);
  c.d_level = ground.level;
  c.p_u0 = virial_p(u0, mp);
  c.gap = c.s_omega_u0 - c.d_level;
  c.f0 = moment_F(u0);
  c.f0_prime = one_sided_derivative(rec.times, rec.moment_f);
  c.f0_prime_momentum = momentum_f_prime(u0);
  c.halted_at = rec.halt_time;
  c.inconclusive = rec.status == RunStatus::boundary_violation;

  c.t_upper = std::numeric_limits<double>::quiet_NaN();
  if (c.gap < 0.0 && c.f0 > 0.0) c.t_upper = tmax_upper_bound(c.f0, c.f0_prime, c.gap);

  // Lemma-2.3 membership at every recorded sample until halt
  c.in_set_along_flow = true;
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    const double margin_s = 1e-12 * std::max(1.0, std::abs(c.d_level));
    if (!(rec.action_value[i] < c.d_level - margin_s) || !(rec.virial_p_value[i] < 0.0)) {
      c.in_set_along_flow = false;
      break;
    }
  }

  // concavity of F against the proof's parabola, on the actual sample times
  const std::size_t n = rec.times.size();
  c.f_second_diff.assign(n, std::numeric_limits<double>::quiet_NaN());
  c.concavity_ok = true;
  const double bound = 16.0 * c.gap + 0.05 * std::abs(16.0 * c.gap);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = rec.times[i] - rec.times[i - 1];
    const double h2 = rec.times[i + 1] - rec.times[i];
    const double f2 = 2.0 * (rec.moment_f[i - 1] / (h1 * (h1 + h2)) -
                             rec.moment_f[i] / (h1 * h2) +
                             rec.moment_f[i + 1] / (h2 * (h1 + h2)));
    c.f_second_diff[i] = f2;
    if (!(f2 <= bound)) c.concavity_ok = false;
  }

  const bool halted =
      rec.status == RunStatus::blowup_detected || rec.status == RunStatus::dt_underflow;
  c.valid = !c.inconclusive && halted && c.gap < 0.0 && c.p_u0 < 0.0 &&
            std::isfinite(c.t_upper) && c.halted_at <= c.t_upper * c.slack;
  return c;
}

namespace {

nlohmann::json series_json(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) {
    if (std::isnan(x))
      a.push_back(nullptr);
    else
      a.push_back(x);
  }
  return a;
}

}  // namespace

std::string to_json(const VirialReport& r) {
  nlohmann::json j;
  j["times"] = series_json(r.times);
  j["F_series"] = series_json(r.F_series);
  j["F_second_diff"] = series_json(r.F_second_diff);
  j["sixteen_p_series"] = series_json(r.sixteen_p_series);
  j["max_residual"] = r.max_residual;
  j["rel_residual"] = r.rel_residual;
  return j.dump(2);
}

std::string to_json(const BlowupCertificate& c) {
  nlohmann::json j;
  j["s_omega_u0"] = c.s_omega_u0;
  j["d_level"] = c.d_level;
  j["p_u0"] = c.p_u0;
  j["gap"] = c.gap;
  j["f0"] = c.f0;
  j["f0_prime"] = c.f0_prime;
  j["f0_prime_momentum"] = c.f0_prime_momentum;
  j["t_upper"] = std::isfinite(c.t_upper) ? nlohmann::json(c.t_upper) : nlohmann::json();
  j["halted_at"] = c.halted_at;
  j["slack"] = c.slack;
  j["in_set_along_flow"] = c.in_set_along_flow;
  j["concavity_ok"] = c.concavity_ok;
  j["status"] = to_string(c.status);
  j["inconclusive"] = c.inconclusive;
  j["valid"] = c.valid;
  return j.dump(2);
}

void write_trajectory_with_virial_csv(const TrajectoryRecord& rec, const VirialReport& vr,
                                      const std::string& path) {
  if (vr.times.size() != rec.times.size())
    throw std::invalid_argument("trajectory/virial size mismatch");
  std::string base = trajectory_csv(rec);
  std::string out;
  out.reserve(base.size() + 32 * rec.times.size());
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < base.size()) {
    const std::size_t eol = base.find('\n', pos);
    std::string row = base.substr(pos, eol - pos);
    if (line == 0) {
      row += ",f_second_diff,sixteen_p";
    } else {
      const double f2 = vr.F_second_diff[line - 1];
      row += ',';
      if (!std::isnan(f2)) row += format_double(f2);
      row += ',';
      row += format_double(vr.sixteen_p_series[line - 1]);
    }
    out += row;
    out += '\n';
    pos = eol + 1;
    ++line;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << out;
}

}  // namespace nls
