#include "nlslab/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "nlslab/kernels.hpp"

namespace nls {

double lp_norm_pp(const Field& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lp_norm_pp: q must be >= 1");
  return kern::active().sum_abs_pow(f.data(), q, f.size()) * f.grid->cell_volume();
}

std::vector<double> gradient_norms_sq(const Field& f) {
  const Grid& g = *f.grid;
  aligned_vector<cplx> hat(f.values);
  g.forward(hat.data());
  const double norm = g.cell_volume() / static_cast<double>(g.size());
  std::vector<double> out(static_cast<size_t>(g.n_dims()));
  for (int j = 0; j < g.n_dims(); ++j)
    out[static_cast<size_t>(j)] =
        kern::active().weighted_sum_abs_sq(hat.data(), g.kj_sq(j).data(), hat.size()) * norm;
  return out;
}

double weighted_moment(const Field& f, int axis) {
  const Grid& g = *f.grid;
  if (axis < 0 || axis >= g.n_dims()) throw std::invalid_argument("weighted_moment: bad axis");
  return kern::active().weighted_sum_abs_sq(f.data(), g.xj_sq(axis).data(), f.size()) *
         g.cell_volume();
}

double centroid(const Field& f, int axis) {
  const Grid& g = *f.grid;
  if (axis < 0 || axis >= g.n_dims()) throw std::invalid_argument("centroid: bad axis");
  const std::size_t stride = g.stride(axis);
  const std::size_t n = static_cast<std::size_t>(g.axis(axis).points);
  const auto& x = g.coord(axis);
  double num = 0.0, den = 0.0;
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    const double a = std::norm(f.values[idx]);
    num += x[(idx / stride) % n] * a;
    den += a;
  }
  return den > 0.0 ? num / den : 0.0;
}

Field laplacian(const Field& f) {
  const Grid& g = *f.grid;
  Field out = f;
  g.forward(out.data());
  aligned_vector<double> neg(g.ksq().size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -g.ksq()[i];
  kern::active().mul_real(out.data(), neg.data(), out.size());
  g.inverse(out.data());
  return out;
}

namespace {

// per-axis shift phases with the Nyquist mode folded to cos so real fields
// stay real for non-lattice offsets
void apply_shift_phase(Field& hat, int axis, double y) {
  const Grid& g = *hat.grid;
  const int n = g.axis(axis).points;
  const auto& k = g.wavenumber(axis);
  std::vector<cplx> phase(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    if (m == n / 2)
      phase[static_cast<size_t>(m)] = std::cos(k[static_cast<size_t>(m)] * y);
    else
      phase[static_cast<size_t>(m)] =
          std::exp(cplx(0.0, -k[static_cast<size_t>(m)] * y));
  }
  const std::size_t stride = g.stride(axis);
  for (std::size_t idx = 0; idx < hat.size(); ++idx)
    hat.values[idx] *= phase[(idx / stride) % static_cast<std::size_t>(n)];
}

}  // namespace

Field translate(const Field& f, const std::vector<double>& offsets) {
  const Grid& g = *f.grid;
  const int nd = g.n_dims();
  std::vector<double> y(offsets);
  if (y.size() == static_cast<size_t>(nd)) {
    if (y.back() != 0.0)
      throw std::invalid_argument("translate: confined-axis offset not allowed");
    y.pop_back();
  }
  if (y.size() != static_cast<size_t>(nd - 1))
    throw std::invalid_argument("translate: need one offset per transverse axis");

  bool all_zero = true;
  for (double v : y) all_zero &= (v == 0.0);
  if (all_zero) return f;

  Field out = f;
  g.forward(out.data());
  for (int j = 0; j < nd - 1; ++j)
    if (y[static_cast<size_t>(j)] != 0.0) apply_shift_phase(out, j, y[static_cast<size_t>(j)]);
  g.inverse(out.data());
  return out;
}

double boundary_mass(const Field& f, double margin_fraction) {
  if (!(margin_fraction > 0.0 && margin_fraction < 0.5))
    throw std::invalid_argument("boundary_mass: margin_fraction must be in (0, 0.5)");
  const Grid& g = *f.grid;
  double worst = 0.0;
  for (int j = 0; j < g.n_dims(); ++j) {
    const double thr = (1.0 - 2.0 * margin_fraction) * g.axis(j).half_length;
    const std::size_t stride = g.stride(j);
    const std::size_t n = static_cast<std::size_t>(g.axis(j).points);
    const auto& x = g.coord(j);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < f.size(); ++idx)
      if (std::abs(x[(idx / stride) % n]) >= thr) acc += std::norm(f.values[idx]);
    worst = std::max(worst, acc * g.cell_volume());
  }
  return worst;
}

void apply_dealias(Field& f) {
  const Grid& g = *f.grid;
  g.forward(f.data());
  kern::active().mul_real(f.data(), g.dealias_mask().data(), f.size());
  g.inverse(f.data());
}

}  // namespace nls
