#include "nlslab/field.hpp"

#include <cmath>
#include <stdexcept>

#include "nlslab/kernels.hpp"

namespace nls {

Field Field::zeros(std::shared_ptr<const Grid> g) {
  Field f;
  f.values.assign(g->size(), cplx{0.0, 0.0});
  f.grid = std::move(g);
  return f;
}

bool Field::finite() const {
  return std::isfinite(kern::active().sum_abs_sq(values.data(), values.size()));
}

Field gaussian_field(std::shared_ptr<const Grid> g, cplx amplitude,
                     std::vector<double> widths, std::vector<double> centers) {
  const int nd = g->n_dims();
  if (widths.empty()) widths.assign(static_cast<size_t>(nd), 1.0);
  if (centers.empty()) centers.assign(static_cast<size_t>(nd), 0.0);
  if (widths.size() != static_cast<size_t>(nd) || centers.size() != static_cast<size_t>(nd))
    throw std::invalid_argument("gaussian_field: widths/centers must match n_dims");

  Field f = Field::zeros(g);
  for (std::size_t idx = 0; idx < g->size(); ++idx) {
    double e = 0.0;
    for (int j = 0; j < nd; ++j) {
      const std::size_t m = (idx / g->stride(j)) % static_cast<std::size_t>(g->axis(j).points);
      const double d = g->coord(j)[m] - centers[static_cast<size_t>(j)];
      e += d * d / (2.0 * widths[static_cast<size_t>(j)] * widths[static_cast<size_t>(j)]);
    }
    f.values[idx] = amplitude * std::exp(-e);
  }
  return f;
}

}  // namespace nls
