#include "nlslab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nlslab/fft.hpp"

namespace nls {

std::shared_ptr<const Grid> Grid::build(int n_dims, std::vector<int> points,
                                        std::vector<double> half_lengths) {
  if (n_dims != 2 && n_dims != 3)
    throw std::invalid_argument("grid: n_dims must be 2 or 3, got " + std::to_string(n_dims));
  if (points.size() != static_cast<size_t>(n_dims) ||
      half_lengths.size() != static_cast<size_t>(n_dims))
    throw std::invalid_argument("grid: points and half_lengths must have n_dims entries");
  for (int j = 0; j < n_dims; ++j) {
    const int n = points[static_cast<size_t>(j)];
    if (n < 8) throw std::invalid_argument("grid: axis " + std::to_string(j) +
                                           " needs at least 8 points, got " + std::to_string(n));
    if (n % 2 != 0)
      throw std::invalid_argument("grid: axis " + std::to_string(j) +
                                  " point count must be even, got " + std::to_string(n));
    if (!(half_lengths[static_cast<size_t>(j)] > 0.0))
      throw std::invalid_argument("grid: axis " + std::to_string(j) +
                                  " half-length must be positive");
  }

  auto g = std::shared_ptr<Grid>(new Grid);
  g->n_dims_ = n_dims;
  g->size_ = 1;
  for (int j = 0; j < n_dims; ++j) {
    const int n = points[static_cast<size_t>(j)];
    const double L = half_lengths[static_cast<size_t>(j)];
    GridAxis ax;
    ax.points = n;
    ax.half_length = L;
    ax.dx = 2.0 * L / n;
    ax.role = (j == n_dims - 1) ? AxisRole::confined : AxisRole::transverse;
    g->axes_.push_back(ax);
    g->size_ *= static_cast<std::size_t>(n);
  }
  g->cell_volume_ = 1.0;
  for (const auto& ax : g->axes_) g->cell_volume_ *= ax.dx;

  g->strides_.assign(static_cast<size_t>(n_dims), 1);
  for (int j = n_dims - 2; j >= 0; --j)
    g->strides_[static_cast<size_t>(j)] =
        g->strides_[static_cast<size_t>(j + 1)] * static_cast<std::size_t>(points[static_cast<size_t>(j + 1)]);

  g->center_index_ = 0;
  for (int j = 0; j < n_dims; ++j)
    g->center_index_ += static_cast<std::size_t>(points[static_cast<size_t>(j)] / 2) * g->strides_[static_cast<size_t>(j)];

  for (int j = 0; j < n_dims; ++j) {
    const auto& ax = g->axes_[static_cast<size_t>(j)];
    std::vector<double> x(static_cast<size_t>(ax.points));
    std::vector<double> k(static_cast<size_t>(ax.points));
    const double dk = std::numbers::pi / ax.half_length;
    for (int m = 0; m < ax.points; ++m) {
      x[static_cast<size_t>(m)] = -ax.half_length + ax.dx * m;
      const int mm = (m <= ax.points / 2 - 1) ? m : m - ax.points;  // FFT order
      k[static_cast<size_t>(m)] = dk * mm;
    }
    g->coords_.push_back(std::move(x));
    g->waves_.push_back(std::move(k));
  }

  g->ksq_.assign(g->size_, 0.0);
  g->dealias_mask_.assign(g->size_, 1.0);
  for (int j = 0; j < n_dims; ++j) {
    g->kj_sq_.emplace_back(g->size_, 0.0);
    g->xj_sq_.emplace_back(g->size_, 0.0);
  }
  for (std::size_t idx = 0; idx < g->size_; ++idx) {
    for (int j = 0; j < n_dims; ++j) {
      const std::size_t m = (idx / g->strides_[static_cast<size_t>(j)]) %
                            static_cast<std::size_t>(g->axes_[static_cast<size_t>(j)].points);
      const double kj = g->waves_[static_cast<size_t>(j)][m];
      const double xj = g->coords_[static_cast<size_t>(j)][m];
      g->kj_sq_[static_cast<size_t>(j)][idx] = kj * kj;
      g->xj_sq_[static_cast<size_t>(j)][idx] = xj * xj;
      g->ksq_[idx] += kj * kj;
      const int n = g->axes_[static_cast<size_t>(j)].points;
      const int mm = (m <= static_cast<std::size_t>(n / 2 - 1)) ? static_cast<int>(m)
                                                                : static_cast<int>(m) - n;
      if (std::abs(mm) > n / 3) g->dealias_mask_[idx] = 0.0;
    }
  }

  std::vector<int> dims(points.begin(), points.end());
  g->engine_ = std::make_unique<SpectralEngine>(dims);
  return g;
}

Grid::~Grid() = default;

void Grid::forward(cplx* data) const { engine_->forward(data); }
void Grid::inverse(cplx* data) const { engine_->inverse(data); }

}  // namespace nls
