#pragma once

#include <memory>
#include <vector>

#include "nlslab/aligned.hpp"

namespace nls {

enum class AxisRole { transverse, confined };

struct GridAxis {
  int points;
  double half_length;
  double dx;
  AxisRole role;
};

class SpectralEngine;

// Tensor-product periodic box centered at the origin. The last axis carries
// the harmonic confinement, all others are transverse. Coordinates are
// x = -L + j*dx with dx = 2L/n, so the origin is a grid point; wavenumbers
// are the standard DFT lattice k = (pi/L)*{-n/2,...,n/2-1} in FFT order.
// Immutable after construction and shareable across threads.
class Grid {
 public:
  static std::shared_ptr<const Grid> build(int n_dims, std::vector<int> points,
                                           std::vector<double> half_lengths);
  ~Grid();

  int n_dims() const { return n_dims_; }
  const std::vector<GridAxis>& axes() const { return axes_; }
  const GridAxis& axis(int j) const { return axes_[static_cast<size_t>(j)]; }
  int confined_axis() const { return n_dims_ - 1; }
  double cell_volume() const { return cell_volume_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int j) const { return strides_[static_cast<size_t>(j)]; }
  std::size_t center_index() const { return center_index_; }

  const std::vector<double>& coord(int j) const { return coords_[static_cast<size_t>(j)]; }
  const std::vector<double>& wavenumber(int j) const { return waves_[static_cast<size_t>(j)]; }

  // full-size multiplier fields, flat row-major
  const aligned_vector<double>& ksq() const { return ksq_; }
  const aligned_vector<double>& kj_sq(int j) const { return kj_sq_[static_cast<size_t>(j)]; }
  const aligned_vector<double>& xj_sq(int j) const { return xj_sq_[static_cast<size_t>(j)]; }
  const aligned_vector<double>& potential() const { return xj_sq_[static_cast<size_t>(n_dims_ - 1)]; }
  // 2/3-rule mask: 1 on retained modes, 0 on the dealiased upper third
  const aligned_vector<double>& dealias_mask() const { return dealias_mask_; }

  // in-place FFTs on row-major complex data; inverse is normalized
  void forward(cplx* data) const;
  void inverse(cplx* data) const;

 private:
  Grid() = default;

  int n_dims_ = 0;
  std::vector<GridAxis> axes_;
  double cell_volume_ = 0.0;
  std::size_t size_ = 0;
  std::size_t center_index_ = 0;
  std::vector<std::size_t> strides_;
  std::vector<std::vector<double>> coords_;
  std::vector<std::vector<double>> waves_;
  aligned_vector<double> ksq_;
  std::vector<aligned_vector<double>> kj_sq_;
  std::vector<aligned_vector<double>> xj_sq_;
  aligned_vector<double> dealias_mask_;
  std::unique_ptr<SpectralEngine> engine_;
};

}  // namespace nls
