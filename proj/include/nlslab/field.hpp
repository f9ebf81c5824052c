#pragma once

#include <memory>
#include <vector>

#include "nlslab/grid.hpp"

namespace nls {

// Complex state on a grid; value semantics, buffer 64B-aligned.
struct Field {
  std::shared_ptr<const Grid> grid;
  aligned_vector<cplx> values;

  static Field zeros(std::shared_ptr<const Grid> g);

  cplx* data() { return values.data(); }
  const cplx* data() const { return values.data(); }
  std::size_t size() const { return values.size(); }
  bool finite() const;
};

// amplitude * exp(-sum_j (x_j-c_j)^2 / (2 w_j^2)); empty widths/centers mean
// width 1 and center 0 on every axis
Field gaussian_field(std::shared_ptr<const Grid> g, cplx amplitude = 1.0,
                     std::vector<double> widths = {},
                     std::vector<double> centers = {});

}  // namespace nls
