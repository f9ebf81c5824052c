#include "nlslab/random_fields.hpp"

#include <cmath>

namespace nls {

std::uint64_t FieldStream::next_u64() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double FieldStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double FieldStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

Field FieldStream::bumps(std::shared_ptr<const Grid> g, bool complex_amp) {
  const int nd = g->n_dims();
  const int n_bumps = 2 + static_cast<int>(next_u64() % 3);
  Field f = Field::zeros(g);
  for (int b = 0; b < n_bumps; ++b) {
    std::vector<double> c(static_cast<size_t>(nd)), w(static_cast<size_t>(nd));
    for (int j = 0; j < nd; ++j) {
      c[static_cast<size_t>(j)] = uniform(-0.35, 0.35) * g->axis(j).half_length;
      w[static_cast<size_t>(j)] = uniform(0.9, 1.8);
    }
    cplx amp;
    if (complex_amp) {
      const double r = uniform(0.3, 1.0);
      const double ph = uniform(0.0, 2.0 * 3.14159265358979323846);
      amp = r * cplx(std::cos(ph), std::sin(ph));
    } else {
      amp = uniform(0.3, 1.0) * (uniform() < 0.5 ? -1.0 : 1.0);
    }
    for (std::size_t idx = 0; idx < g->size(); ++idx) {
      double e = 0.0;
      for (int j = 0; j < nd; ++j) {
        const std::size_t m = (idx / g->stride(j)) % static_cast<std::size_t>(g->axis(j).points);
        const double d = g->coord(j)[m] - c[static_cast<size_t>(j)];
        e += d * d / (2.0 * w[static_cast<size_t>(j)] * w[static_cast<size_t>(j)]);
      }
      f.values[idx] += amp * std::exp(-e);
    }
  }
  return f;
}

Field FieldStream::next(std::shared_ptr<const Grid> g) { return bumps(std::move(g), true); }
Field FieldStream::next_real(std::shared_ptr<const Grid> g) { return bumps(std::move(g), false); }

}  // namespace nls
