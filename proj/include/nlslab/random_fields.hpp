#pragma once

#include <cstdint>

#include "nlslab/field.hpp"

namespace nls {

// Deterministic stream of smooth localized test fields: a few Gaussian bumps
// with random centers, widths and complex amplitudes. Centers stay within
// 0.35*L and widths within [0.9, 1.8] grid units so the fields decay well
// inside the box and stay resolved. Same seed, same fields, any platform.
class FieldStream {
 public:
  explicit FieldStream(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  Field next(std::shared_ptr<const Grid> g);
  // real-valued variant (for direction fields etc.)
  Field next_real(std::shared_ptr<const Grid> g);

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)

 private:
  std::uint64_t next_u64();
  Field bumps(std::shared_ptr<const Grid> g, bool complex_amp);
  std::uint64_t state_;
};

}  // namespace nls
