#pragma once

#include <memory>
#include <vector>

#include "nlslab/aligned.hpp"

namespace nls {

// Thin RAII owner of the FFTW plans for one grid shape. In-place complex
// transforms in row-major order; inverse() applies the 1/N normalization.
class SpectralEngine {
 public:
  explicit SpectralEngine(const std::vector<int>& dims);
  ~SpectralEngine();
  SpectralEngine(const SpectralEngine&) = delete;
  SpectralEngine& operator=(const SpectralEngine&) = delete;

  void forward(cplx* data) const;
  void inverse(cplx* data) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nls
