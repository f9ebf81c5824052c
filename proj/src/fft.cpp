#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

#include "nlslab/kernels.hpp"

namespace nls {

namespace {
// FFTW planning is not thread safe; execution with the new-array interface is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct SpectralEngine::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::size_t n = 0;
};

SpectralEngine::SpectralEngine(const std::vector<int>& dims) : impl_(new Impl) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  impl_->n = n;
  // plan on a 64B-aligned scratch buffer; all field buffers share that
  // alignment, so fftw_execute_dft stays valid for them
  aligned_vector<cplx> scratch(n);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard<std::mutex> lock(plan_mutex());
  // FFTW_ESTIMATE keeps planning deterministic run to run
  impl_->fwd = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr,
                             FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr,
                             FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("FFT planning failed");
}

SpectralEngine::~SpectralEngine() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
  if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
}

void SpectralEngine::forward(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(impl_->fwd, p, p);
}

void SpectralEngine::inverse(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(impl_->bwd, p, p);
  kern::active().scale(data, 1.0 / static_cast<double>(impl_->n), impl_->n);
}

}  // namespace nls
