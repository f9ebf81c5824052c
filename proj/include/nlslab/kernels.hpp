#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace nls::kern {

using cplx = std::complex<double>;

struct Dot {
  double re;
  double im;
};

// Table of the data-parallel inner loops every functional and both
// integrators are built from. Two implementations exist: a scalar reference
// and an AVX2 variant. The active table is selected once at startup from
// CPU features; NLSLAB_KERNELS=scalar|avx2 overrides. Reductions accumulate
// in a fixed order per variant, so results are reproducible run to run on
// the same machine.
struct Kernels {
  std::string_view name;

  // reductions
  double (*sum_abs_sq)(const cplx* z, std::size_t n);                      // sum |z|^2
  double (*sum_abs_pow)(const cplx* z, double q, std::size_t n);           // sum |z|^q
  double (*weighted_sum_abs_sq)(const cplx* z, const double* w, std::size_t n);
  Dot (*dot)(const cplx* a, const cplx* b, std::size_t n);                 // sum conj(a)*b
  double (*max_abs_sq)(const cplx* z, std::size_t n);                      // NaN entries ignored

  // pointwise maps
  void (*scale)(cplx* z, double a, std::size_t n);                         // z *= a
  void (*mul_real)(cplx* z, const double* w, std::size_t n);               // z[i] *= w[i]
  void (*mul_cplx)(cplx* z, const cplx* m, std::size_t n);                 // z[i] *= m[i]
  void (*axpy)(cplx* y, const cplx* x, double a, std::size_t n);           // y += a*x
  // z[i] *= exp(i*dt*(|z[i]|^(p-1) - pot[i])), the potential+nonlinear subflow
  void (*nonlinear_phase)(cplx* z, const double* pot, double dt, double p, std::size_t n);
  // y[i] += (pot[i] + omega)*z[i] - |z[i]|^(p-1)*z[i], accumulated onto -lap(z)
  void (*action_gradient_accum)(cplx* y, const cplx* z, const double* pot,
                                double omega, double p, std::size_t n);
};

const Kernels& scalar_kernels();
bool avx2_supported();
const Kernels& avx2_kernels();  // falls back to scalar table when unsupported

const Kernels& active();
void set_active(const Kernels& k);  // test hook

// |z|^(p-1) from a = |z|^2; exact fast paths for the odd integer p used by
// the model (p=3,5,7,...), pow() otherwise.
double amp_pow(double abs_sq, double p);

}  // namespace nls::kern
