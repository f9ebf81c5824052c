#include "nlslab/kernels.hpp"

#include <cmath>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace nls::kern {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// [w0 w1 w2 w3] -> [w0 w0 w1 w1], [w2 w2 w3 w3]
inline __m256d expand_lo(__m256d w) { return _mm256_permute4x64_pd(w, 0x50); }
inline __m256d expand_hi(__m256d w) { return _mm256_permute4x64_pd(w, 0xFA); }

// z *= m, both interleaved complex pairs
inline __m256d cmul(__m256d z, __m256d m) {
  __m256d t1 = _mm256_mul_pd(z, _mm256_movedup_pd(m));
  __m256d zs = _mm256_permute_pd(z, 0x5);
  __m256d t2 = _mm256_mul_pd(zs, _mm256_permute_pd(m, 0xF));
  return _mm256_addsub_pd(t1, t2);
}

double v_sum_abs_sq(const cplx* z, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(d + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
  return r;
}

double v_weighted_sum_abs_sq(const cplx* z, const double* w, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d wv = _mm256_loadu_pd(w + i);
    __m256d z1 = _mm256_loadu_pd(d + 2 * i);
    __m256d z2 = _mm256_loadu_pd(d + 2 * i + 4);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(z1, z1), expand_lo(wv), acc);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(z2, z2), expand_hi(wv), acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i)
    r += w[i] * (d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
  return r;
}

double v_sum_abs_pow(const cplx* z, double q, std::size_t n) {
  if (q == 2.0) return v_sum_abs_sq(z, n);
  const long qi = std::lround(q);
  const bool integral = q == static_cast<double>(qi) && qi >= 1 && qi <= 16;
  if (!integral) return scalar_kernels().sum_abs_pow(z, q, n);

  const double* d = reinterpret_cast<const double*>(z);
  const bool even = qi % 2 == 0;
  const long m = even ? qi / 2 : (qi - 1) / 2;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d z1 = _mm256_loadu_pd(d + 2 * i);
    __m256d z2 = _mm256_loadu_pd(d + 2 * i + 4);
    // |z|^2 for the four entries (pair order scrambled, harmless in a sum)
    __m256d a = _mm256_hadd_pd(_mm256_mul_pd(z1, z1), _mm256_mul_pd(z2, z2));
    __m256d r;
    if (even) {
      r = a;
      for (long j = 1; j < m; ++j) r = _mm256_mul_pd(r, a);
    } else {
      r = _mm256_sqrt_pd(a);
      for (long j = 0; j < m; ++j) r = _mm256_mul_pd(r, a);
    }
    acc = _mm256_add_pd(acc, r);
  }
  double r = hsum(acc);
  for (; i < n; ++i) {
    const double a = d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
    double t = even ? a : std::sqrt(a);
    for (long j = even ? 1 : 0; j < m; ++j) t *= a;
    r += t;
  }
  return r;
}

Dot v_dot(const cplx* a, const cplx* b, std::size_t n) {
  const double* x = reinterpret_cast<const double*>(a);
  const double* y = reinterpret_cast<const double*>(b);
  const __m256d sgn = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d av = _mm256_loadu_pd(x + 2 * i);
    __m256d bv = _mm256_loadu_pd(y + 2 * i);
    acc_re = _mm256_fmadd_pd(av, bv, acc_re);
    __m256d as = _mm256_permute_pd(av, 0x5);
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(as, bv), sgn, acc_im);
  }
  Dot r{hsum(acc_re), hsum(acc_im)};
  for (; i < n; ++i) {
    const double ar = x[2 * i], ai = x[2 * i + 1];
    const double br = y[2 * i], bi = y[2 * i + 1];
    r.re += ar * br + ai * bi;
    r.im += ar * bi - ai * br;
  }
  return r;
}

double v_max_abs_sq(const cplx* z, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  __m256d mx = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d z1 = _mm256_loadu_pd(d + 2 * i);
    __m256d z2 = _mm256_loadu_pd(d + 2 * i + 4);
    __m256d a = _mm256_hadd_pd(_mm256_mul_pd(z1, z1), _mm256_mul_pd(z2, z2));
    mx = _mm256_max_pd(mx, a);
  }
  double m = hmax(mx);
  for (; i < n; ++i) {
    const double a = d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
    if (a > m) m = a;
  }
  return m;
}

void v_scale(cplx* z, double a, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * i), av));
  for (; i < n; ++i) {
    d[2 * i] *= a;
    d[2 * i + 1] *= a;
  }
}

void v_mul_real(cplx* z, const double* w, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d wv = _mm256_loadu_pd(w + i);
    __m256d z1 = _mm256_loadu_pd(d + 2 * i);
    __m256d z2 = _mm256_loadu_pd(d + 2 * i + 4);
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(z1, expand_lo(wv)));
    _mm256_storeu_pd(d + 2 * i + 4, _mm256_mul_pd(z2, expand_hi(wv)));
  }
  for (; i < n; ++i) {
    d[2 * i] *= w[i];
    d[2 * i + 1] *= w[i];
  }
}

void v_mul_cplx(cplx* z, const cplx* m, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  const double* q = reinterpret_cast<const double*>(m);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d zv = _mm256_loadu_pd(d + 2 * i);
    __m256d mv = _mm256_loadu_pd(q + 2 * i);
    _mm256_storeu_pd(d + 2 * i, cmul(zv, mv));
  }
  for (; i < n; ++i) {
    const double zr = d[2 * i], zi = d[2 * i + 1];
    const double mr = q[2 * i], mi = q[2 * i + 1];
    d[2 * i] = zr * mr - zi * mi;
    d[2 * i + 1] = zr * mi + zi * mr;
  }
}

void v_axpy(cplx* y, const cplx* x, double a, std::size_t n) {
  double* d = reinterpret_cast<double*>(y);
  const double* s = reinterpret_cast<const double*>(x);
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d yv = _mm256_loadu_pd(d + 2 * i);
    __m256d xv = _mm256_loadu_pd(s + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_fmadd_pd(xv, av, yv));
  }
  for (; i < n; ++i) {
    d[2 * i] += a * s[2 * i];
    d[2 * i + 1] += a * s[2 * i + 1];
  }
}

enum class Pow { p3, p5, p7, generic };

inline Pow classify(double p) {
  if (p == 3.0) return Pow::p3;
  if (p == 5.0) return Pow::p5;
  if (p == 7.0) return Pow::p7;
  return Pow::generic;
}

inline __m256d vamp(__m256d a, Pow c) {
  switch (c) {
    case Pow::p3: return a;
    case Pow::p5: return _mm256_mul_pd(a, a);
    default: return _mm256_mul_pd(_mm256_mul_pd(a, a), a);
  }
}

void v_nonlinear_phase(cplx* z, const double* pot, double dt, double p, std::size_t n) {
  const Pow c = classify(p);
  if (c == Pow::generic) return scalar_kernels().nonlinear_phase(z, pot, dt, p, n);
  double* d = reinterpret_cast<double*>(z);
  const __m256d dtv = _mm256_set1_pd(dt);
  std::size_t i = 0;
  alignas(32) double th[2];
  for (; i + 2 <= n; i += 2) {
    __m256d zv = _mm256_loadu_pd(d + 2 * i);
    __m256d sq = _mm256_mul_pd(zv, zv);
    __m256d a = _mm256_hadd_pd(sq, sq);  // [a0 a0 a1 a1]
    __m128d pw = _mm_loadu_pd(pot + i);
    __m256d pv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(pw), 0x50);
    __m256d thv = _mm256_mul_pd(dtv, _mm256_sub_pd(vamp(a, c), pv));
    th[0] = _mm256_cvtsd_f64(thv);
    th[1] = _mm_cvtsd_f64(_mm256_extractf128_pd(thv, 1));
    const double c0 = std::cos(th[0]), s0 = std::sin(th[0]);
    const double c1 = std::cos(th[1]), s1 = std::sin(th[1]);
    __m256d mv = _mm256_set_pd(s1, c1, s0, c0);
    _mm256_storeu_pd(d + 2 * i, cmul(zv, mv));
  }
  if (i < n) scalar_kernels().nonlinear_phase(z + i, pot + i, dt, p, n - i);
}

void v_action_gradient_accum(cplx* y, const cplx* z, const double* pot,
                             double omega, double p, std::size_t n) {
  const Pow c = classify(p);
  if (c == Pow::generic)
    return scalar_kernels().action_gradient_accum(y, z, pot, omega, p, n);
  double* d = reinterpret_cast<double*>(y);
  const double* s = reinterpret_cast<const double*>(z);
  const __m256d ov = _mm256_set1_pd(omega);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d zv = _mm256_loadu_pd(s + 2 * i);
    __m256d sq = _mm256_mul_pd(zv, zv);
    __m256d a = _mm256_hadd_pd(sq, sq);
    __m128d pw = _mm_loadu_pd(pot + i);
    __m256d pv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(pw), 0x50);
    __m256d cv = _mm256_sub_pd(_mm256_add_pd(pv, ov), vamp(a, c));
    __m256d yv = _mm256_loadu_pd(d + 2 * i);
    _mm256_storeu_pd(d + 2 * i, _mm256_fmadd_pd(cv, zv, yv));
  }
  if (i < n)
    scalar_kernels().action_gradient_accum(y + i, z + i, pot + i, omega, p, n - i);
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k = {
      "avx2",
      v_sum_abs_sq,
      v_sum_abs_pow,
      v_weighted_sum_abs_sq,
      v_dot,
      v_max_abs_sq,
      v_scale,
      v_mul_real,
      v_mul_cplx,
      v_axpy,
      v_nonlinear_phase,
      v_action_gradient_accum,
  };
  return k;
}

}  // namespace nls::kern

#else

namespace nls::kern {
const Kernels& avx2_kernels() { return scalar_kernels(); }
}  // namespace nls::kern

#endif
