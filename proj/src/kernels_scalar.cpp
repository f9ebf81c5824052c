#include "nlslab/kernels.hpp"

#include <cmath>

namespace nls::kern {

double amp_pow(double a, double p) {
  // |z|^(p-1) = a^((p-1)/2) with a = |z|^2
  if (p == 5.0) return a * a;
  if (p == 3.0) return a;
  if (p == 7.0) return a * a * a;
  const long pi = std::lround(p);
  if (p == static_cast<double>(pi) && pi >= 2 && pi <= 15 && pi % 2 == 1) {
    double r = 1.0;
    for (long m = (pi - 1) / 2; m > 0; --m) r *= a;
    return r;
  }
  return std::pow(a, 0.5 * (p - 1.0));
}

namespace {

double s_sum_abs_sq(const cplx* z, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  double acc = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) acc += d[i] * d[i];
  return acc;
}

double s_sum_abs_pow(const cplx* z, double q, std::size_t n) {
  if (q == 2.0) return s_sum_abs_sq(z, n);
  const double* d = reinterpret_cast<const double*>(z);
  double acc = 0.0;
  const long qi = std::lround(q);
  if (q == static_cast<double>(qi) && qi >= 1 && qi <= 16 && qi % 2 == 0) {
    const long m = qi / 2;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
      double r = a;
      for (long j = 1; j < m; ++j) r *= a;
      acc += r;
    }
  } else if (q == static_cast<double>(qi) && qi >= 1 && qi <= 15) {
    const long m = (qi - 1) / 2;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
      double r = std::sqrt(a);
      for (long j = 0; j < m; ++j) r *= a;
      acc += r;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
      acc += std::pow(a, 0.5 * q);
    }
  }
  return acc;
}

double s_weighted_sum_abs_sq(const cplx* z, const double* w, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += w[i] * (d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
  return acc;
}

Dot s_dot(const cplx* a, const cplx* b, std::size_t n) {
  const double* x = reinterpret_cast<const double*>(a);
  const double* y = reinterpret_cast<const double*>(b);
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = x[2 * i], ai = x[2 * i + 1];
    const double br = y[2 * i], bi = y[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double s_max_abs_sq(const cplx* z, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(z);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1];
    if (a > m) m = a;
  }
  return m;
}

void s_scale(cplx* z, double a, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < 2 * n; ++i) d[i] *= a;
}

void s_mul_real(cplx* z, const double* w, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    d[2 * i] *= w[i];
    d[2 * i + 1] *= w[i];
  }
}

void s_mul_cplx(cplx* z, const cplx* m, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  const double* q = reinterpret_cast<const double*>(m);
  for (std::size_t i = 0; i < n; ++i) {
    const double zr = d[2 * i], zi = d[2 * i + 1];
    const double mr = q[2 * i], mi = q[2 * i + 1];
    d[2 * i] = zr * mr - zi * mi;
    d[2 * i + 1] = zr * mi + zi * mr;
  }
}

void s_axpy(cplx* y, const cplx* x, double a, std::size_t n) {
  double* d = reinterpret_cast<double*>(y);
  const double* s = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < 2 * n; ++i) d[i] += a * s[i];
}

void s_nonlinear_phase(cplx* z, const double* pot, double dt, double p, std::size_t n) {
  double* d = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    const double zr = d[2 * i], zi = d[2 * i + 1];
    const double a = zr * zr + zi * zi;
    const double th = dt * (amp_pow(a, p) - pot[i]);
    const double c = std::cos(th), s = std::sin(th);
    d[2 * i] = zr * c - zi * s;
    d[2 * i + 1] = zr * s + zi * c;
  }
}

void s_action_gradient_accum(cplx* y, const cplx* z, const double* pot,
                             double omega, double p, std::size_t n) {
  double* d = reinterpret_cast<double*>(y);
  const double* s = reinterpret_cast<const double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    const double zr = s[2 * i], zi = s[2 * i + 1];
    const double a = zr * zr + zi * zi;
    const double c = pot[i] + omega - amp_pow(a, p);
    d[2 * i] += c * zr;
    d[2 * i + 1] += c * zi;
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {
      "scalar",
      s_sum_abs_sq,
      s_sum_abs_pow,
      s_weighted_sum_abs_sq,
      s_dot,
      s_max_abs_sq,
      s_scale,
      s_mul_real,
      s_mul_cplx,
      s_axpy,
      s_nonlinear_phase,
      s_action_gradient_accum,
  };
  return k;
}

}  // namespace nls::kern
