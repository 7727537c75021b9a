// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/kernels.hpp"

// AVX2/FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// its functions are only reachable after the runtime CPU probe in
// kernels_dispatch.cpp.
//
// Complex values are interleaved (re, im) pairs, so a 256-bit lane holds two
// complex numbers. The multiply-accumulate uses the fmaddsub trick:
//   even lanes: ar*xr - ai*xi, odd lanes: ai*xr + ar*xi.

#include <immintrin.h>

namespace cesolve::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

void cmv_acc_avx2(const cxd* a, const cxd* x, cxd* y, int m) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const int pairs = m / 2;
  for (int j = 0; j < m; ++j) {
    const double xr = xd[2 * j], xi = xd[2 * j + 1];
    const __m256d vxr = _mm256_set1_pd(xr);
    const __m256d vxi = _mm256_set1_pd(xi);
    const double* col = ad + 2 * static_cast<std::size_t>(j) * m;
    int i = 0;
    for (; i < pairs; ++i) {
      const __m256d av = _mm256_loadu_pd(col + 4 * i);
      const __m256d asw = _mm256_permute_pd(av, 0b0101);
      const __m256d t = _mm256_mul_pd(asw, vxi);
      const __m256d res = _mm256_fmaddsub_pd(av, vxr, t);
      const __m256d yv = _mm256_loadu_pd(yd + 4 * i);
      _mm256_storeu_pd(yd + 4 * i, _mm256_add_pd(yv, res));
    }
    if (m & 1) {
      const int r = m - 1;
      const double ar = col[2 * r], ai = col[2 * r + 1];
      yd[2 * r] += ar * xr - ai * xi;
      yd[2 * r + 1] += ai * xr + ar * xi;
    }
  }
}

cxd cdot_avx2(const cxd* x, const cxd* y, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  const __m256d sgn = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const int pairs = n / 2;
  for (int i = 0; i < pairs; ++i) {
    const __m256d xv = _mm256_loadu_pd(xd + 4 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 4 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    const __m256d ysw = _mm256_permute_pd(yv, 0b0101);
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(xv, ysw), sgn, acc_im);
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  if (n & 1) {
    const int r = n - 1;
    const double xr = xd[2 * r], xi = xd[2 * r + 1];
    const double yr = yd[2 * r], yi = yd[2 * r + 1];
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double fro_sq_avx2(const cxd* x, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const int len = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(xd + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < len; ++i) s += xd[i] * xd[i];
  return s;
}

void axpy_rs_avx2(double s, const cxd* x, cxd* y, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const int len = 2 * n;
  const __m256d vs = _mm256_set1_pd(s);
  int i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d xv = _mm256_loadu_pd(xd + i);
    const __m256d yv = _mm256_loadu_pd(yd + i);
    _mm256_storeu_pd(yd + i, _mm256_fmadd_pd(vs, xv, yv));
  }
  for (; i < len; ++i) yd[i] += s * xd[i];
}

}  // namespace

const Ops& avx2_ops_impl() {
  static const Ops ops{cmv_acc_avx2, cdot_avx2, fro_sq_avx2, axpy_rs_avx2};
  return ops;
}

}  // namespace cesolve::kernels
