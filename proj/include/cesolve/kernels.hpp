// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>

namespace cesolve::kernels {

using cxd = std::complex<double>;

/// Streaming complex arithmetic primitives used by the objective and metric
/// hot paths. Matrices are dense column-major; a kernel never allocates.
///
/// Two implementations exist: a scalar reference (always available, the
/// semantic ground truth) and an AVX2/FMA variant compiled on x86-64 and
/// selected at runtime. The environment variable CESOLVE_KERNELS=scalar|avx2
/// overrides the automatic choice.
struct Ops {
  // y += A * x, A is m-by-m column-major, x and y length m
  void (*cmv_acc)(const cxd* a, const cxd* x, cxd* y, int m);
  // conjugating inner product x^H y over n entries
  cxd (*cdot)(const cxd* x, const cxd* y, int n);
  // sum of |x_i|^2 over n entries
  double (*fro_sq)(const cxd* x, int n);
  // y += s * x with a real scalar s
  void (*axpy_rs)(double s, const cxd* x, cxd* y, int n);
};

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

/// Backend chosen at first use (CPU probe + CESOLVE_KERNELS override).
Backend active_backend();

const Ops& scalar_ops();
bool avx2_available();
/// Only meaningful when avx2_available(); falls back to scalar otherwise.
const Ops& avx2_ops();
/// Table for active_backend().
const Ops& active_ops();

// ---- dispatched convenience entry points ----

inline void cmv_acc(const cxd* a, const cxd* x, cxd* y, int m) {
  active_ops().cmv_acc(a, x, y, m);
}
inline cxd cdot(const cxd* x, const cxd* y, int n) { return active_ops().cdot(x, y, n); }
inline double fro_sq(const cxd* x, int n) { return active_ops().fro_sq(x, n); }
inline void axpy_rs(double s, const cxd* x, cxd* y, int n) { active_ops().axpy_rs(s, x, y, n); }

/// y = A * x
void mat_vec(const cxd* a, const cxd* x, cxd* y, int m);
/// W = A * U (both m-by-m column-major)
void mat_cols(const cxd* a, const cxd* u, cxd* w, int m);
/// d_j = u_j^H w_j for matching columns of U and W
void col_inner_diag(const cxd* u, const cxd* w, cxd* d, int m);
/// sum of |a_ij|^2 over i != j
double off_diag_energy(const cxd* a, int m);

}  // namespace cesolve::kernels
