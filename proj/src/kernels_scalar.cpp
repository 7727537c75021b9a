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

// Reference kernels. Written against raw re/im doubles so the arithmetic is
// the plain textbook recurrence; the SIMD variants must match these within
// reassociation rounding.

namespace cesolve::kernels {

namespace {

void cmv_acc_scalar(const cxd* a, const cxd* x, cxd* y, int m) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (int j = 0; j < m; ++j) {
    const double xr = xd[2 * j], xi = xd[2 * j + 1];
    const double* col = ad + 2 * static_cast<std::size_t>(j) * m;
    for (int i = 0; i < m; ++i) {
      const double ar = col[2 * i], ai = col[2 * i + 1];
      yd[2 * i] += ar * xr - ai * xi;
      yd[2 * i + 1] += ai * xr + ar * xi;
    }
  }
}

cxd cdot_scalar(const cxd* x, const cxd* y, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  double re = 0.0, im = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double fro_sq_scalar(const cxd* x, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double acc = 0.0;
  for (int i = 0; i < 2 * n; ++i) acc += xd[i] * xd[i];
  return acc;
}

void axpy_rs_scalar(double s, const cxd* x, cxd* y, int n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (int i = 0; i < 2 * n; ++i) yd[i] += s * xd[i];
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{cmv_acc_scalar, cdot_scalar, fro_sq_scalar, axpy_rs_scalar};
  return ops;
}

}  // namespace cesolve::kernels
