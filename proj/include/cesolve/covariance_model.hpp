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

#include <cstdint>

#include "cesolve/types.hpp"

namespace cesolve::cov {

/// (1/N) H H^H. Hermitian PSD by construction; keeps the natural scale
/// (no trace normalization).
HermitianCovariance sample_covariance(const RealizationBatch& h);

/// N i.i.d. circularly-symmetric complex Gaussian columns with covariance
/// sigma, drawn as sigma^{1/2} g through a Hermitian eigendecomposition
/// (negative rounding eigenvalues clipped at zero, so rank-deficient inputs
/// are fine). Deterministic in (sigma, n, seed); columns fill left to right.
RealizationBatch sample_realizations(const HermitianCovariance& sigma, int n,
                                     std::uint64_t seed);

/// K covariances sharing one eigenvector basis: Sigma_k = U diag(l_k) U^H
/// with U the eigenvector matrix of a random Gaussian matrix's Hermitian
/// part and l_{k,m} = |rho| for rho standard normal, rescaled so every
/// trace is exactly one. The returned ensemble carries the basis and the
/// rescaled eigenvalue vectors as ground truth.
Ensemble gen_joint_ensemble(int m, int k, std::uint64_t seed);

/// Same eigenvalue law but an independent random basis per covariance, so
/// the family is (almost surely) not jointly diagonalizable. No common
/// basis in the result.
Ensemble gen_independent_ensemble(int m, int k, std::uint64_t seed);

/// K uniform-linear-array covariances: for each one, power is spread
/// uniformly over a random contiguous arrival-angle interval and the
/// integral over array responses is discretized on a uniform grid in
/// sin(angle). The interval width starts at the fraction
/// effective_rank_target / M of the angular domain and is refined by
/// bisection on the measured effective rank. Trace-normalized, exactly
/// Toeplitz by construction.
Ensemble gen_ula_ensemble(int m, int k, const UlaParams& params, std::uint64_t seed);

/// Smallest r such that the r largest eigenvalues hold at least 95% of the
/// trace. The sharpness proxy used to calibrate ULA interval widths.
int effective_rank(const HermitianCovariance& sigma);

}  // namespace cesolve::cov
