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

namespace cesolve::manifold {

/// Frobenius-nearest unitary matrix: for V = S D T^H returns S T^H.
/// The minimizer is unique when V is nonsingular; for singular V the
/// SVD-induced choice is returned.
UnitaryMatrix project(const Matrix& v);

/// Random unitary matrix: eigenvector basis of the Hermitian part of an
/// i.i.d. complex Gaussian matrix.
UnitaryMatrix random_unitary(int dim, std::uint64_t seed);

/// ||U^H U - I||_F for an arbitrary square matrix.
double unitarity_defect(const Matrix& u);

/// Diagnostics-only helper: permutes and phase-rotates the columns of `candidate`
/// to greedily match `reference` by |inner product|. Comparisons in tests and
/// experiments use cost and the diagonalization metric instead; this exists to
/// make differences human-readable.
Matrix align_columns(const Matrix& reference, const Matrix& candidate);

}  // namespace cesolve::manifold
