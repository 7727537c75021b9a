// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/unitary_manifold.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cesolve/rng.hpp"

namespace cesolve::manifold {

UnitaryMatrix project(const Matrix& v)
{
    if (v.rows() != v.cols())
        throw std::invalid_argument("projection requires a square matrix");
    if (!v.allFinite())
        throw std::invalid_argument("projection input contains non-finite entries");

    Eigen::BDCSVD<Matrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return UnitaryMatrix(svd.matrixU() * svd.matrixV().adjoint());
}

UnitaryMatrix random_unitary(int dim, std::uint64_t seed)
{
    if (dim < 1)
        throw std::invalid_argument("random_unitary requires dim >= 1");

    CounterRng rng(derive_seed(seed, {0x756e6974u}));  // "unit"
    Matrix g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i)
            g(i, j) = rng.next_cgaussian();

    Matrix h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed in random_unitary");
    return UnitaryMatrix(es.eigenvectors());
}

double unitarity_defect(const Matrix& u)
{
    if (u.rows() != u.cols())
        throw std::invalid_argument("unitarity defect requires a square matrix");
    const Matrix gram = u.adjoint() * u;
    return (gram - Matrix::Identity(u.rows(), u.cols())).norm();
}

Matrix align_columns(const Matrix& reference, const Matrix& candidate)
{
    if (reference.rows() != candidate.rows() || reference.cols() != candidate.cols())
        throw std::invalid_argument("alignment requires matrices of equal shape");

    const int m = static_cast<int>(reference.cols());
    Matrix aligned(reference.rows(), m);
    std::vector<bool> used(static_cast<std::size_t>(m), false);

    for (int r = 0; r < m; ++r) {
        int best = -1;
        double best_mag = -1.0;
        cxd best_inner(0.0, 0.0);
        for (int c = 0; c < m; ++c) {
            if (used[static_cast<std::size_t>(c)])
                continue;
            const cxd inner = reference.col(r).dot(candidate.col(c));
            const double mag = std::abs(inner);
            if (mag > best_mag) {
                best_mag = mag;
                best = c;
                best_inner = inner;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        // reference^H candidate = e^{j theta} |inner|; undo the phase.
        const cxd phase = best_mag > 0.0 ? best_inner / best_mag : cxd(1.0, 0.0);
        aligned.col(r) = candidate.col(best) * std::conj(phase);
    }
    return aligned;
}

}  // namespace cesolve::manifold
