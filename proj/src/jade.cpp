// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/jade.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "cesolve/kernels.hpp"

namespace cesolve::jade {

namespace {

double total_off_energy(const std::vector<Matrix>& mats)
{
    double acc = 0.0;
    for (const Matrix& a : mats)
        acc += kernels::off_diag_energy(a.data(), static_cast<int>(a.rows()));
    return acc;
}

// Rotation in the (p, q) plane: columns transform as
//   col_p' = c col_p - s col_q,   col_q' = conj(s) col_p + c col_q
// with real c >= 1/sqrt(2). Applied as A <- W^H A W and V <- V W.
struct Rotation {
    double c;
    cxd s;
};

void rotate_columns(Matrix& a, int p, int q, const Rotation& r)
{
    const int m = static_cast<int>(a.rows());
    for (int row = 0; row < m; ++row) {
        const cxd ap = a(row, p);
        const cxd aq = a(row, q);
        a(row, p) = r.c * ap - r.s * aq;
        a(row, q) = std::conj(r.s) * ap + r.c * aq;
    }
}

void rotate_rows(Matrix& a, int p, int q, const Rotation& r)
{
    const int m = static_cast<int>(a.cols());
    for (int col = 0; col < m; ++col) {
        const cxd ap = a(p, col);
        const cxd aq = a(q, col);
        a(p, col) = r.c * ap - std::conj(r.s) * aq;
        a(q, col) = r.s * ap + r.c * aq;
    }
}

}  // namespace

JadeResult jade_diagonalize_traced(const std::vector<HermitianCovariance>& covariances,
                                   const JacobiConfig& config)
{
    if (covariances.empty())
        throw std::invalid_argument("joint diagonalization needs at least one covariance");
    if (config.max_sweeps < 1)
        throw std::invalid_argument("max_sweeps must be at least 1");

    const int m = covariances.front().dim();
    std::vector<Matrix> work;
    work.reserve(covariances.size());
    for (const auto& cov : covariances) {
        if (cov.dim() != m)
            throw std::invalid_argument("dimension mismatch across covariances");
        work.push_back(cov.matrix());
    }

    Matrix v = Matrix::Identity(m, m);
    JadeResult result{UnitaryMatrix(v), 0, {}, false};
    result.off_energy.push_back(total_off_energy(work));

    for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < m - 1; ++p) {
            for (int q = p + 1; q < m; ++q) {
                // Pair statistic: for Hermitian inputs the vector
                // h = (a_pp - a_qq, 2 Re a_pq, 2 Im a_pq) is real, and the
                // achievable diagonal gain is w^T G w over unit w.
                Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
                for (const Matrix& a : work) {
                    const Eigen::Vector3d h(a(p, p).real() - a(q, q).real(),
                                            2.0 * a(p, q).real(),
                                            2.0 * a(p, q).imag());
                    g.noalias() += h * h.transpose();
                }
                if (!(g.trace() > 0.0))
                    continue;  // the pair is exactly diagonal in every matrix

                Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);
                if (es.info() != Eigen::Success)
                    throw std::runtime_error("pair statistic eigendecomposition failed");
                Eigen::Vector3d w = es.eigenvectors().col(2);  // leading
                // Sign fix: first component nonnegative keeps the rotation on
                // the near-identity branch and makes sweeps deterministic.
                if (w[0] < 0.0 || (w[0] == 0.0 && (w[1] < 0.0 || (w[1] == 0.0 && w[2] < 0.0))))
                    w = -w;

                const double x = w[0], y = w[1], z = w[2];
                const double c = std::sqrt(0.5 * (1.0 + x));
                const cxd s = cxd(-y, z) / std::sqrt(2.0 * (1.0 + x));
                if (std::abs(s) < config.rot_threshold)
                    continue;

                const Rotation rot{c, s};
                for (Matrix& a : work) {
                    rotate_columns(a, p, q, rot);
                    rotate_rows(a, p, q, rot);
                }
                rotate_columns(v, p, q, rot);
                rotated = true;
            }
        }

        const double prev = result.off_energy.back();
        const double off = total_off_energy(work);
        result.off_energy.push_back(off);
        result.sweeps = sweep;

        if (!rotated || prev - off < config.off_tol * std::max(prev, 1e-300)) {
            result.converged = true;
            break;
        }
    }

    result.basis = UnitaryMatrix(v);
    return result;
}

UnitaryMatrix jade_diagonalize(const std::vector<HermitianCovariance>& covariances,
                               const JacobiConfig& config)
{
    return jade_diagonalize_traced(covariances, config).basis;
}

}  // namespace cesolve::jade
