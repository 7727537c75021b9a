// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/covariance_model.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cesolve/rng.hpp"
#include "cesolve/unitary_manifold.hpp"

namespace cesolve::cov {

namespace {

// Path tags for subseed derivation; arbitrary but fixed constants so that
// every consumer of a master seed gets a disjoint Threefry stream.
constexpr std::uint64_t kTagBasis = 0x62617369;   // shared/per-k bases
constexpr std::uint64_t kTagLambda = 0x6c616d62;  // eigenvalue draws
constexpr std::uint64_t kTagUla = 0x756c6161;     // ULA interval draws
constexpr std::uint64_t kTagRealize = 0x7265616c; // realization batches

EigenvalueVector draw_normalized_lambdas(int m, CounterRng& rng)
{
    RealVector lambda(m);
    for (int i = 0; i < m; ++i)
        lambda[i] = std::abs(rng.next_gaussian());
    const double sum = lambda.sum();
    if (!(sum > 0.0))
        throw std::runtime_error("degenerate eigenvalue draw");
    lambda /= sum;  // trace of U diag(lambda) U^H becomes exactly sum(lambda) = 1
    return EigenvalueVector(lambda);
}

HermitianCovariance rotate_spectrum(const UnitaryMatrix& basis, const EigenvalueVector& lambda)
{
    const Matrix sigma = basis.matrix() *
                         lambda.values().cast<cxd>().asDiagonal() *
                         basis.matrix().adjoint();
    return HermitianCovariance(sigma);
}

// Toeplitz ULA covariance for power spread uniformly over the angle interval
// [lo, hi] (radians), discretized on a midpoint grid in u = sin(angle) with
// the change-of-variable weight 1/sqrt(1 - u^2). Built from its first-column
// symbol, so Hermitian Toeplitz structure is exact, and scaled to unit trace.
Matrix ula_interval_covariance(int m, double spacing, int grid, double lo, double hi)
{
    const double u_lo = std::sin(lo);
    const double u_hi = std::sin(hi);
    const double du = 2.0 / grid;

    std::vector<double> weights;
    std::vector<double> points;
    weights.reserve(static_cast<std::size_t>(grid));
    points.reserve(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        const double u = -1.0 + (i + 0.5) * du;
        if (u < u_lo || u > u_hi)
            continue;
        points.push_back(u);
        weights.push_back(1.0 / std::sqrt(1.0 - u * u));
    }
    if (points.empty()) {
        // Interval narrower than one grid cell: fall back to the nearest
        // midpoint so the covariance stays well defined (rank one).
        const double target = 0.5 * (u_lo + u_hi);
        const int idx = std::clamp(static_cast<int>(std::floor((target + 1.0) / du)), 0, grid - 1);
        points.push_back(-1.0 + (idx + 0.5) * du);
        weights.push_back(1.0);
    }

    double mass = 0.0;
    for (double w : weights)
        mass += w;

    // Symbol t_d = sum_i w_i exp(+j 2 pi spacing d u_i); entry (r,c) = t_{r-c}.
    std::vector<cxd> symbol(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) {
        cxd acc(0.0, 0.0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double phase = 2.0 * std::numbers::pi * spacing * d * points[i];
            acc += weights[i] * cxd(std::cos(phase), std::sin(phase));
        }
        symbol[static_cast<std::size_t>(d)] = acc / (mass * m);  // trace = m * t_0 = 1
    }

    Matrix sigma(m, m);
    for (int c = 0; c < m; ++c) {
        for (int r = 0; r < m; ++r) {
            const int d = r - c;
            sigma(r, c) = d >= 0 ? symbol[static_cast<std::size_t>(d)]
                                 : std::conj(symbol[static_cast<std::size_t>(-d)]);
        }
    }
    return sigma;
}

int effective_rank_of(const Matrix& sigma)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed in effective_rank");
    RealVector ev = es.eigenvalues();  // ascending
    const double total = ev.sum();
    double cum = 0.0;
    for (int r = 1; r <= ev.size(); ++r) {
        cum += ev[ev.size() - r];
        if (cum >= 0.95 * total)
            return r;
    }
    return static_cast<int>(ev.size());
}

}  // namespace

HermitianCovariance sample_covariance(const RealizationBatch& h)
{
    const Matrix& x = h.matrix();
    const Matrix sigma = (x * x.adjoint()) / static_cast<double>(h.count());
    return HermitianCovariance(sigma);
}

RealizationBatch sample_realizations(const HermitianCovariance& sigma, int n,
                                     std::uint64_t seed)
{
    if (n < 1)
        throw std::invalid_argument("empty realization batch: need at least one sample");

    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed in sample_realizations");

    const int m = sigma.dim();
    RealVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix factor = es.eigenvectors() * roots.cast<cxd>().asDiagonal();

    CounterRng rng(derive_seed(seed, {kTagRealize}));
    Matrix g(m, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            g(i, j) = rng.next_cgaussian();

    return RealizationBatch(factor * g);
}

Ensemble gen_joint_ensemble(int m, int k, std::uint64_t seed)
{
    if (m < 1 || k < 1)
        throw std::invalid_argument("ensemble needs m >= 1 and k >= 1");

    Ensemble out;
    out.kind = GeneratorKind::joint;
    out.seed = seed;
    UnitaryMatrix basis = manifold::random_unitary(m, derive_seed(seed, {kTagBasis}));

    for (int i = 0; i < k; ++i) {
        CounterRng rng(derive_seed(seed, {kTagLambda, static_cast<std::uint64_t>(i)}));
        EigenvalueVector lambda = draw_normalized_lambdas(m, rng);
        out.covariances.push_back(rotate_spectrum(basis, lambda));
        out.eigenvalues.push_back(std::move(lambda));
    }
    out.common_basis = std::move(basis);
    return out;
}

Ensemble gen_independent_ensemble(int m, int k, std::uint64_t seed)
{
    if (m < 1 || k < 1)
        throw std::invalid_argument("ensemble needs m >= 1 and k >= 1");

    Ensemble out;
    out.kind = GeneratorKind::independent;
    out.seed = seed;
    for (int i = 0; i < k; ++i) {
        UnitaryMatrix basis = manifold::random_unitary(
            m, derive_seed(seed, {kTagBasis, static_cast<std::uint64_t>(i)}));
        CounterRng rng(derive_seed(seed, {kTagLambda, static_cast<std::uint64_t>(i)}));
        EigenvalueVector lambda = draw_normalized_lambdas(m, rng);
        out.covariances.push_back(rotate_spectrum(basis, lambda));
        out.eigenvalues.push_back(std::move(lambda));
    }
    return out;
}

Ensemble gen_ula_ensemble(int m, int k, const UlaParams& params, std::uint64_t seed)
{
    if (m < 2 || k < 1)
        throw std::invalid_argument("ULA ensemble needs m >= 2 and k >= 1");
    if (params.effective_rank_target < 1 || params.effective_rank_target > m)
        throw std::invalid_argument("effective rank target must lie in [1, M]");
    if (params.wavelength_spacing_ratio <= 0.0)
        throw std::invalid_argument("antenna spacing must be positive");
    if (params.grid_size < 0)
        throw std::invalid_argument("grid size must be nonnegative");

    const int grid = params.grid_size > 0 ? params.grid_size : 32 * m;
    const double pi = std::numbers::pi;
    const int target = params.effective_rank_target;

    Ensemble out;
    out.kind = GeneratorKind::ula;
    out.seed = seed;

    for (int i = 0; i < k; ++i) {
        CounterRng rng(derive_seed(seed, {kTagUla, static_cast<std::uint64_t>(i)}));
        const double center = -0.5 * pi + pi * rng.next_double();

        auto build = [&](double width) {
            const double lo = std::max(-0.5 * pi, center - 0.5 * width);
            const double hi = std::min(0.5 * pi, center + 0.5 * width);
            return ula_interval_covariance(m, params.wavelength_spacing_ratio, grid, lo, hi);
        };

        // Monotone width -> effective-rank map: start at the width fraction
        // target/M of the domain, then bisect on the measured rank.
        double width = pi * static_cast<double>(target) / m;
        Matrix sigma = build(width);
        int rank = effective_rank_of(sigma);

        double lo_w = 0.0, hi_w = pi;
        Matrix best = sigma;
        int best_gap = std::abs(rank - target);
        for (int step = 0; step < 30 && rank != target; ++step) {
            if (rank < target)
                lo_w = width;
            else
                hi_w = width;
            width = 0.5 * (lo_w + hi_w);
            sigma = build(width);
            rank = effective_rank_of(sigma);
            const int gap = std::abs(rank - target);
            if (gap < best_gap) {
                best_gap = gap;
                best = sigma;
            }
        }
        if (rank == target)
            best = sigma;

        out.covariances.emplace_back(std::move(best));
    }
    return out;
}

int effective_rank(const HermitianCovariance& sigma)
{
    return effective_rank_of(sigma.matrix());
}

}  // namespace cesolve::cov
