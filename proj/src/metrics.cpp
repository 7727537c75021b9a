// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cesolve/kernels.hpp"

namespace cesolve::metrics {

MetricReport diag_metric(const UnitaryMatrix& u,
                         const std::vector<HermitianCovariance>& covariances)
{
    if (covariances.empty())
        throw std::invalid_argument("diagonalization metric needs at least one covariance");
    const int m = u.dim();

    MetricReport report;
    report.per_k_terms.reserve(covariances.size());

    Matrix w(m, m);
    ComplexVector diag(m);
    double acc = 0.0;
    for (const auto& cov : covariances) {
        if (cov.dim() != m)
            throw std::invalid_argument("dimension mismatch between basis and covariance");
        const double fro_sq = kernels::fro_sq(cov.data(), m * m);
        if (!(fro_sq > 0.0))
            throw std::domain_error("zero covariance has no diagonalization metric");
        kernels::mat_cols(cov.data(), u.data(), w.data(), m);
        kernels::col_inner_diag(u.data(), w.data(), diag.data(), m);
        double diag_sq = 0.0;
        for (int j = 0; j < m; ++j) {
            const double d = diag[j].real();  // real for Hermitian input
            diag_sq += d * d;
        }
        const double term = std::sqrt(diag_sq) / std::sqrt(fro_sq);
        report.per_k_terms.push_back(term);
        acc += term;
    }
    report.eta = 1.0 - acc / static_cast<double>(covariances.size());
    return report;
}

bool majorization_check(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("majorization needs vectors of equal length");
    if (x.empty())
        return true;

    double sum_x = 0.0, sum_y = 0.0;
    for (double v : x) sum_x += v;
    for (double v : y) sum_y += v;
    if (std::abs(sum_x - sum_y) > 1e-9)
        throw std::domain_error("majorization undefined: sums differ beyond tolerance");

    std::vector<double> xs = x;
    std::vector<double> ys = y;
    std::sort(xs.begin(), xs.end(), std::greater<double>());
    std::sort(ys.begin(), ys.end(), std::greater<double>());

    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        px += xs[i];
        py += ys[i];
        if (px < py - 1e-10)
            return false;
    }
    return true;
}

UnitaryMatrix fourier_basis(int m)
{
    if (m < 1)
        throw std::invalid_argument("fourier_basis needs m >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    Matrix f(m, m);
    for (int c = 0; c < m; ++c) {
        for (int r = 0; r < m; ++r) {
            // Reduce the exponent index modulo m before touching floating
            // point so large products do not lose phase accuracy.
            const long long idx = (static_cast<long long>(r) * c) % m;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(idx) / m;
            f(r, c) = scale * cxd(std::cos(angle), std::sin(angle));
        }
    }
    return UnitaryMatrix(f);
}

double cost_gap(const pgd::SolveResult& result, const UnitaryMatrix& reference,
                const ml::ObjectiveContext& ctx)
{
    return ml::cost(result.basis, ctx) - ml::cost(reference, ctx);
}

}  // namespace cesolve::metrics
