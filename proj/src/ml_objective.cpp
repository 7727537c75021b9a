// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/ml_objective.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cesolve/kernels.hpp"

namespace cesolve::ml {

namespace {

constexpr double kFloorFraction = 1e-14;

[[noreturn]] void throw_singular(int k, int m, double q, double floor)
{
    std::ostringstream msg;
    msg << "singular direction: quadratic form " << q << " against covariance " << k
        << " at column " << m << " is at or below the floor " << floor;
    throw std::domain_error(msg.str());
}

}  // namespace

ObjectiveContext::ObjectiveContext(std::vector<HermitianCovariance> covariances)
    : covariances_(std::move(covariances))
{
    if (covariances_.empty())
        throw std::invalid_argument("objective needs at least one covariance");
    dim_ = covariances_.front().dim();
    op_norms_.reserve(covariances_.size());
    floors_.reserve(covariances_.size());
    for (const auto& cov : covariances_) {
        if (cov.dim() != dim_)
            throw std::invalid_argument("objective covariances differ in dimension");
        Eigen::SelfAdjointEigenSolver<Matrix> es(cov.matrix(), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigendecomposition failed in ObjectiveContext");
        op_norms_.push_back(es.eigenvalues().cwiseAbs().maxCoeff());
        floors_.push_back(kFloorFraction * cov.trace());
    }
}

Evaluation evaluate(const Matrix& u, const ObjectiveContext& ctx, bool with_gradient)
{
    const int m = ctx.dim();
    const int count = ctx.count();
    if (u.rows() != m || u.cols() != m)
        throw std::invalid_argument("basis dimension does not match the objective");
    if (!u.allFinite())
        throw std::invalid_argument("basis contains non-finite entries");

    Evaluation ev;
    ev.quad_forms.resize(count, m);
    if (with_gradient)
        ev.gradient = Matrix::Zero(m, m);

    Matrix w(m, m);
    RealVector curv_norm = RealVector::Zero(m);
    RealVector curv_quad = RealVector::Zero(m);

    for (int k = 0; k < count; ++k) {
        const HermitianCovariance& cov = ctx.covariance(k);
        kernels::mat_cols(cov.data(), u.data(), w.data(), m);
        const double imag_budget = 1e-10 * std::max(1.0, cov.trace());
        for (int col = 0; col < m; ++col) {
            const cxd* ucol = u.data() + static_cast<std::ptrdiff_t>(col) * m;
            const cxd* wcol = w.data() + static_cast<std::ptrdiff_t>(col) * m;
            const cxd q = kernels::cdot(ucol, wcol, m);
            if (std::abs(q.imag()) > imag_budget)
                throw std::runtime_error("quadratic form has a non-negligible imaginary part");
            const double qr = q.real();
            if (!(qr > ctx.eps_floor(k)))
                throw_singular(k, col, qr, ctx.eps_floor(k));
            ev.quad_forms(k, col) = qr;
            ev.cost += std::log(qr);
            if (with_gradient) {
                cxd* gcol = ev.gradient.data() + static_cast<std::ptrdiff_t>(col) * m;
                kernels::axpy_rs(1.0 / qr, wcol, gcol, m);
                curv_norm[col] += ctx.op_norm(k) / qr;
                curv_quad[col] += kernels::fro_sq(wcol, m) / (qr * qr);
            }
        }
    }
    if (with_gradient)
        ev.curvature = std::max(curv_norm.maxCoeff(), curv_quad.maxCoeff());
    return ev;
}

double cost_at(const Matrix& u, const ObjectiveContext& ctx)
{
    return evaluate(u, ctx, false).cost;
}

double cost(const UnitaryMatrix& u, const ObjectiveContext& ctx)
{
    return cost_at(u.matrix(), ctx);
}

Matrix gradient_at(const Matrix& u, const ObjectiveContext& ctx)
{
    return evaluate(u, ctx, true).gradient;
}

Matrix gradient(const UnitaryMatrix& u, const ObjectiveContext& ctx)
{
    return gradient_at(u.matrix(), ctx);
}

Matrix hessian_block(const UnitaryMatrix& u, const ObjectiveContext& ctx, int column)
{
    const int m = ctx.dim();
    if (u.dim() != m)
        throw std::invalid_argument("basis dimension does not match the objective");
    if (column < 0 || column >= m)
        throw std::invalid_argument("hessian block column out of range");

    const cxd* ucol = u.data() + static_cast<std::ptrdiff_t>(column) * m;
    ComplexVector w(m);
    Matrix block = Matrix::Zero(m, m);
    for (int k = 0; k < ctx.count(); ++k) {
        const HermitianCovariance& cov = ctx.covariance(k);
        kernels::mat_vec(cov.data(), ucol, w.data(), m);
        const cxd q = kernels::cdot(ucol, w.data(), m);
        const double qr = q.real();
        if (!(qr > ctx.eps_floor(k)))
            throw_singular(k, column, qr, ctx.eps_floor(k));
        block.noalias() += cov.matrix().transpose() / qr;
        // (S u u^H S)^T = conj(w) w^T with w = S u.
        block.noalias() -= (w.conjugate() * w.transpose()) / (qr * qr);
    }
    return block;
}

double lipschitz_estimate(const UnitaryMatrix& u, const ObjectiveContext& ctx)
{
    return evaluate(u.matrix(), ctx, true).curvature;
}

std::vector<EigenvalueVector> optimal_lambdas(const UnitaryMatrix& u,
                                              const ObjectiveContext& ctx)
{
    const Evaluation ev = evaluate(u.matrix(), ctx, false);
    std::vector<EigenvalueVector> lambdas;
    lambdas.reserve(static_cast<std::size_t>(ctx.count()));
    for (int k = 0; k < ctx.count(); ++k)
        lambdas.emplace_back(ev.quad_forms.row(k).transpose());
    return lambdas;
}

}  // namespace cesolve::ml
