// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cesolve::serialize {

using nlohmann::json;

json matrix_to_json(const Matrix& m)
{
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

Matrix matrix_from_json(const json& j, int rows, int cols)
{
    if (!j.is_array() || j.size() != static_cast<std::size_t>(rows) * cols)
        throw std::runtime_error("matrix entry count does not match the declared shape");
    Matrix m(rows, cols);
    std::size_t i = 0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c, ++i) {
            const json& entry = j[i];
            if (!entry.is_array() || entry.size() != 2)
                throw std::runtime_error("matrix entries must be [re, im] pairs");
            m(r, c) = cxd(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

json ensemble_to_json(const Ensemble& ensemble)
{
    json j;
    j["kind"] = generator_kind_name(ensemble.kind);
    j["M"] = ensemble.dim();
    j["K"] = ensemble.count();
    j["seed"] = ensemble.seed;
    json covs = json::array();
    for (const auto& cov : ensemble.covariances)
        covs.push_back(matrix_to_json(cov.matrix()));
    j["covariances"] = std::move(covs);
    if (ensemble.common_basis.has_value())
        j["common_basis"] = matrix_to_json(ensemble.common_basis->matrix());
    if (!ensemble.eigenvalues.empty()) {
        json eigs = json::array();
        for (const auto& lambda : ensemble.eigenvalues) {
            json vec = json::array();
            for (int i = 0; i < lambda.size(); ++i)
                vec.push_back(lambda[i]);
            eigs.push_back(std::move(vec));
        }
        j["eigenvalues"] = std::move(eigs);
    }
    return j;
}

Ensemble ensemble_from_json(const json& j)
{
    for (const char* field : {"kind", "M", "K", "seed", "covariances"})
        if (!j.contains(field))
            throw std::runtime_error(std::string("ensemble JSON lacks field \"") + field + "\"");

    Ensemble out;
    out.kind = generator_kind_from_name(j["kind"].get<std::string>());
    out.seed = j["seed"].get<std::uint64_t>();
    const int m = j["M"].get<int>();
    const int k = j["K"].get<int>();
    if (m < 1 || k < 1)
        throw std::runtime_error("ensemble JSON declares a non-positive shape");

    const json& covs = j["covariances"];
    if (!covs.is_array() || covs.size() != static_cast<std::size_t>(k))
        throw std::runtime_error("ensemble JSON covariance count does not match K");
    for (const json& cov : covs)
        out.covariances.emplace_back(matrix_from_json(cov, m, m));

    if (j.contains("common_basis"))
        out.common_basis = UnitaryMatrix(matrix_from_json(j["common_basis"], m, m));

    if (j.contains("eigenvalues")) {
        const json& eigs = j["eigenvalues"];
        if (!eigs.is_array() || eigs.size() != static_cast<std::size_t>(k))
            throw std::runtime_error("ensemble JSON eigenvalue count does not match K");
        for (const json& vec : eigs) {
            if (!vec.is_array() || vec.size() != static_cast<std::size_t>(m))
                throw std::runtime_error("ensemble JSON eigenvalue vector has wrong length");
            RealVector lambda(m);
            for (int i = 0; i < m; ++i)
                lambda[i] = vec[static_cast<std::size_t>(i)].get<double>();
            out.eigenvalues.emplace_back(std::move(lambda));
        }
    }
    return out;
}

json solve_result_to_json(const pgd::SolveResult& result)
{
    json j;
    j["basis"] = matrix_to_json(result.basis.matrix());
    json lambdas = json::array();
    for (const auto& lambda : result.lambdas) {
        json vec = json::array();
        for (int i = 0; i < lambda.size(); ++i)
            vec.push_back(lambda[i]);
        lambdas.push_back(std::move(vec));
    }
    j["lambdas"] = std::move(lambdas);
    j["final_cost"] = result.final_cost;
    j["status"] = pgd::termination_status_name(result.trace.status);
    j["iterations"] = result.trace.iterations();
    return j;
}

std::string format_e12(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", value);
    return buf;
}

std::string trace_to_csv(const pgd::SolveTrace& trace)
{
    std::ostringstream out;
    out << "iter,cost,step,move,defect\n";
    for (const auto& row : trace.rows) {
        out << row.iter << ',' << format_e12(row.cost) << ',' << format_e12(row.step)
            << ',' << format_e12(row.move) << ',' << format_e12(row.defect) << '\n';
    }
    return out.str();
}

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("failed writing file: " + path);
}

}  // namespace cesolve::serialize
