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

#include <string>

#include <json.hpp>

#include "cesolve/pgd_solver.hpp"
#include "cesolve/types.hpp"

namespace cesolve::serialize {

/// Matrices travel as flat row-major arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, int rows, int cols);

/// Ensemble layout:
///   { "kind", "M", "K", "seed", "covariances": [[ [re, im], ... ]],
///     "common_basis"?, "eigenvalues"? }
nlohmann::json ensemble_to_json(const Ensemble& ensemble);
Ensemble ensemble_from_json(const nlohmann::json& j);

nlohmann::json solve_result_to_json(const pgd::SolveResult& result);

/// Iteration trace as CSV with header `iter,cost,step,move,defect`.
std::string trace_to_csv(const pgd::SolveTrace& trace);

/// Fixed scientific formatting (%.12e) used by every CSV emitter, so that
/// identical runs produce byte-identical files.
std::string format_e12(double value);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace cesolve::serialize
