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

#include <optional>
#include <vector>

#include "cesolve/ml_objective.hpp"
#include "cesolve/pgd_solver.hpp"
#include "cesolve/types.hpp"

namespace cesolve::metrics {

/// Diagonalization quality: eta = 1 - mean_k of
/// ||diag(U^H S_k U)||_2 / ||S_k||_F, zero iff U diagonalizes every S_k.
struct MetricReport {
  double eta = 0.0;
  std::vector<double> per_k_terms;
  std::optional<double> cost_gap;
};

MetricReport diag_metric(const UnitaryMatrix& u,
                         const std::vector<HermitianCovariance>& covariances);

/// True iff x majorizes y: equal sums (within 1e-9) and every descending
/// partial sum of x dominates the corresponding one of y (slack 1e-10).
/// A sum mismatch beyond tolerance is a contract violation, not "false".
bool majorization_check(const std::vector<double>& x, const std::vector<double>& y);

/// The unitary DFT matrix, entries (1/sqrt(M)) exp(j 2 pi (m-1)(n-1) / M).
UnitaryMatrix fourier_basis(int m);

/// cost(result.basis) - cost(reference) on the given objective. Negative
/// values are meaningful: a fitted basis beats the generating one on
/// sampled covariances.
double cost_gap(const pgd::SolveResult& result, const UnitaryMatrix& reference,
                const ml::ObjectiveContext& ctx);

}  // namespace cesolve::metrics
