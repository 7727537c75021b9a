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
#include <optional>
#include <string>
#include <vector>

#include "cesolve/ml_objective.hpp"
#include "cesolve/types.hpp"

namespace cesolve::pgd {

enum class StepRule { lipschitz_backtracking, diminishing };
enum class InitKind { random, given, fourier };
enum class TerminationStatus { converged_by_move, max_iters };

const char* step_rule_name(StepRule rule);
StepRule step_rule_from_name(const std::string& name);
const char* init_kind_name(InitKind kind);
InitKind init_kind_from_name(const std::string& name);
const char* termination_status_name(TerminationStatus status);

struct PgdConfig {
  int max_iters = 2000;
  double tol_move = 1e-9;  // stop when ||U_{t+1} - U_t||_F falls below this
  StepRule step_rule = StepRule::lipschitz_backtracking;
  double alpha0 = 2.0;  // diminishing schedule alpha0 / t, t = 1, 2, ...
  double shrink = 0.5;  // backtracking step shrink factor
  InitKind init = InitKind::random;
  std::uint64_t init_seed = 0;
  std::optional<Matrix> init_basis;  // required for InitKind::given
};

struct TraceRow {
  int iter = 0;
  double cost = 0.0;
  double step = 0.0;
  double move = 0.0;
  double defect = 0.0;
};

/// Per-iteration history of a solve. Row 0 describes the starting point
/// (zero step and move); with the backtracking rule the cost column is
/// non-increasing by construction.
struct SolveTrace {
  std::vector<TraceRow> rows;
  TerminationStatus status = TerminationStatus::max_iters;

  int iterations() const { return rows.empty() ? 0 : rows.back().iter; }
};

struct SolveResult {
  UnitaryMatrix basis;
  std::vector<EigenvalueVector> lambdas;
  SolveTrace trace;
  double final_cost = 0.0;
};

/// Projected gradient descent on the unitary set: gradient step, SVD
/// projection, repeat. With lipschitz_backtracking the step starts at the
/// inverse local curvature bound and halves until the candidate sits below
/// the quadratic proxy model, which yields monotone cost descent; the
/// diminishing rule follows alpha0 / t with no such guarantee.
SolveResult pgd_solve(const ml::ObjectiveContext& ctx, const PgdConfig& config);

/// Quadratic upper model anchored at `at`:
///   f(at) + <grad f(at), U - at>_R + (L/2) ||U - at||_F^2
/// with the real trace inner product. Equals the cost at U = at.
double proxy_value(const UnitaryMatrix& u, const UnitaryMatrix& at,
                   const ml::ObjectiveContext& ctx, double lipschitz);

}  // namespace cesolve::pgd
