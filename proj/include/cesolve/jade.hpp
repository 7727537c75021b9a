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

#include <vector>

#include "cesolve/types.hpp"

namespace cesolve::jade {

struct JacobiConfig {
  int max_sweeps = 100;
  double rot_threshold = 1e-12;  // skip rotations with |s| below this
  double off_tol = 1e-12;        // stop when the relative off-diagonal
                                 // energy decrease per sweep falls below this
};

/// Basis plus convergence diagnostics: off_energy[s] is the total
/// off-diagonal energy after s sweeps (entry 0 is the starting energy).
struct JadeResult {
  UnitaryMatrix basis;
  int sweeps = 0;
  std::vector<double> off_energy;
  bool converged = false;
};

/// Jacobi joint approximate diagonalization of a Hermitian family: sweeps
/// complex Givens rotations over all index pairs in lexicographic order,
/// each one chosen (via the leading eigenvector of a 3x3 real symmetric
/// pair statistic) to maximally reduce the total off-diagonal energy
/// sum_k ||off(V^H S_k V)||_F^2.
JadeResult jade_diagonalize_traced(const std::vector<HermitianCovariance>& covariances,
                                   const JacobiConfig& config = {});

UnitaryMatrix jade_diagonalize(const std::vector<HermitianCovariance>& covariances,
                               const JacobiConfig& config = {});

}  // namespace cesolve::jade
