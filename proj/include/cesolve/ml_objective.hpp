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

namespace cesolve::ml {

/// The covariance family the maximum-likelihood cost is evaluated against,
/// with cached operator norms and per-covariance floors for the quadratic
/// forms. Quadratic forms at or below the floor (1e-14 of the trace) raise
/// a "singular direction" error: the model assumes non-singular sample
/// covariances and we refuse to regularize silently.
class ObjectiveContext {
 public:
  explicit ObjectiveContext(std::vector<HermitianCovariance> covariances);

  int dim() const { return dim_; }
  int count() const { return static_cast<int>(covariances_.size()); }
  const HermitianCovariance& covariance(int k) const { return covariances_[static_cast<std::size_t>(k)]; }
  const std::vector<HermitianCovariance>& covariances() const { return covariances_; }
  /// Largest eigenvalue of covariance k.
  double op_norm(int k) const { return op_norms_[static_cast<std::size_t>(k)]; }
  /// Smallest admissible quadratic form against covariance k.
  double eps_floor(int k) const { return floors_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<HermitianCovariance> covariances_;
  std::vector<double> op_norms_;
  std::vector<double> floors_;
  int dim_ = 0;
};

/// One fused pass over the ensemble: cost, the K-by-M table of quadratic
/// forms q_{k,m} = u_m^H S_k u_m, and optionally the gradient together with
/// the local curvature bound. Shared by the public operations and by the
/// solver hot loop. Accumulation order is fixed (k outer, m inner) so
/// results are bitwise reproducible.
struct Evaluation {
  double cost = 0.0;
  Matrix gradient;             // M x M, only when requested
  Eigen::MatrixXd quad_forms;  // K x M
  double curvature = 0.0;      // local Lipschitz bound, only when requested
};

Evaluation evaluate(const Matrix& u, const ObjectiveContext& ctx, bool with_gradient);

/// f(U) = sum_{m,k} log(u_m^H S_k u_m). Defined for any square matrix with
/// positive quadratic forms; the unconstrained overload is what finite
/// difference checks probe, since perturbed points leave the manifold.
double cost_at(const Matrix& u, const ObjectiveContext& ctx);
double cost(const UnitaryMatrix& u, const ObjectiveContext& ctx);

/// Conjugate (Wirtinger) gradient, column m: sum_k S_k u_m / q_{k,m}.
/// No factor two: the convention matching the mixed-derivative Hessian
/// blocks, with any constant absorbed by the step size.
Matrix gradient_at(const Matrix& u, const ObjectiveContext& ctx);
Matrix gradient(const UnitaryMatrix& u, const ObjectiveContext& ctx);

/// Diagonal Hessian block for column `column` (0-based):
///   sum_k S_k^T / q_{k,m}  -  sum_k (S_k u_m u_m^H S_k)^T / q_{k,m}^2.
/// Hermitian; the difference of two PSD terms.
Matrix hessian_block(const UnitaryMatrix& u, const ObjectiveContext& ctx, int column);

/// Local curvature bound: max over columns of
///   max{ sum_k ||S_k||_op / q_{k,m},  sum_k ||S_k u_m||^2 / q_{k,m}^2 }.
/// An upper bound on every block's operator norm at the given point.
double lipschitz_estimate(const UnitaryMatrix& u, const ObjectiveContext& ctx);

/// The eliminated eigenvalue estimates: lambda_{k,m} = u_m^H S_k u_m.
std::vector<EigenvalueVector> optimal_lambdas(const UnitaryMatrix& u,
                                              const ObjectiveContext& ctx);

}  // namespace cesolve::ml
