// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/types.hpp"

#include <Eigen/Eigenvalues>

namespace cesolve {

HermitianCovariance::HermitianCovariance(Matrix entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    throw std::invalid_argument("covariance must be square and non-empty");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("covariance has non-finite entries");
  }
  const double herm_defect = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-12) {
    throw std::invalid_argument("covariance is not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
  const double tr = entries_.real().trace();
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min < -1e-10 * tr) {
    throw std::invalid_argument("covariance is not positive semidefinite (lambda_min " +
                                std::to_string(lambda_min) + ")");
  }
}

UnitaryMatrix::UnitaryMatrix(Matrix entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    throw std::invalid_argument("unitary matrix must be square and non-empty");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("unitary matrix has non-finite entries");
  }
  const int m = static_cast<int>(entries.rows());
  const double defect = (entries.adjoint() * entries - Matrix::Identity(m, m)).norm();
  if (defect > 1e-10) {
    throw std::invalid_argument("matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
  entries_ = std::move(entries);
}

RealizationBatch::RealizationBatch(Matrix entries) {
  if (entries.cols() < 1) {
    throw std::invalid_argument("empty realization batch");
  }
  if (entries.rows() < 1) {
    throw std::invalid_argument("realizations must have positive dimension");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("realization batch has non-finite entries");
  }
  entries_ = std::move(entries);
}

EigenvalueVector::EigenvalueVector(RealVector values) {
  if (values.size() < 1) {
    throw std::invalid_argument("eigenvalue vector must be non-empty");
  }
  if ((values.array() <= 0.0).any()) {
    throw std::invalid_argument("eigenvalues must be strictly positive");
  }
  values_ = std::move(values);
}

const char* generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::joint: return "joint";
    case GeneratorKind::independent: return "independent";
    case GeneratorKind::ula: return "ula";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_name(const std::string& name) {
  if (name == "joint") return GeneratorKind::joint;
  if (name == "independent") return GeneratorKind::independent;
  if (name == "ula") return GeneratorKind::ula;
  throw std::invalid_argument("unknown ensemble kind: " + name);
}

}  // namespace cesolve
