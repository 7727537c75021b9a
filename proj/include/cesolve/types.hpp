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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cesolve {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// M-by-M complex Hermitian positive semidefinite matrix.
///
/// Construction validates Hermitian symmetry (entrywise 1e-12) and
/// positive semidefiniteness (lambda_min >= -1e-10 * trace), then stores the
/// exactly symmetrized (A + A^H)/2 so quadratic forms are real up to
/// rounding. Not trace-normalized in general: sample covariances keep their
/// natural scale, generated ensembles are normalized by the generators.
class HermitianCovariance {
 public:
  explicit HermitianCovariance(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  const cxd* data() const { return entries_.data(); }
  double trace() const { return entries_.real().trace(); }

 private:
  Matrix entries_;
};

/// M-by-M matrix with U^H U = I within 1e-10 Frobenius defect.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  const cxd* data() const { return entries_.data(); }

 private:
  Matrix entries_;
};

/// M-by-N batch of vector realizations; column j is the j-th draw.
class RealizationBatch {
 public:
  explicit RealizationBatch(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  int count() const { return static_cast<int>(entries_.cols()); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Length-M vector of strictly positive eigenvalues.
class EigenvalueVector {
 public:
  explicit EigenvalueVector(RealVector values);

  int size() const { return static_cast<int>(values_.size()); }
  const RealVector& values() const { return values_; }
  double operator[](int i) const { return values_[i]; }

 private:
  RealVector values_;
};

enum class GeneratorKind { joint, independent, ula };

const char* generator_kind_name(GeneratorKind kind);
GeneratorKind generator_kind_from_name(const std::string& name);

/// A family of K covariances produced by one of the generators, together
/// with whatever ground truth the generator knows (shared basis for the
/// jointly diagonalizable kind, eigenvalue vectors where applicable).
struct Ensemble {
  GeneratorKind kind = GeneratorKind::joint;
  std::uint64_t seed = 0;
  std::vector<HermitianCovariance> covariances;
  std::optional<UnitaryMatrix> common_basis;  // present iff kind == joint
  std::vector<EigenvalueVector> eigenvalues;  // present for joint/independent

  int dim() const { return covariances.empty() ? 0 : covariances.front().dim(); }
  int count() const { return static_cast<int>(covariances.size()); }
};

/// Geometry and target for the uniform-linear-array generator.
struct UlaParams {
  double wavelength_spacing_ratio = 0.5;  // antenna spacing in wavelengths
  int grid_size = 0;                      // 0 = default 32 * M points in sin(angle)
  int effective_rank_target = 1;
};

}  // namespace cesolve
