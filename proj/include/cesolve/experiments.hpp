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
#include <iosfwd>
#include <string>
#include <vector>

#include "cesolve/jade.hpp"
#include "cesolve/pgd_solver.hpp"
#include "cesolve/types.hpp"

namespace cesolve::expt {

enum class Study { fig1, fig2, fig3, custom };

const char* study_name(Study study);
Study study_from_name(const std::string& name);

/// One Monte Carlo study. The grid holds sample counts N for fig1/fig2 and
/// custom, and array sizes M for fig3; an empty grid selects the study
/// default. Trials default to the full-scale 1000; callers are expected to
/// scale down for quick runs.
struct ExperimentConfig {
  Study study = Study::fig1;
  int m = 16;
  int k = 8;
  GeneratorKind kind = GeneratorKind::joint;  // used by the custom study only
  int trials = 1000;
  std::vector<int> grid;
  std::uint64_t seed = 0;
  bool exact = false;  // custom study: solve on exact covariances
  pgd::PgdConfig solver;  // init_seed is re-derived per (trial, grid point)
  jade::JacobiConfig jacobi;
};

/// One CSV row. wall_ms is always written as 0: measured wall times vary
/// between runs and would break byte-identical reproducibility, so they are
/// reported in the stderr study summary instead.
struct ResultRecord {
  std::string study;
  int trial = 0;
  int grid_value = 0;
  std::string method;  // pgd | jade | fourier | oracle_ces
  double cost = 0.0;
  double eta = 0.0;
  int iters = 0;
  std::int64_t wall_ms = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
};

/// Runs the study over CESOLVE_THREADS workers (default: hardware
/// concurrency). Per-trial subseeds are derived up front and rows are
/// emitted in a fixed trial-major order, so the result does not depend on
/// scheduling. Solver failures become status="error" rows rather than
/// aborting the study. Prints a one-line summary with wall-time totals to
/// stderr.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& config);

/// Schema: study,trial,grid,method,cost,eta,iters,wall_ms,seed,status with
/// %.12e floats.
void write_experiment_csv(const std::vector<ResultRecord>& rows, std::ostream& out);

/// A small gnuplot script plotting the study's headline curves from the CSV.
std::string plot_script(Study study, const std::string& csv_path);

}  // namespace cesolve::expt
