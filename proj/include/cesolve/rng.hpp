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

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace cesolve {

/// Threefry-2x64 block function, 20 rounds. Counter-based: the output is a
/// pure function of (key, counter), so independent streams are cheap and
/// results do not depend on who draws first.
std::array<std::uint64_t, 2> threefry2x64(const std::array<std::uint64_t, 2>& key,
                                          const std::array<std::uint64_t, 2>& counter);

/// Deterministic subseed derivation: folds the path words into the master
/// seed through the Threefry block function. Used to give every
/// (trial, process, grid point, purpose) its own independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// A forward-only stream over the Threefry block function.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key0, std::uint64_t key1 = 0)
      : key_{key0, key1} {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_double();

  /// Standard normal via Box-Muller (pairs cached).
  double next_gaussian();

  /// Circularly-symmetric complex Gaussian, E|z|^2 = 1.
  std::complex<double> next_cgaussian();

 private:
  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 2> counter_{0, 0};
  std::array<std::uint64_t, 2> block_{0, 0};
  int block_pos_ = 2;  // 2 = empty
  double gauss_cache_ = 0.0;
  bool has_gauss_ = false;
};

}  // namespace cesolve
