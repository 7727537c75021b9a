// SPDX-License-Identifier: Apache-2.0
//
// cesolve - common eigenstructure estimation for covariance ensembles
// Copyright (C) 2026 The cesolve authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "cesolve/rng.hpp"

#include <cmath>

namespace cesolve {

namespace {

constexpr std::uint64_t kParity = 0x1BD11BDAA9FC1A22ULL;
constexpr int kRounds = 20;
constexpr int kRot[8] = {16, 42, 12, 31, 16, 32, 24, 21};

inline std::uint64_t rotl(std::uint64_t x, int r) {
  return (x << r) | (x >> (64 - r));
}

}  // namespace

std::array<std::uint64_t, 2> threefry2x64(const std::array<std::uint64_t, 2>& key,
                                          const std::array<std::uint64_t, 2>& counter) {
  const std::uint64_t ks[3] = {key[0], key[1], key[0] ^ key[1] ^ kParity};
  std::uint64_t x0 = counter[0] + ks[0];
  std::uint64_t x1 = counter[1] + ks[1];
  for (int d = 0; d < kRounds; ++d) {
    x0 += x1;
    x1 = rotl(x1, kRot[d % 8]);
    x1 ^= x0;
    if ((d + 1) % 4 == 0) {
      const std::uint64_t s = static_cast<std::uint64_t>(d + 1) / 4;
      x0 += ks[s % 3];
      x1 += ks[(s + 1) % 3] + s;
    }
  }
  return {x0, x1};
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = master;
  std::uint64_t depth = 0;
  for (std::uint64_t word : path) {
    const auto block = threefry2x64({state, 0x243F6A8885A308D3ULL}, {word, depth++});
    state = block[0];
  }
  return state;
}

std::uint64_t CounterRng::next_u64() {
  if (block_pos_ >= 2) {
    block_ = threefry2x64(key_, counter_);
    if (++counter_[0] == 0) ++counter_[1];
    block_pos_ = 0;
  }
  return block_[block_pos_++];
}

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
  if (has_gauss_) {
    has_gauss_ = false;
    return gauss_cache_;
  }
  const double u1 = 1.0 - next_double();  // (0, 1]
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  gauss_cache_ = r * std::sin(theta);
  has_gauss_ = true;
  return r * std::cos(theta);
}

std::complex<double> CounterRng::next_cgaussian() {
  const double re = next_gaussian();
  const double im = next_gaussian();
  return {re * 0.70710678118654752440, im * 0.70710678118654752440};
}

}  // namespace cesolve
