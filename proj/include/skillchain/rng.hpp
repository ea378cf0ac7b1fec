// Copyright 2026 The Skillchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace skillchain {

/// Randomness is always injected by the caller: crypto operations take a
/// RandomSource so tests and the simulator stay deterministic, while the
/// CLI passes OS entropy.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// OS entropy (RAND_bytes). Suitable for real key material.
class OsRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic stream for tests and simulations. Built on std::mt19937_64,
/// whose outputs are pinned by the standard; the distribution helpers below
/// are implemented here (not via std::*_distribution) so that streams are
/// reproducible across standard-library implementations.
class SeededRng final : public RandomSource {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  void fill(std::span<std::uint8_t> out) override;

  std::uint64_t next_u64() { return engine_(); }

  /// Unbiased uniform draw from [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01();

  /// True with probability p_micro / 1e6. Exact integer comparison.
  bool bernoulli_micro(std::int64_t p_micro) {
    return static_cast<std::int64_t>(uniform_below(1'000'000)) < p_micro;
  }

  /// k distinct values from [0, n), partial Fisher-Yates order.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n,
                                                        std::uint32_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace skillchain
