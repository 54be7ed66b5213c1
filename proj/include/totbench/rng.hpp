// Copyright 2026 The tot-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace totbench {

/// Seeded generator with portable draws. std::uniform_int_distribution and
/// std::shuffle differ between standard libraries, so bounded draws and
/// shuffles are spelled out here to keep seeded output identical everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    auto next() -> std::uint64_t { return engine_(); }

    /// Uniform in [0, n). n must be positive.
    auto below(std::uint64_t n) -> std::uint64_t {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = 0;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform in [0, 1) with 53 random bits.
    auto unit() -> double { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    auto chance(double p) -> bool { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    template <typename T>
    auto pick(const std::vector<T>& v) -> const T& {
        return v[below(v.size())];
    }

    /// Independent child stream, so adding draws in one place does not shift
    /// another.
    static auto derive(std::uint64_t seed, std::uint64_t stream) -> std::uint64_t {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31U);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace totbench
