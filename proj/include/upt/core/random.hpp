// Copyright 2026 The upt Authors
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

#ifndef UPT_CORE_RANDOM_HPP
#define UPT_CORE_RANDOM_HPP

#include <cstdint>
#include <random>

#include "upt/core/types.hpp"

namespace upt {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seedable, splittable generator. `split(i)` gives the deterministic child
/// stream used for trial `i` of a run, independent of how many numbers the
/// parent has already drawn.
class Rng {
   public:
    using result_type = std::mt19937_64::result_type;

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    Rng split(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL))); }

    std::uint64_t seed() const { return seed_; }

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    bool bernoulli(double p) { return uniform() < p; }

    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_normal() {
        double re = normal();
        double im = normal();
        return Complex(re, im) * M_SQRT1_2;
    }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace upt

#endif
