/* Copyright 2026 The resqnn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef RESQNN_RNG_HPP_
#define RESQNN_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace resqnn {

// Fixed stream tags fed to Rng::derive. Every randomized stage of an
// experiment hangs off one master seed through these, so regenerating any
// single artifact (the target unitary, the pair set, a corruption pattern,
// the perceptron init, a held-out evaluation set) never disturbs the others.
namespace seed_tags {
inline constexpr std::uint64_t kTarget = 1;  // hidden target unitary
inline constexpr std::uint64_t kPairs = 2;   // training input states
inline constexpr std::uint64_t kNoise = 3;   // corruption choices, re-derived per noise level
inline constexpr std::uint64_t kInit = 4;    // perceptron initialization
inline constexpr std::uint64_t kEval = 5;    // held-out evaluation pairs
}  // namespace seed_tags

// Deterministic random source for every randomized operation in the library.
//
// Algorithm "resqnn-rng-v1": mt19937_64 (bit-exact per the C++ standard)
// mapped to uniforms via the 53-bit mantissa trick and to Gaussians via
// Box-Muller. std::normal_distribution / std::uniform_* adaptors are
// deliberately avoided: their algorithms are implementation-defined, and the
// contract here is identical seed => identical stream on every platform.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "resqnn-rng-v1";

  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the paired sample is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = gen_();
    } while (draw >= limit);
    return draw % bound;
  }

  // splitmix64 mix of a seed with a stream tag; used to give independent
  // sub-streams (dataset, perceptron init, corruption, ...) to one master
  // seed without correlating them.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace resqnn

#endif  // RESQNN_RNG_HPP_
