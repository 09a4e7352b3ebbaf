// Copyright 2026 The qfdiv Authors.
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

#ifndef QFDIV_RANDOM_HPP
#define QFDIV_RANDOM_HPP

#include <cstdint>
#include <limits>

#include "qfdiv/types.hpp"

namespace qfdiv {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based 64-bit generator: the i-th output is
/// splitmix64_mix(key + (i + 1) * 0x9E3779B97F4A7C15).  Identical to the
/// SplitMix64 stream seeded with `key`, so outputs are fully specified by
/// (key, i) on every platform.  Normal deviates use Box-Muller rather than
/// std::normal_distribution, whose algorithm is implementation-defined.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  /// Independent stream for trial `index` of a run seeded with `master`.
  static constexpr CounterRng for_trial(std::uint64_t master, std::uint64_t index) noexcept {
    return CounterRng(derive_seed(master, index));
  }
  static constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64_mix(master ^ splitmix64_mix(index + 0x632BE59BD9B4E019ULL));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) noexcept;
  double normal() noexcept;
  Complex complex_normal() noexcept;

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Entries i.i.d. complex standard normal (real and imaginary parts N(0,1)).
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, CounterRng& rng);

/// Haar-distributed unitary via QR of a Ginibre matrix with phase correction.
ComplexMatrix haar_unitary(Eigen::Index dim, CounterRng& rng);

/// Haar-distributed isometry (first `cols` columns of a Haar unitary).
ComplexMatrix haar_isometry(Eigen::Index rows, Eigen::Index cols, CounterRng& rng);

}  // namespace qfdiv

#endif  // QFDIV_RANDOM_HPP
