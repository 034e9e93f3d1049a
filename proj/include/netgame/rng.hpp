// Copyright 2026 The Authors.
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

#ifndef NETGAME_RNG_HPP_
#define NETGAME_RNG_HPP_

#include <cstdint>
#include <vector>

namespace netgame {

// Counter-based generator: the value of draw t on stream s under seed k is a
// pure function of (k, s, t). Splitting a stream per task makes parallel
// results independent of scheduling and thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed ^ 0x2545f4914f6cdd1dULL) ^ stream)) {}

  // Child generator for an independent task (draw index, worker id, ...).
  Rng split(std::uint64_t task) const { return Rng(key_, mix(task ^ 0x9e3779b97f4a7c15ULL)); }

  std::uint64_t next_u64() { return mix(key_ ^ mix(counter_++ + 0x452821e638d01377ULL)); }

  // Uniform on [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1), safe to feed through a quantile function.
  double next_open_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // Multiply-shift; bias is < 2^-64 per draw, irrelevant at our draw counts.
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  // k distinct indices from {0, ..., n-1} via partial Fisher-Yates, sorted.
  std::vector<int> sample_without_replacement(int n, int k);

 private:
  // splitmix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace netgame

#endif  // NETGAME_RNG_HPP_
