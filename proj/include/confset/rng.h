// Copyright 2026 The Confset Authors.
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

#ifndef CONFSET_RNG_H_
#define CONFSET_RNG_H_

#include <cstdint>
#include <random>

namespace confset {

// SplitMix64 finalizer (Steele, Lea and Flood; Stafford's "Mix13" constants).
// A bijection on 64-bit words with full avalanche.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based seed for replication `index` of a run seeded with
// `master_seed`:
//
//   seed = Mix64(Mix64(master_seed) + (index + 1) * 0x9E3779B97F4A7C15)
//
// The result depends only on the pair, so replications can execute in any
// order or on any thread and still draw identical streams.
constexpr std::uint64_t DeriveReplicationSeed(std::uint64_t master_seed,
                                              std::uint64_t index) {
  return Mix64(Mix64(master_seed) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Random stream handed to samplers. Backed by std::mt19937_64, whose output
// sequence is fixed by the standard; the conversions to doubles below are
// written out explicitly because the <random> distributions are not
// portable across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double Uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Gaussian draw by inversion of the normal CDF.
  double Normal(double mean, double stddev);

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace confset

#endif  // CONFSET_RNG_H_
