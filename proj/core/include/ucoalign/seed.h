// Copyright 2026 The ucoalign Authors
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

#ifndef UCOALIGN_SEED_H_
#define UCOALIGN_SEED_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace ucoalign {

// Identifies one independent random stream. Streams are derived from a root
// with child_seed(), so every trial, instance and sampling step owns its own
// stream and results do not depend on scheduling order.
struct SeedStream {
  std::uint64_t root_seed = 0;
  std::uint64_t stream_index = 0;

  friend bool operator==(const SeedStream&, const SeedStream&) = default;
};

// Deterministic and injective in `index` for a fixed parent.
SeedStream child_seed(const SeedStream& parent, std::uint64_t index);

// Random source for one stream: a 64-bit Mersenne Twister seeded through
// std::seed_seq from the four 32-bit halves of (root_seed, stream_index).
// Both are fully specified by the standard; the conversions to uniform and
// normal variates below are ours, so sequences are stable within a build.
class Rng {
 public:
  explicit Rng(const SeedStream& stream);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0,1) with 53 random bits.
  double uniform();
  // Standard normal via the Box-Muller transform; the second variate of each
  // pair is cached for the next call.
  double normal();
  // Uniform integer on [0, bound). Requires bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Uniformly random permutation of 0..n-1 (Fisher-Yates over Rng::below).
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

}  // namespace ucoalign

#endif  // UCOALIGN_SEED_H_
