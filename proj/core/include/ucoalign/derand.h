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

#ifndef UCOALIGN_DERAND_H_
#define UCOALIGN_DERAND_H_

// Derandomization: turning continuous decisions into binary ones.
//
// Hard schemes (sampling, iterative rounding, greedy rounding) run on plain
// doubles. The soft schemes replace the argmax of iterative and greedy
// rounding with a temperature softmax and run on doubles or on a Tape, where
// the result stays differentiable in the input.
//
// Ties prefer b = 0, then the smaller index.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ucoalign/autodiff.h"
#include "ucoalign/decisions.h"
#include "ucoalign/problem.h"
#include "ucoalign/seed.h"

namespace ucoalign {

enum class Scheme { kSample, kIterative, kGreedy, kSoftIterative, kSoftGreedy };

// "sample" | "iterative" | "greedy" | "soft-iterative" | "soft-greedy"
std::string_view scheme_name(Scheme scheme);
// Throws std::invalid_argument for unknown names.
Scheme parse_scheme(std::string_view name);

// A visiting order for iterative rounding: a permutation of 0..n-1.
class RoundingOrder {
 public:
  static RoundingOrder Identity(std::size_t n);
  // Throws std::invalid_argument unless `sequence` is a permutation.
  static RoundingOrder FromSequence(std::vector<std::size_t> sequence);

  std::size_t size() const { return sequence_.size(); }
  std::span<const std::size_t> sequence() const { return sequence_; }

 private:
  explicit RoundingOrder(std::vector<std::size_t> s) : sequence_(std::move(s)) {}
  std::vector<std::size_t> sequence_;
};

// Identity order without a seed, a uniformly random permutation otherwise.
// Requires n >= 1.
RoundingOrder default_order(std::size_t n,
                            const std::optional<SeedStream>& seed = {});

struct SoftConfig {
  double temperature = 1.0;
  // Soft-greedy update budget; ignored by soft-iterative.
  std::size_t steps = 1;
};

// Throws std::invalid_argument unless temperature > 0 and steps >= 1.
void validate(const SoftConfig& config);

// Which bit wins an exact tie between the two gains of a coordinate.
enum class TieBreak { kPreferZero, kPreferOne };

struct RoundingOptions {
  TieBreak tie = TieBreak::kPreferZero;
};

// Independent Bernoulli draw per entry.
BinaryDecisions sample_round(const ContinuousDecisions& x,
                             const SeedStream& seed);

// Visits entries in `order`, setting each to the bit with the larger gain
// f(x) - f(x with x_j := b). Throws std::runtime_error on a non-finite gain.
BinaryDecisions iterative_round(const Problem& problem,
                                const ContinuousDecisions& x,
                                const RoundingOrder& order,
                                RoundingOptions options = {});

// Phase 1 repeatedly applies the best of all 2n single-entry assignments
// while it strictly decreases the surrogate. Phase 2 rounds any entry left
// fractional, in ascending index order, to the better bit. If phase 2 ran,
// phase 1 is repeated from the now binary point, so the result is always a
// 1-flip local minimum of the surrogate. Throws std::runtime_error on a
// non-finite gain.
BinaryDecisions greedy_round(const Problem& problem,
                             const ContinuousDecisions& x,
                             RoundingOptions options = {});

// Iterative rounding with x_j := softmax((gain_0, gain_1) / tau)[1].
std::vector<double> soft_iterative(const Problem& problem,
                                   std::span<const double> x,
                                   const RoundingOrder& order,
                                   double temperature);
std::vector<Var> soft_iterative(const Problem& problem, Tape& tape,
                                std::span<const Var> x,
                                const RoundingOrder& order,
                                double temperature);

// `steps` rounds of: w = softmax over all 2n gains / tau, then for every j
// simultaneously x_j := x_j (1 - w_j0 - w_j1) + w_j1. Entries stay in [0,1].
std::vector<double> soft_greedy(const Problem& problem,
                                std::span<const double> x,
                                const SoftConfig& config);
std::vector<Var> soft_greedy(const Problem& problem, Tape& tape,
                             std::span<const Var> x, const SoftConfig& config);

}  // namespace ucoalign

#endif  // UCOALIGN_DERAND_H_
