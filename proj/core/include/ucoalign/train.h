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

#ifndef UCOALIGN_TRAIN_H_
#define UCOALIGN_TRAIN_H_

// Training continuous decisions on a single instance.
//
// Parameters are unconstrained logits theta with x = logistic(theta). Each
// epoch evaluates the loss f~(x), or f~(soft_round(x)) when a soft scheme is
// set, takes its reverse-mode gradient in theta and applies one Adam step.
// Test objectives f(iterative_round(x)) and f(greedy_round(x)) are computed
// off the graph and never influence the parameters.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucoalign/derand.h"
#include "ucoalign/problem.h"
#include "ucoalign/seed.h"

namespace ucoalign {

struct TrainConfig {
  std::size_t epochs = 300;
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Unset trains on the plain surrogate (the baseline). Otherwise
  // kSoftIterative or kSoftGreedy.
  std::optional<Scheme> soft_scheme;
  double temperature = 1.0;
  // Soft-greedy budget; 0 means min(n, 50).
  std::size_t steps = 0;
  // theta starts at init_logit (0 gives x = 0.5) plus init_scale * N(0, 1)
  // noise when init_scale > 0.
  double init_logit = 0.0;
  double init_scale = 0.0;
  SeedStream seed;
  // Tie rule of the off-graph test rounding.
  RoundingOptions test_rounding;
};

// Throws std::invalid_argument on epochs < 1, learning_rate <= 0, decays
// outside [0, 1), epsilon <= 0, temperature <= 0 or a hard soft_scheme.
void validate(const TrainConfig& config);

std::size_t resolved_soft_steps(const TrainConfig& config, std::size_t n);

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double test_iterative = 0.0;
  double test_greedy = 0.0;
  bool feasible_iterative = false;
  bool feasible_greedy = false;
};

struct TrainResult {
  // Epoch 0 is the evaluation before any update; a full run has epochs + 1
  // records.
  std::vector<EpochRecord> curve;
  // Set when the loss or its gradient became non-finite; `curve` then holds
  // the records up to the last finite epoch.
  bool aborted = false;
  std::size_t abort_epoch = 0;
  std::string abort_reason;
  std::vector<double> final_logits;  // last finite parameters
  std::size_t soft_steps = 0;
};

TrainResult train_instance(const Problem& problem, const TrainConfig& config);

// The training loss at logits theta, recorded on `tape`.
Var training_loss(const Problem& problem, const TrainConfig& config,
                  Tape& tape, std::span<const Var> theta);

struct SweepRun {
  std::optional<Scheme> soft_scheme;  // unset for the baseline
  std::optional<double> temperature;
  TrainResult result;
  // Non-empty if the run threw; the sweep continues.
  std::string error;
};

// The baseline first, then every (scheme, temperature) in order. All runs
// share `base` apart from the scheme and temperature.
std::vector<SweepRun> sweep_temperatures(const Problem& problem,
                                         const TrainConfig& base,
                                         std::span<const Scheme> schemes,
                                         std::span<const double> temperatures,
                                         std::size_t jobs = 0);

}  // namespace ucoalign

#endif  // UCOALIGN_TRAIN_H_
