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

#ifndef UCOALIGN_MISALIGN_H_
#define UCOALIGN_MISALIGN_H_

// Training-test misalignment on the quadratic toy.
//
// For m random continuous decision vectors, one score ranks them by the
// surrogate used in training and the other by the objective reached after
// test-time rounding. A pair is "bad" when the two rankings disagree
// strictly: (s_a - s_b) * (f_a - f_b) < 0. Ties are never bad.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ucoalign/decisions.h"
#include "ucoalign/derand.h"
#include "ucoalign/quadratic.h"
#include "ucoalign/seed.h"

namespace ucoalign {

struct PairedScores {
  std::vector<double> surrogate_values;
  std::vector<double> final_values;
};

struct PairCounts {
  std::size_t bad = 0;
  std::size_t concordant = 0;
  std::size_t ties = 0;

  std::size_t total() const { return bad + concordant + ties; }
};

// Throws std::invalid_argument on unequal lengths or non-finite scores.
PairCounts classify_pairs(const PairedScores& scores);
std::size_t bad_pair_count(const PairedScores& scores);

struct TrialReport {
  std::size_t trial = 0;
  Scheme scheme = Scheme::kIterative;
  std::optional<double> temperature;  // soft schemes only
  std::size_t bad_count = 0;
  std::size_t total_pairs = 0;
  double fraction = 0.0;
};

TrialReport make_report(std::size_t trial, Scheme scheme,
                        std::optional<double> temperature,
                        const PairedScores& scores);

// One toy trial's data: an instance with i.i.d. standard normal
// coefficients and m vectors with i.i.d. uniform [0,1) entries.
struct ToyData {
  QuadraticProblem problem;
  std::vector<ContinuousDecisions> samples;
};

// The instance comes from child_seed(seed, 0), the samples from
// child_seed(seed, 1).
ToyData sample_toy(std::size_t n, std::size_t m, const SeedStream& seed);

// f(round(x_k)) for each sample; `scheme` is kIterative (identity order) or
// kGreedy.
std::vector<double> final_values(const ToyData& data, Scheme scheme);
std::vector<double> surrogate_values(const ToyData& data);

// Hard-scheme trial: surrogate f~(x_k) against f(round(x_k)).
TrialReport toy_trial(std::size_t n, std::size_t m, Scheme scheme,
                      const SeedStream& seed, std::size_t trial_index = 0);

struct ToyMisalignConfig {
  std::size_t n = 50;
  std::size_t samples = 100;
  std::size_t trials = 5;
  std::vector<Scheme> schemes = {Scheme::kIterative, Scheme::kGreedy};
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
};

// Trial t uses child_seed({seed, 0}, t); all schemes of one trial share its
// data. Reports are ordered by scheme, then trial.
std::vector<TrialReport> run_toy_misalign(const ToyMisalignConfig& config);

struct SoftSweepConfig {
  std::size_t n = 50;
  std::size_t samples = 100;
  std::size_t trials = 5;
  std::vector<Scheme> schemes = {Scheme::kSoftIterative, Scheme::kSoftGreedy};
  std::vector<double> temperatures = {10.0, 1.0, 0.1, 0.01, 0.001};
  std::size_t steps = 0;  // soft-greedy budget; 0 means 2n
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
};

// Surrogate value f~(soft_round(x_k, tau)) against the final value
// f(hard_round(x_k)) of the original x_k, where hard_round is the hard
// counterpart of the soft scheme. Trials draw the same data as
// run_toy_misalign. Reports are ordered by scheme, temperature, trial.
std::vector<TrialReport> soft_sweep(const SoftSweepConfig& config);

// Mean bad count and fraction per (scheme, temperature), in order of first
// appearance.
struct ReportSummary {
  Scheme scheme = Scheme::kIterative;
  std::optional<double> temperature;
  std::size_t trials = 0;
  double mean_bad_count = 0.0;
  double mean_fraction = 0.0;
};
std::vector<ReportSummary> summarize(const std::vector<TrialReport>& reports);

// The hard scheme whose output a soft scheme approaches as tau -> 0.
Scheme hard_counterpart(Scheme soft);

}  // namespace ucoalign

#endif  // UCOALIGN_MISALIGN_H_
