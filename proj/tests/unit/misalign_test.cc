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


#include <cmath>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "ucoalign/misalign.h"
#include "ucoalign/seed.h"

namespace ucoalign {
namespace {

PairedScores scores(std::vector<double> s, std::vector<double> f) {
  return {std::move(s), std::move(f)};
}

TEST(BadPairTest, Examples) {
  EXPECT_EQ(bad_pair_count(scores({1, 2}, {10, 20})), 0u);
  EXPECT_EQ(bad_pair_count(scores({1, 2}, {20, 10})), 1u);
  EXPECT_EQ(bad_pair_count(scores({1, 1}, {0, 5})), 0u);
  EXPECT_EQ(bad_pair_count(scores({}, {})), 0u);
  EXPECT_EQ(bad_pair_count(scores({3, 1, 2}, {1, 2, 3})), 2u);
}

TEST(BadPairTest, Validation) {
  EXPECT_THROW(classify_pairs(scores({1, 2}, {1})), std::invalid_argument);
  EXPECT_THROW(classify_pairs(scores({1, NAN}, {1, 2})), std::invalid_argument);
  EXPECT_THROW(classify_pairs(scores({1, 2}, {INFINITY, 2})),
               std::invalid_argument);
}

std::vector<double> random_scores(Rng& rng, std::size_t m) {
  std::vector<double> v(m);
  // Coarse values so ties actually occur.
  for (double& x : v) x = std::floor(8.0 * rng.uniform());
  return v;
}

TEST(BadPairTest, PartitionAndSymmetry) {
  Rng rng({1, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t m = rng.below(40);
    const auto s = random_scores(rng, m);
    const auto f = random_scores(rng, m);
    const PairCounts c = classify_pairs(scores(s, f));
    EXPECT_EQ(c.bad + c.concordant + c.ties, m * (m - 1) / 2);
    EXPECT_EQ(bad_pair_count(scores(f, s)), c.bad);
  }
}

TEST(BadPairTest, InvariantUnderIncreasingTransforms) {
  Rng rng({2, 0});
  for (int rep = 0; rep < 20; ++rep) {
    const auto s = random_scores(rng, 30);
    const auto f = random_scores(rng, 30);
    std::vector<double> s2 = s, f2 = f;
    for (double& x : s2) x = std::exp(x) - 3.0;
    for (double& x : f2) x = x * x * x + 7.0 * x;
    EXPECT_EQ(bad_pair_count(scores(s2, f2)), bad_pair_count(scores(s, f)));
  }
}

TEST(ReportTest, FractionAndPairs) {
  const TrialReport r = make_report(3, Scheme::kGreedy, 0.5,
                                    scores({1, 2, 3}, {3, 2, 1}));
  EXPECT_EQ(r.trial, 3u);
  EXPECT_EQ(r.total_pairs, 3u);
  EXPECT_EQ(r.bad_count, 3u);
  EXPECT_DOUBLE_EQ(r.fraction, 1.0);
  EXPECT_EQ(r.temperature, 0.5);
}

TEST(ToyTest, SamplesAreUniformDecisions) {
  const ToyData data = sample_toy(20, 30, {5, 0});
  ASSERT_EQ(data.samples.size(), 30u);
  double sum = 0.0;
  for (const auto& x : data.samples) {
    ASSERT_EQ(x.size(), 20u);
    for (double v : x.values()) sum += v;
  }
  EXPECT_NEAR(sum / 600.0, 0.5, 0.05);
}

TEST(ToyTest, HundredSamplesGiveAllPairs) {
  const TrialReport r = toy_trial(10, 100, Scheme::kIterative, {1, 0});
  EXPECT_EQ(r.total_pairs, 4950u);
  EXPECT_LE(r.bad_count, r.total_pairs);
}

TEST(ToyTest, IdenticalSamplesHaveNoBadPairs) {
  ToyData data = sample_toy(6, 1, {2, 0});
  data.samples.push_back(data.samples.front());
  for (Scheme s : {Scheme::kIterative, Scheme::kGreedy}) {
    const TrialReport r = make_report(
        0, s, std::nullopt, {surrogate_values(data), final_values(data, s)});
    EXPECT_EQ(r.total_pairs, 1u);
    EXPECT_EQ(r.bad_count, 0u);
  }
}

TEST(ToyTest, FinalValuesRejectSoftSchemes) {
  const ToyData data = sample_toy(4, 3, {2, 0});
  EXPECT_THROW(final_values(data, Scheme::kSoftGreedy), std::invalid_argument);
}

TEST(ToyTest, RunIsReproducibleAndIndependentOfJobs) {
  ToyMisalignConfig config;
  config.n = 12;
  config.samples = 30;
  config.trials = 3;
  config.seed = 9;
  config.jobs = 1;
  const auto a = run_toy_misalign(config);
  config.jobs = 3;
  const auto b = run_toy_misalign(config);
  ASSERT_EQ(a.size(), 6u);
  ASSERT_EQ(b.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].bad_count, b[i].bad_count);
    EXPECT_EQ(a[i].scheme, b[i].scheme);
    EXPECT_EQ(a[i].trial, b[i].trial);
  }
  EXPECT_EQ(a[0].scheme, Scheme::kIterative);
  EXPECT_EQ(a[3].scheme, Scheme::kGreedy);
  EXPECT_EQ(a[4].trial, 1u);
}

TEST(ToyTest, RunMatchesSingleTrials) {
  ToyMisalignConfig config;
  config.n = 10;
  config.samples = 20;
  config.trials = 2;
  config.seed = 4;
  const auto reports = run_toy_misalign(config);
  for (std::size_t t = 0; t < 2; ++t) {
    const TrialReport r = toy_trial(10, 20, Scheme::kGreedy,
                                    child_seed({4, 0}, t), t);
    EXPECT_EQ(reports[2 + t].bad_count, r.bad_count);
  }
}

TEST(ToyTest, RejectsSoftSchemes) {
  ToyMisalignConfig config;
  config.schemes = {Scheme::kSoftIterative};
  EXPECT_THROW(run_toy_misalign(config), std::invalid_argument);
}

TEST(SoftSweepTest, LayoutIsSchemeThenTemperatureThenTrial) {
  SoftSweepConfig config;
  config.n = 8;
  config.samples = 10;
  config.trials = 2;
  config.temperatures = {1.0, 0.1};
  const auto reports = soft_sweep(config);
  ASSERT_EQ(reports.size(), 8u);
  EXPECT_EQ(reports[0].scheme, Scheme::kSoftIterative);
  EXPECT_EQ(reports[2].temperature, 0.1);
  EXPECT_EQ(reports[3].trial, 1u);
  EXPECT_EQ(reports[4].scheme, Scheme::kSoftGreedy);
  EXPECT_EQ(reports[4].temperature, 1.0);
}

TEST(SoftSweepTest, NearHardSoftIterativeAligns) {
  SoftSweepConfig config;
  config.trials = 2;
  config.schemes = {Scheme::kSoftIterative};
  config.temperatures = {1e-6};
  for (const TrialReport& r : soft_sweep(config)) {
    EXPECT_LT(r.fraction, 0.02) << "trial " << r.trial;
  }
}

TEST(SoftSweepTest, NearHardSoftGreedyAlignsWithoutDiagonal) {
  // Soft greedy has no counterpart of the finishing pass that rounds entries
  // left fractional at an interior minimum, which only diagonal terms create.
  // Without them it tracks hard greedy move for move.
  const ToyData raw = sample_toy(50, 100, {3, 0});
  std::vector<double> alpha(raw.problem.coefficients().begin(),
                            raw.problem.coefficients().end());
  for (std::size_t i = 0; i < 50; ++i) alpha[i * 50 + i] = 0.0;
  const ToyData data{QuadraticProblem(50, alpha), raw.samples};
  std::vector<double> soft;
  for (const auto& x : data.samples) {
    soft.push_back(
        data.problem.surrogate(soft_greedy(data.problem, x.values(), {1e-6, 100})));
  }
  const TrialReport r = make_report(0, Scheme::kSoftGreedy, 1e-6,
                                    {soft, final_values(data, Scheme::kGreedy)});
  EXPECT_LT(r.fraction, 0.02);
}

TEST(SoftSweepTest, RejectsBadArguments) {
  SoftSweepConfig config;
  config.temperatures = {1.0, 0.0};
  EXPECT_THROW(soft_sweep(config), std::invalid_argument);
  config.temperatures = {1.0};
  config.schemes = {Scheme::kGreedy};
  EXPECT_THROW(soft_sweep(config), std::invalid_argument);
}

TEST(SummaryTest, MeansPerGroup) {
  std::vector<TrialReport> reports = {
      make_report(0, Scheme::kIterative, std::nullopt, scores({1, 2}, {2, 1})),
      make_report(1, Scheme::kIterative, std::nullopt, scores({1, 2}, {1, 2})),
      make_report(0, Scheme::kGreedy, std::nullopt, scores({1, 2}, {2, 1})),
  };
  const auto summary = summarize(reports);
  ASSERT_EQ(summary.size(), 2u);
  EXPECT_EQ(summary[0].trials, 2u);
  EXPECT_DOUBLE_EQ(summary[0].mean_fraction, 0.5);
  EXPECT_DOUBLE_EQ(summary[1].mean_bad_count, 1.0);
}

TEST(SummaryTest, HardCounterparts) {
  EXPECT_EQ(hard_counterpart(Scheme::kSoftIterative), Scheme::kIterative);
  EXPECT_EQ(hard_counterpart(Scheme::kSoftGreedy), Scheme::kGreedy);
  EXPECT_THROW(hard_counterpart(Scheme::kSample), std::invalid_argument);
}

}  // namespace
}  // namespace ucoalign
