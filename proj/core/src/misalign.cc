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

#include "ucoalign/misalign.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <string>

#include "ucoalign/parallel.h"

namespace ucoalign {

PairCounts classify_pairs(const PairedScores& scores) {
  const auto& s = scores.surrogate_values;
  const auto& f = scores.final_values;
  if (s.size() != f.size()) {
    throw std::invalid_argument("paired scores have different lengths");
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!std::isfinite(s[k]) || !std::isfinite(f[k])) {
      throw std::invalid_argument("non-finite score at sample " +
                                  std::to_string(k));
    }
  }
  PairCounts counts;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const double product = (s[a] - s[b]) * (f[a] - f[b]);
      if (product < 0.0) {
        ++counts.bad;
      } else if (product > 0.0) {
        ++counts.concordant;
      } else {
        ++counts.ties;
      }
    }
  }
  return counts;
}

std::size_t bad_pair_count(const PairedScores& scores) {
  return classify_pairs(scores).bad;
}

TrialReport make_report(std::size_t trial, Scheme scheme,
                        std::optional<double> temperature,
                        const PairedScores& scores) {
  const PairCounts counts = classify_pairs(scores);
  TrialReport r;
  r.trial = trial;
  r.scheme = scheme;
  r.temperature = temperature;
  r.bad_count = counts.bad;
  r.total_pairs = counts.total();
  r.fraction = r.total_pairs == 0 ? 0.0
                                  : static_cast<double>(r.bad_count) /
                                        static_cast<double>(r.total_pairs);
  return r;
}

ToyData sample_toy(std::size_t n, std::size_t m, const SeedStream& seed) {
  ToyData data{sample_quadratic(n, child_seed(seed, 0)), {}};
  Rng rng(child_seed(seed, 1));
  data.samples.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform();
    data.samples.push_back(validate_continuous(std::move(x)));
  }
  return data;
}

std::vector<double> surrogate_values(const ToyData& data) {
  std::vector<double> out;
  out.reserve(data.samples.size());
  for (const auto& x : data.samples) out.push_back(data.problem.surrogate(x));
  return out;
}

std::vector<double> final_values(const ToyData& data, Scheme scheme) {
  const RoundingOrder order = RoundingOrder::Identity(data.problem.dimension());
  std::vector<double> out;
  out.reserve(data.samples.size());
  for (const auto& x : data.samples) {
    BinaryDecisions d;
    switch (scheme) {
      case Scheme::kIterative:
        d = iterative_round(data.problem, x, order);
        break;
      case Scheme::kGreedy:
        d = greedy_round(data.problem, x);
        break;
      default:
        throw std::invalid_argument("final values need a hard rounding scheme");
    }
    out.push_back(data.problem.hard_objective(d));
  }
  return out;
}

TrialReport toy_trial(std::size_t n, std::size_t m, Scheme scheme,
                      const SeedStream& seed, std::size_t trial_index) {
  const ToyData data = sample_toy(n, m, seed);
  return make_report(trial_index, scheme, std::nullopt,
                     {surrogate_values(data), final_values(data, scheme)});
}

namespace {

SeedStream trial_seed(std::uint64_t root, std::size_t trial) {
  return child_seed(SeedStream{root, 0}, trial);
}

}  // namespace

std::vector<TrialReport> run_toy_misalign(const ToyMisalignConfig& config) {
  for (Scheme s : config.schemes) {
    if (s != Scheme::kIterative && s != Scheme::kGreedy) {
      throw std::invalid_argument("toy misalignment needs iterative or greedy");
    }
  }
  const std::size_t schemes = config.schemes.size();
  std::vector<TrialReport> reports(schemes * config.trials);
  parallel_for(config.trials, config.jobs, [&](std::size_t t) {
    const ToyData data =
        sample_toy(config.n, config.samples, trial_seed(config.seed, t));
    const std::vector<double> surrogate = surrogate_values(data);
    for (std::size_t s = 0; s < schemes; ++s) {
      reports[s * config.trials + t] =
          make_report(t, config.schemes[s], std::nullopt,
                      {surrogate, final_values(data, config.schemes[s])});
    }
  });
  return reports;
}

Scheme hard_counterpart(Scheme soft) {
  switch (soft) {
    case Scheme::kSoftIterative: return Scheme::kIterative;
    case Scheme::kSoftGreedy: return Scheme::kGreedy;
    default:
      throw std::invalid_argument("not a soft scheme: " +
                                  std::string(scheme_name(soft)));
  }
}

std::vector<TrialReport> soft_sweep(const SoftSweepConfig& config) {
  for (double tau : config.temperatures) {
    if (!(tau > 0.0)) throw std::invalid_argument("temperatures must be > 0");
  }
  for (Scheme s : config.schemes) hard_counterpart(s);
  const std::size_t schemes = config.schemes.size();
  const std::size_t temps = config.temperatures.size();
  const std::size_t trials = config.trials;
  std::vector<TrialReport> reports(schemes * temps * trials);

  parallel_for(trials, config.jobs, [&](std::size_t t) {
    const ToyData data =
        sample_toy(config.n, config.samples, trial_seed(config.seed, t));
    const QuadraticProblem& problem = data.problem;
    const RoundingOrder order = RoundingOrder::Identity(problem.dimension());
    for (std::size_t s = 0; s < schemes; ++s) {
      const Scheme scheme = config.schemes[s];
      const std::vector<double> finals =
          final_values(data, hard_counterpart(scheme));
      for (std::size_t ti = 0; ti < temps; ++ti) {
        const SoftConfig soft{config.temperatures[ti],
                              config.steps == 0 ? 2 * config.n : config.steps};
        std::vector<double> surrogate;
        surrogate.reserve(data.samples.size());
        for (const auto& x : data.samples) {
          const std::vector<double> y =
              scheme == Scheme::kSoftIterative
                  ? soft_iterative(problem, x.values(), order, soft.temperature)
                  : soft_greedy(problem, x.values(), soft);
          surrogate.push_back(problem.surrogate(y));
        }
        reports[(s * temps + ti) * trials + t] =
            make_report(t, scheme, soft.temperature, {surrogate, finals});
      }
    }
  });
  return reports;
}

std::vector<ReportSummary> summarize(const std::vector<TrialReport>& reports) {
  std::vector<ReportSummary> out;
  for (const TrialReport& r : reports) {
    auto it = std::find_if(out.begin(), out.end(), [&](const ReportSummary& s) {
      return s.scheme == r.scheme && s.temperature == r.temperature;
    });
    if (it == out.end()) {
      out.push_back(ReportSummary{r.scheme, r.temperature, 0, 0.0, 0.0});
      it = std::prev(out.end());
    }
    ++it->trials;
    it->mean_bad_count += static_cast<double>(r.bad_count);
    it->mean_fraction += r.fraction;
  }
  for (ReportSummary& s : out) {
    s.mean_bad_count /= static_cast<double>(s.trials);
    s.mean_fraction /= static_cast<double>(s.trials);
  }
  return out;
}

}  // namespace ucoalign
