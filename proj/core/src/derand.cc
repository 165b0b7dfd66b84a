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

#include "ucoalign/derand.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ucoalign {
namespace {

void check_gains(const Gains<double>& g, std::size_t j, const char* scheme) {
  if (!std::isfinite(g[0]) || !std::isfinite(g[1])) {
    throw std::runtime_error(std::string(scheme) +
                             ": non-finite surrogate gain at index " +
                             std::to_string(j));
  }
}

int better_bit(const Gains<double>& g, TieBreak tie) {
  if (tie == TieBreak::kPreferZero) return g[1] > g[0] ? 1 : 0;
  return g[0] > g[1] ? 0 : 1;
}

// Plain-number and recorded evaluation share the soft schemes below.
struct PlainOps {
  using Value = double;
  const Problem& problem;

  Gains<double> gains(std::span<const double> x, std::size_t j) const {
    return problem.gains(x, j);
  }
  std::vector<Gains<double>> all_gains(std::span<const double> x) const {
    return problem.all_gains(x);
  }
  std::vector<double> softmax(std::span<const double> s, double tau) const {
    return stable_softmax(s, tau);
  }
  double mix(double x, double w0, double w1) const {
    return x * (1.0 - w0 - w1) + w1;
  }
};

struct GraphOps {
  using Value = Var;
  const Problem& problem;
  Tape& tape;

  Gains<Var> gains(std::span<const Var> x, std::size_t j) const {
    return problem.gains(tape, x, j);
  }
  std::vector<Gains<Var>> all_gains(std::span<const Var> x) const {
    return problem.all_gains(tape, x);
  }
  std::vector<Var> softmax(std::span<const Var> s, double tau) const {
    return stable_softmax(s, tau);
  }
  Var mix(Var x, Var w0, Var w1) const {
    const double xv = x.value();
    const double a = w0.value();
    const double b = w1.value();
    return tape.node(xv * (1.0 - a - b) + b,
                     {{x, 1.0 - a - b}, {w0, -xv}, {w1, 1.0 - xv}});
  }
};

template <typename Ops>
std::vector<typename Ops::Value> soft_iterative_impl(
    const Ops& ops, std::span<const typename Ops::Value> input,
    const RoundingOrder& order, double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("soft-iterative: temperature must be > 0");
  }
  if (order.size() != input.size()) {
    throw std::invalid_argument("soft-iterative: order size mismatch");
  }
  std::vector<typename Ops::Value> x(input.begin(), input.end());
  for (std::size_t j : order.sequence()) {
    const auto g = ops.gains(x, j);
    x[j] = ops.softmax(g, temperature)[1];
  }
  return x;
}

template <typename Ops>
std::vector<typename Ops::Value> soft_greedy_impl(
    const Ops& ops, std::span<const typename Ops::Value> input,
    const SoftConfig& config) {
  validate(config);
  std::vector<typename Ops::Value> x(input.begin(), input.end());
  if (x.empty()) return x;
  std::vector<typename Ops::Value> scores(2 * x.size());
  for (std::size_t step = 0; step < config.steps; ++step) {
    const auto gains = ops.all_gains(x);
    for (std::size_t j = 0; j < x.size(); ++j) {
      scores[2 * j] = gains[j][0];
      scores[2 * j + 1] = gains[j][1];
    }
    const auto w = ops.softmax(scores, config.temperature);
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = ops.mix(x[j], w[2 * j], w[2 * j + 1]);
    }
  }
  return x;
}

// Phase 1 of greedy rounding. Returns the number of moves applied.
std::size_t greedy_descent(const Problem& problem, std::vector<double>& x,
                           TieBreak tie) {
  const int first = tie == TieBreak::kPreferZero ? 0 : 1;
  std::size_t moves = 0;
  for (;;) {
    const std::vector<Gains<double>> gains = problem.all_gains(x);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    int best_b = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      check_gains(gains[j], j, "greedy rounding");
      for (int t = 0; t < 2; ++t) {
        const int b = t == 0 ? first : 1 - first;
        if (gains[j][b] > best) {
          best = gains[j][b];
          best_j = j;
          best_b = b;
        }
      }
    }
    if (!(best > 0.0)) return moves;
    x[best_j] = best_b;
    ++moves;
  }
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kSample: return "sample";
    case Scheme::kIterative: return "iterative";
    case Scheme::kGreedy: return "greedy";
    case Scheme::kSoftIterative: return "soft-iterative";
    case Scheme::kSoftGreedy: return "soft-greedy";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::kSample, Scheme::kIterative, Scheme::kGreedy,
                   Scheme::kSoftIterative, Scheme::kSoftGreedy}) {
    if (scheme_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown derandomization scheme: " +
                              std::string(name));
}

RoundingOrder RoundingOrder::Identity(std::size_t n) {
  std::vector<std::size_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return RoundingOrder(std::move(s));
}

RoundingOrder RoundingOrder::FromSequence(std::vector<std::size_t> sequence) {
  std::vector<bool> seen(sequence.size(), false);
  for (std::size_t v : sequence) {
    if (v >= sequence.size() || seen[v]) {
      throw std::invalid_argument("rounding order is not a permutation");
    }
    seen[v] = true;
  }
  return RoundingOrder(std::move(sequence));
}

RoundingOrder default_order(std::size_t n,
                            const std::optional<SeedStream>& seed) {
  if (n == 0) throw std::invalid_argument("default_order: n must be >= 1");
  if (!seed) return RoundingOrder::Identity(n);
  Rng rng(*seed);
  return RoundingOrder::FromSequence(random_permutation(n, rng));
}

void validate(const SoftConfig& config) {
  if (!(config.temperature > 0.0)) {
    throw std::invalid_argument("soft derandomization: temperature must be > 0");
  }
  if (config.steps < 1) {
    throw std::invalid_argument("soft derandomization: steps must be >= 1");
  }
}

BinaryDecisions sample_round(const ContinuousDecisions& x,
                             const SeedStream& seed) {
  Rng rng(seed);
  BinaryDecisions out = BinaryDecisions::Zeros(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.set(i, rng.uniform() < x[i]);
  return out;
}

BinaryDecisions iterative_round(const Problem& problem,
                                const ContinuousDecisions& input,
                                const RoundingOrder& order,
                                RoundingOptions options) {
  if (input.size() != problem.dimension() || order.size() != input.size()) {
    throw std::invalid_argument("iterative rounding: dimension mismatch");
  }
  std::vector<double> x(input.values().begin(), input.values().end());
  for (std::size_t j : order.sequence()) {
    const Gains<double> g = problem.gains(x, j);
    check_gains(g, j, "iterative rounding");
    x[j] = better_bit(g, options.tie);
  }
  return to_binary(x);
}

BinaryDecisions greedy_round(const Problem& problem,
                             const ContinuousDecisions& input,
                             RoundingOptions options) {
  if (input.size() != problem.dimension()) {
    throw std::invalid_argument("greedy rounding: dimension mismatch");
  }
  std::vector<double> x(input.values().begin(), input.values().end());
  greedy_descent(problem, x, options.tie);

  bool finished = false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0.0 || x[j] == 1.0) continue;
    const Gains<double> g = problem.gains(x, j);
    check_gains(g, j, "greedy rounding");
    x[j] = better_bit(g, options.tie);
    finished = true;
  }
  if (finished) greedy_descent(problem, x, options.tie);
  return to_binary(x);
}

std::vector<double> soft_iterative(const Problem& problem,
                                   std::span<const double> x,
                                   const RoundingOrder& order,
                                   double temperature) {
  return soft_iterative_impl(PlainOps{problem}, x, order, temperature);
}

std::vector<Var> soft_iterative(const Problem& problem, Tape& tape,
                                std::span<const Var> x,
                                const RoundingOrder& order,
                                double temperature) {
  return soft_iterative_impl(GraphOps{problem, tape}, x, order, temperature);
}

std::vector<double> soft_greedy(const Problem& problem,
                                std::span<const double> x,
                                const SoftConfig& config) {
  return soft_greedy_impl(PlainOps{problem}, x, config);
}

std::vector<Var> soft_greedy(const Problem& problem, Tape& tape,
                             std::span<const Var> x, const SoftConfig& config) {
  return soft_greedy_impl(GraphOps{problem, tape}, x, config);
}

}  // namespace ucoalign
