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

#include "ucoalign/train.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "ucoalign/parallel.h"

namespace ucoalign {

void validate(const TrainConfig& c) {
  if (c.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(c.learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be > 0");
  }
  if (!(c.beta1 >= 0.0 && c.beta1 < 1.0) ||
      !(c.beta2 >= 0.0 && c.beta2 < 1.0)) {
    throw std::invalid_argument("moment decays must lie in [0, 1)");
  }
  if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(c.temperature > 0.0)) {
    throw std::invalid_argument("temperature must be > 0");
  }
  if (c.soft_scheme && *c.soft_scheme != Scheme::kSoftIterative &&
      *c.soft_scheme != Scheme::kSoftGreedy) {
    throw std::invalid_argument("training needs a soft scheme or none");
  }
  if (!std::isfinite(c.init_logit)) {
    throw std::invalid_argument("initial logit must be finite");
  }
  if (c.init_scale < 0.0) throw std::invalid_argument("init scale must be >= 0");
}

std::size_t resolved_soft_steps(const TrainConfig& config, std::size_t n) {
  if (config.steps > 0) return config.steps;
  return std::max<std::size_t>(1, std::min<std::size_t>(n, 50));
}

Var training_loss(const Problem& problem, const TrainConfig& config,
                  Tape& tape, std::span<const Var> theta) {
  std::vector<Var> x;
  x.reserve(theta.size());
  for (const Var& t : theta) x.push_back(logistic(t));
  if (!config.soft_scheme) return problem.surrogate(tape, x);
  if (*config.soft_scheme == Scheme::kSoftIterative) {
    const RoundingOrder order = RoundingOrder::Identity(x.size());
    return problem.surrogate(
        tape, soft_iterative(problem, tape, x, order, config.temperature));
  }
  const SoftConfig soft{config.temperature,
                        resolved_soft_steps(config, x.size())};
  return problem.surrogate(tape, soft_greedy(problem, tape, x, soft));
}

TrainResult train_instance(const Problem& problem, const TrainConfig& config) {
  validate(config);
  const std::size_t n = problem.dimension();
  TrainResult result;
  result.soft_steps = resolved_soft_steps(config, n);

  std::vector<double> theta(n, config.init_logit);
  if (config.init_scale > 0.0) {
    Rng rng(child_seed(config.seed, 0));
    for (double& t : theta) t += config.init_scale * rng.normal();
  }
  std::vector<double> m(n, 0.0);
  std::vector<double> v(n, 0.0);
  const RoundingOrder order = RoundingOrder::Identity(n);
  auto abort = [&](std::size_t epoch, std::string reason) {
    result.aborted = true;
    result.abort_epoch = epoch;
    result.abort_reason = std::move(reason);
  };

  for (std::size_t epoch = 0; epoch <= config.epochs; ++epoch) {
    Tape tape;
    std::vector<Var> params;
    params.reserve(n);
    for (double t : theta) params.push_back(tape.variable(t));

    double loss = 0.0;
    GradientVector grad;
    try {
      const Var out = training_loss(problem, config, tape, params);
      loss = out.value();
      if (!std::isfinite(loss)) {
        abort(epoch, "non-finite training loss at epoch " +
                         std::to_string(epoch));
        break;
      }
      grad = tape.backward(out, params);
    } catch (const std::domain_error& e) {
      abort(epoch, std::string("training loss failed at epoch ") +
                       std::to_string(epoch) + ": " + e.what());
      break;
    }
    if (!std::all_of(grad.begin(), grad.end(),
                     [](double g) { return std::isfinite(g); })) {
      abort(epoch, "non-finite gradient at epoch " + std::to_string(epoch));
      break;
    }

    std::vector<double> probs(n);
    for (std::size_t i = 0; i < n; ++i) probs[i] = logistic(theta[i]);
    const ContinuousDecisions x = validate_continuous(std::move(probs));
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss;
    try {
      const BinaryDecisions it =
          iterative_round(problem, x, order, config.test_rounding);
      const BinaryDecisions gr = greedy_round(problem, x, config.test_rounding);
      rec.test_iterative = problem.hard_objective(it);
      rec.test_greedy = problem.hard_objective(gr);
      rec.feasible_iterative = problem.is_feasible(it);
      rec.feasible_greedy = problem.is_feasible(gr);
    } catch (const std::runtime_error& e) {
      abort(epoch, std::string("test rounding failed at epoch ") +
                       std::to_string(epoch) + ": " + e.what());
      break;
    }
    result.curve.push_back(rec);
    result.final_logits = theta;
    if (epoch == config.epochs) break;

    // Adam with bias correction; step t = epoch + 1.
    const double t = static_cast<double>(epoch + 1);
    const double c1 = 1.0 - std::pow(config.beta1, t);
    const double c2 = 1.0 - std::pow(config.beta2, t);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * grad[i];
      v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      theta[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
  }
  return result;
}

std::vector<SweepRun> sweep_temperatures(const Problem& problem,
                                         const TrainConfig& base,
                                         std::span<const Scheme> schemes,
                                         std::span<const double> temperatures,
                                         std::size_t jobs) {
  std::vector<SweepRun> runs(1);
  for (Scheme s : schemes) {
    for (double tau : temperatures) {
      SweepRun r;
      r.soft_scheme = s;
      r.temperature = tau;
      runs.push_back(std::move(r));
    }
  }
  parallel_for(runs.size(), jobs, [&](std::size_t i) {
    TrainConfig cfg = base;
    cfg.soft_scheme = runs[i].soft_scheme;
    if (runs[i].temperature) cfg.temperature = *runs[i].temperature;
    try {
      runs[i].result = train_instance(problem, cfg);
    } catch (const std::exception& e) {
      runs[i].error = e.what();
    }
  });
  return runs;
}

}  // namespace ucoalign
