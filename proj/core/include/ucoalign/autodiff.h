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

#ifndef UCOALIGN_AUTODIFF_H_
#define UCOALIGN_AUTODIFF_H_

// Reverse-mode differentiation over a recorded scalar graph.
//
// A Tape records every operation as a node holding its value and the local
// partial derivatives to its parents. Parents always precede children, so a
// single reverse sweep over the recording yields the gradient of one output
// with respect to any set of nodes. Multi-output custom operations carry
// their own backward rule and let problems plug in analytic derivatives.
//
// A recording is built fresh for each loss evaluation and is not thread
// safe; distinct tapes may be used concurrently.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace ucoalign {

class Tape;

// A value recorded on a Tape.
class Var {
 public:
  Var() = default;

  double value() const;
  std::uint32_t index() const { return index_; }
  Tape* tape() const { return tape_; }

 private:
  friend class Tape;
  Var(Tape* tape, std::uint32_t index) : tape_(tape), index_(index) {}

  Tape* tape_ = nullptr;
  std::uint32_t index_ = 0;
};

// Partial derivatives aligned with a designated list of inputs.
using GradientVector = std::vector<double>;

class Tape {
 public:
  struct Edge {
    Var parent;
    double partial;
  };

  // Receives the adjoints of a custom operation's outputs and must add the
  // resulting contributions into `adjoints`, which is indexed by node.
  using CustomBackward = std::function<void(
      std::span<const double> output_adjoints, std::span<double> adjoints)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // A leaf. Leaves act as inputs or as constants; the distinction is only in
  // which nodes are passed to backward().
  Var variable(double value);

  // A node with explicit local partials.
  Var node(double value, std::initializer_list<Edge> edges);
  Var node(double value, std::span<const Edge> edges);

  // offset + sum_i weights[i] * terms[i], as one node.
  Var weighted_sum(std::span<const Var> terms, std::span<const double> weights,
                   double offset = 0.0);

  // Records `values.size()` output nodes whose gradient contributions are
  // produced by `backward` during the reverse sweep. Every input read by the
  // operation must already be on this tape.
  std::vector<Var> custom(std::span<const double> values,
                          CustomBackward backward);

  double value(Var v) const { return values_[v.index_]; }
  std::size_t size() const { return values_.size(); }

  // d output / d inputs[i] for every i, by one reverse sweep over the nodes
  // recorded up to `output`. Inputs not reachable from `output` get 0.
  GradientVector backward(Var output, std::span<const Var> inputs) const;

 private:
  struct CustomOp {
    std::uint32_t first;
    std::uint32_t count;
    CustomBackward backward;
  };

  std::uint32_t push(double value);

  std::vector<double> values_;
  std::vector<std::uint32_t> edge_end_;  // edges of node i: [end[i-1], end[i])
  std::vector<std::uint32_t> parents_;
  std::vector<double> partials_;
  std::vector<CustomOp> ops_;  // ordered by `first`
};

// Arithmetic primitives. Domain violations throw std::domain_error naming
// the operation.
Var operator+(Var a, Var b);
Var operator+(Var a, double b);
Var operator+(double a, Var b);
Var operator-(Var a, Var b);
Var operator-(Var a, double b);
Var operator-(double a, Var b);
Var operator-(Var a);
Var operator*(Var a, Var b);
Var operator*(Var a, double b);
Var operator*(double a, Var b);
Var operator/(Var a, Var b);
Var operator/(Var a, double b);
Var operator/(double a, Var b);
Var exp(Var a);
Var log(Var a);
Var logistic(Var a);
Var pow(Var a, double exponent);

// Numerically stable 1 / (1 + exp(-x)).
double logistic(double x);

// w_i = exp(s_i/tau - m) / sum_j exp(s_j/tau - m) with m = max_j s_j/tau.
// Requires tau > 0 and a nonempty score vector (std::invalid_argument).
std::vector<double> stable_softmax(std::span<const double> scores, double tau);
std::vector<Var> stable_softmax(std::span<const Var> scores, double tau);

// A scalar function recorded on a fresh tape from the given input leaves.
using GraphFunction = std::function<Var(Tape&, std::span<const Var>)>;

// Evaluates f at x without keeping the recording.
double evaluate(const GraphFunction& f, std::span<const double> x);

// Reverse-mode gradient of f at x.
GradientVector gradient(const GraphFunction& f, std::span<const double> x);

// Max over coordinates of |a - b| / max(1, |a|, |b|), with a the reverse-mode
// partial and b the central difference (f(x + h e_i) - f(x - h e_i)) / 2h.
double max_gradient_error(const GraphFunction& f, std::span<const double> x,
                          double h);

// max_gradient_error restricted to points of [0,1]^n whose every coordinate
// keeps a margin larger than h from both bounds (std::invalid_argument
// otherwise).
double grad_check(const GraphFunction& f, std::span<const double> x, double h);

}  // namespace ucoalign

#endif  // UCOALIGN_AUTODIFF_H_
