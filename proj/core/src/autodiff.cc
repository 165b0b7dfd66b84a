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

#include "ucoalign/autodiff.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ucoalign {
namespace {

Tape& tape_of(Var a) {
  if (a.tape() == nullptr) throw std::logic_error("Var is not on a tape");
  return *a.tape();
}

Tape& tape_of(Var a, Var b) {
  Tape& t = tape_of(a);
  if (b.tape() != &t) throw std::logic_error("Vars belong to different tapes");
  return t;
}

}  // namespace

double Var::value() const { return tape_->value(*this); }

std::uint32_t Tape::push(double value) {
  if (values_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("tape exceeds 2^32 nodes");
  }
  values_.push_back(value);
  edge_end_.push_back(static_cast<std::uint32_t>(parents_.size()));
  return static_cast<std::uint32_t>(values_.size() - 1);
}

Var Tape::variable(double value) { return Var(this, push(value)); }

Var Tape::node(double value, std::initializer_list<Edge> edges) {
  return node(value, std::span<const Edge>(edges.begin(), edges.size()));
}

Var Tape::node(double value, std::span<const Edge> edges) {
  for (const Edge& e : edges) {
    if (e.parent.tape_ != this) {
      throw std::logic_error("edge parent belongs to a different tape");
    }
    parents_.push_back(e.parent.index_);
    partials_.push_back(e.partial);
  }
  return Var(this, push(value));
}

Var Tape::weighted_sum(std::span<const Var> terms,
                       std::span<const double> weights, double offset) {
  if (terms.size() != weights.size()) {
    throw std::invalid_argument("weighted_sum: size mismatch");
  }
  double value = offset;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].tape_ != this) {
      throw std::logic_error("weighted_sum term belongs to a different tape");
    }
    value += weights[i] * values_[terms[i].index_];
    parents_.push_back(terms[i].index_);
    partials_.push_back(weights[i]);
  }
  return Var(this, push(value));
}

std::vector<Var> Tape::custom(std::span<const double> values,
                              CustomBackward backward) {
  std::vector<Var> out;
  out.reserve(values.size());
  if (values.empty()) return out;
  const auto first = static_cast<std::uint32_t>(values_.size());
  for (double v : values) out.push_back(Var(this, push(v)));
  ops_.push_back(CustomOp{first, static_cast<std::uint32_t>(values.size()),
                          std::move(backward)});
  return out;
}

GradientVector Tape::backward(Var output, std::span<const Var> inputs) const {
  if (output.tape_ != this) throw std::logic_error("output is not on this tape");
  std::vector<double> adjoint(output.index_ + 1, 0.0);
  adjoint[output.index_] = 1.0;

  // Custom ops whose outputs lie beyond `output` cannot contribute.
  auto op = std::upper_bound(
      ops_.begin(), ops_.end(), output.index_,
      [](std::uint32_t idx, const CustomOp& o) { return idx < o.first; });

  for (std::uint32_t i = output.index_ + 1; i-- > 0;) {
    if (op != ops_.begin() && std::prev(op)->first == i) {
      --op;
      // Every consumer of the op's outputs comes later, so their adjoints are
      // final here. Outputs past `output` have zero adjoint.
      const std::size_t last =
          std::min<std::size_t>(op->first + op->count, adjoint.size());
      std::vector<double> out_adj(op->count, 0.0);
      std::copy(adjoint.begin() + op->first, adjoint.begin() + last,
                out_adj.begin());
      if (std::any_of(out_adj.begin(), out_adj.end(),
                      [](double a) { return a != 0.0; })) {
        op->backward(out_adj, adjoint);
      }
      continue;
    }
    const double a = adjoint[i];
    if (a == 0.0) continue;
    const std::uint32_t begin = i == 0 ? 0 : edge_end_[i - 1];
    for (std::uint32_t e = begin; e < edge_end_[i]; ++e) {
      adjoint[parents_[e]] += a * partials_[e];
    }
  }

  GradientVector grad(inputs.size(), 0.0);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (inputs[k].tape_ != this) {
      throw std::logic_error("input is not on this tape");
    }
    if (inputs[k].index_ < adjoint.size()) grad[k] = adjoint[inputs[k].index_];
  }
  return grad;
}

Var operator+(Var a, Var b) {
  return tape_of(a, b).node(a.value() + b.value(), {{a, 1.0}, {b, 1.0}});
}
Var operator+(Var a, double b) {
  return tape_of(a).node(a.value() + b, {{a, 1.0}});
}
Var operator+(double a, Var b) { return b + a; }

Var operator-(Var a, Var b) {
  return tape_of(a, b).node(a.value() - b.value(), {{a, 1.0}, {b, -1.0}});
}
Var operator-(Var a, double b) {
  return tape_of(a).node(a.value() - b, {{a, 1.0}});
}
Var operator-(double a, Var b) {
  return tape_of(b).node(a - b.value(), {{b, -1.0}});
}
Var operator-(Var a) { return tape_of(a).node(-a.value(), {{a, -1.0}}); }

Var operator*(Var a, Var b) {
  return tape_of(a, b).node(a.value() * b.value(),
                            {{a, b.value()}, {b, a.value()}});
}
Var operator*(Var a, double b) {
  return tape_of(a).node(a.value() * b, {{a, b}});
}
Var operator*(double a, Var b) { return b * a; }

Var operator/(Var a, Var b) {
  const double bv = b.value();
  if (bv == 0.0) throw std::domain_error("divide: zero denominator");
  const double q = a.value() / bv;
  return tape_of(a, b).node(q, {{a, 1.0 / bv}, {b, -q / bv}});
}
Var operator/(Var a, double b) {
  if (b == 0.0) throw std::domain_error("divide: zero denominator");
  return tape_of(a).node(a.value() / b, {{a, 1.0 / b}});
}
Var operator/(double a, Var b) {
  const double bv = b.value();
  if (bv == 0.0) throw std::domain_error("divide: zero denominator");
  const double q = a / bv;
  return tape_of(b).node(q, {{b, -q / bv}});
}

Var exp(Var a) {
  const double e = std::exp(a.value());
  return tape_of(a).node(e, {{a, e}});
}

Var log(Var a) {
  const double v = a.value();
  if (!(v > 0.0)) throw std::domain_error("log: non-positive argument");
  return tape_of(a).node(std::log(v), {{a, 1.0 / v}});
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Var logistic(Var a) {
  const double s = logistic(a.value());
  return tape_of(a).node(s, {{a, s * (1.0 - s)}});
}

Var pow(Var a, double exponent) {
  const double v = a.value();
  if (v < 0.0 && exponent != std::floor(exponent)) {
    throw std::domain_error("pow: negative base with non-integer exponent");
  }
  if (v == 0.0 && exponent < 1.0 && exponent != 0.0) {
    throw std::domain_error("pow: derivative undefined at zero base");
  }
  const double partial =
      exponent == 0.0 ? 0.0 : exponent * std::pow(v, exponent - 1.0);
  return tape_of(a).node(std::pow(v, exponent), {{a, partial}});
}

std::vector<double> stable_softmax(std::span<const double> scores,
                                   double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("softmax: tau must be > 0");
  if (scores.empty()) throw std::invalid_argument("softmax: empty scores");
  double m = -std::numeric_limits<double>::infinity();
  for (double s : scores) m = std::max(m, s / tau);
  std::vector<double> w(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = std::exp(scores[i] / tau - m);
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<Var> stable_softmax(std::span<const Var> scores, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("softmax: tau must be > 0");
  if (scores.empty()) throw std::invalid_argument("softmax: empty scores");
  Tape& tape = tape_of(scores.front());
  std::vector<double> s(scores.size());
  std::vector<std::uint32_t> ids(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].tape() != &tape) {
      throw std::logic_error("softmax scores belong to different tapes");
    }
    s[i] = scores[i].value();
    ids[i] = scores[i].index();
  }
  std::vector<double> w = stable_softmax(s, tau);
  // The max shift is constant; d w_i / d s_j = w_i (delta_ij - w_j) / tau.
  auto backward = [w, ids = std::move(ids), tau](
                      std::span<const double> w_adj, std::span<double> adj) {
    double dot = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) dot += w_adj[i] * w[i];
    for (std::size_t j = 0; j < w.size(); ++j) {
      adj[ids[j]] += w[j] * (w_adj[j] - dot) / tau;
    }
  };
  return tape.custom(w, std::move(backward));
}

double evaluate(const GraphFunction& f, std::span<const double> x) {
  Tape tape;
  std::vector<Var> in;
  in.reserve(x.size());
  for (double v : x) in.push_back(tape.variable(v));
  return f(tape, in).value();
}

GradientVector gradient(const GraphFunction& f, std::span<const double> x) {
  Tape tape;
  std::vector<Var> in;
  in.reserve(x.size());
  for (double v : x) in.push_back(tape.variable(v));
  const Var out = f(tape, in);
  return tape.backward(out, in);
}

double max_gradient_error(const GraphFunction& f, std::span<const double> x,
                          double h) {
  if (!(h > 0.0)) throw std::invalid_argument("grad_check: h must be > 0");
  const GradientVector analytic = gradient(f, x);
  std::vector<double> probe(x.begin(), x.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = evaluate(f, probe);
    probe[i] = x[i] - h;
    const double down = evaluate(f, probe);
    probe[i] = x[i];
    const double a = analytic[i];
    const double b = (up - down) / (2.0 * h);
    const double err =
        std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
    if (std::isnan(err)) return err;
    worst = std::max(worst, err);
  }
  return worst;
}

double grad_check(const GraphFunction& f, std::span<const double> x,
                  double h) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > h && x[i] < 1.0 - h)) {
      throw std::invalid_argument("grad_check: coordinate " +
                                  std::to_string(i) +
                                  " is within h of the [0,1] boundary");
    }
  }
  return max_gradient_error(f, x, h);
}

}  // namespace ucoalign
