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

#include "ucoalign/quadratic.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ucoalign {

QuadraticProblem::QuadraticProblem(std::size_t n, std::vector<double> alpha)
    : n_(n), alpha_(std::move(alpha)) {
  if (alpha_.size() != n_ * n_) {
    throw std::invalid_argument("quadratic coefficients must be n x n");
  }
  for (double a : alpha_) {
    if (!std::isfinite(a)) {
      throw std::invalid_argument("quadratic coefficients must be finite");
    }
  }
}

QuadraticProblem QuadraticProblem::FromRows(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw std::invalid_argument("quadratic coefficient matrix is not square");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return QuadraticProblem(n, std::move(flat));
}

bool QuadraticProblem::has_zero_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (alpha(i, i) != 0.0) return false;
  }
  return true;
}

double QuadraticProblem::hard_objective(const BinaryDecisions& d) const {
  check_dimension(d.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!d[i]) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (d[j]) total += alpha(i, j);
    }
  }
  return total;
}

bool QuadraticProblem::is_feasible(const BinaryDecisions& d) const {
  check_dimension(d.size());
  return true;
}

double QuadraticProblem::surrogate(std::span<const double> x) const {
  check_dimension(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += alpha(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

Var QuadraticProblem::surrogate(Tape& tape, std::span<const Var> x) const {
  check_dimension(x.size());
  if (n_ == 0) return tape.variable(0.0);
  std::vector<double> xv(n_);
  std::vector<std::uint32_t> ids(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    xv[i] = x[i].value();
    ids[i] = x[i].index();
  }
  const double value = surrogate(xv);
  // d/dx_i = sum_j (alpha_ij + alpha_ji) x_j
  auto backward = [this, xv = std::move(xv), ids = std::move(ids)](
                      std::span<const double> out_adj, std::span<double> adj) {
    for (std::size_t i = 0; i < n_; ++i) {
      double g = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        g += (alpha(i, j) + alpha(j, i)) * xv[j];
      }
      adj[ids[i]] += out_adj[0] * g;
    }
  };
  const double values[] = {value};
  return tape.custom(values, std::move(backward)).front();
}

double QuadraticProblem::cross_field(std::span<const double> x,
                                     std::size_t j) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i != j) s += (alpha(i, j) + alpha(j, i)) * x[i];
  }
  return s;
}

Gains<double> QuadraticProblem::gains(std::span<const double> x,
                                      std::size_t j) const {
  check_dimension(x.size());
  const double s = cross_field(x, j);
  const double a = alpha(j, j);
  const double xj = x[j];
  return {-(a * (0.0 - xj * xj) + (0.0 - xj) * s),
          -(a * (1.0 - xj * xj) + (1.0 - xj) * s)};
}

Gains<Var> QuadraticProblem::gains_from_field(Tape& tape, Var xj, Var field,
                                              std::size_t j) const {
  const double a = alpha(j, j);
  const double xv = xj.value();
  const double s = field.value();
  Gains<Var> g;
  for (int b = 0; b < 2; ++b) {
    const double value = -(a * (b * b - xv * xv) + (b - xv) * s);
    g[b] = tape.node(value, {{xj, 2.0 * a * xv + s}, {field, xv - b}});
  }
  return g;
}

Gains<Var> QuadraticProblem::gains(Tape& tape, std::span<const Var> x,
                                   std::size_t j) const {
  check_dimension(x.size());
  std::vector<Var> terms;
  std::vector<double> weights;
  terms.reserve(n_);
  weights.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (i == j) continue;
    terms.push_back(x[i]);
    weights.push_back(alpha(i, j) + alpha(j, i));
  }
  const Var field = tape.weighted_sum(terms, weights);
  return gains_from_field(tape, x[j], field, j);
}

std::vector<Gains<Var>> QuadraticProblem::all_gains(
    Tape& tape, std::span<const Var> x) const {
  check_dimension(x.size());
  std::vector<Gains<Var>> out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) out.push_back(gains(tape, x, j));
  return out;
}

QuadraticProblem sample_quadratic(std::size_t n, const SeedStream& seed) {
  if (n == 0) throw std::invalid_argument("sample_quadratic: n must be >= 1");
  Rng rng(seed);
  std::vector<double> alpha(n * n);
  for (double& a : alpha) a = rng.normal();
  return QuadraticProblem(n, std::move(alpha));
}

}  // namespace ucoalign
