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

#ifndef UCOALIGN_QUADRATIC_H_
#define UCOALIGN_QUADRATIC_H_

#include <cstddef>
#include <span>
#include <vector>

#include "ucoalign/problem.h"
#include "ucoalign/seed.h"

namespace ucoalign {

// Unconstrained pseudo-Boolean quadratic f(D) = sum_ij alpha_ij d_i d_j with
// the bilinear surrogate sum_ij alpha_ij x_i x_j.
//
// The surrogate is the exact Bernoulli expectation only when the diagonal of
// alpha is zero (E[d_i^2] = x_i, not x_i^2). The bilinear form is kept as is
// for every alpha; on corners it always equals f.
class QuadraticProblem final : public Problem {
 public:
  // `alpha` is row-major n x n; throws std::invalid_argument if it is not
  // square or holds a non-finite entry.
  QuadraticProblem(std::size_t n, std::vector<double> alpha);
  static QuadraticProblem FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t dimension() const override { return n_; }
  double alpha(std::size_t i, std::size_t j) const { return alpha_[i * n_ + j]; }
  std::span<const double> coefficients() const { return alpha_; }
  bool has_zero_diagonal() const;

  double hard_objective(const BinaryDecisions& d) const override;
  bool is_feasible(const BinaryDecisions& d) const override;

  using Problem::surrogate;
  double surrogate(std::span<const double> x) const override;
  Var surrogate(Tape& tape, std::span<const Var> x) const override;

  using Problem::all_gains;
  // O(n) per coordinate: with s_j = sum_{i != j} (alpha_ij + alpha_ji) x_i,
  // gain[b] = -(alpha_jj (b^2 - x_j^2) + (b - x_j) s_j).
  Gains<double> gains(std::span<const double> x, std::size_t j) const override;
  Gains<Var> gains(Tape& tape, std::span<const Var> x,
                   std::size_t j) const override;
  std::vector<Gains<Var>> all_gains(Tape& tape,
                                    std::span<const Var> x) const override;

 private:
  double cross_field(std::span<const double> x, std::size_t j) const;
  Gains<Var> gains_from_field(Tape& tape, Var xj, Var field,
                              std::size_t j) const;

  std::size_t n_;
  std::vector<double> alpha_;
};

// n x n coefficients drawn i.i.d. standard normal (Box-Muller) in row-major
// order from `seed`. Requires n >= 1.
QuadraticProblem sample_quadratic(std::size_t n, const SeedStream& seed);

}  // namespace ucoalign

#endif  // UCOALIGN_QUADRATIC_H_
