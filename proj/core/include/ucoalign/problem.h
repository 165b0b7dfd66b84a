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

#ifndef UCOALIGN_PROBLEM_H_
#define UCOALIGN_PROBLEM_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ucoalign/autodiff.h"
#include "ucoalign/decisions.h"

namespace ucoalign {

// Gains of the two single-entry assignments of one coordinate:
// gain[b] = surrogate(x) - surrogate(x with x_j := b).
template <typename T>
using Gains = std::array<T, 2>;

// A combinatorial problem over n binary decisions together with its
// probabilistic surrogate. Implementations are immutable after construction
// and safe to evaluate from several threads.
//
// On every feasible corner D the surrogate must equal hard_objective(D).
// Graph evaluations may keep a reference to the problem until the tape's
// backward sweep has run.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::size_t dimension() const = 0;

  // The discrete objective. Problems document how infeasibility is folded in.
  virtual double hard_objective(const BinaryDecisions& d) const = 0;
  virtual bool is_feasible(const BinaryDecisions& d) const = 0;

  virtual double surrogate(std::span<const double> x) const = 0;
  virtual Var surrogate(Tape& tape, std::span<const Var> x) const = 0;

  // Single-entry assignment gains. The defaults re-evaluate the surrogate;
  // problems override them with incremental forms that must agree with
  // gains_by_reevaluation.
  virtual Gains<double> gains(std::span<const double> x, std::size_t j) const;
  virtual Gains<Var> gains(Tape& tape, std::span<const Var> x,
                           std::size_t j) const;
  virtual std::vector<Gains<double>> all_gains(std::span<const double> x) const;
  virtual std::vector<Gains<Var>> all_gains(Tape& tape,
                                            std::span<const Var> x) const;

  Gains<double> gains_by_reevaluation(std::span<const double> x,
                                      std::size_t j) const;
  Gains<Var> gains_by_reevaluation(Tape& tape, std::span<const Var> x,
                                   std::size_t j) const;

  double surrogate(const ContinuousDecisions& d) const {
    return surrogate(d.values());
  }

 protected:
  // Throws std::invalid_argument when `size` differs from dimension().
  void check_dimension(std::size_t size) const;
};

}  // namespace ucoalign

#endif  // UCOALIGN_PROBLEM_H_
