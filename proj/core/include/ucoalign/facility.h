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

#ifndef UCOALIGN_FACILITY_H_
#define UCOALIGN_FACILITY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ucoalign/problem.h"
#include "ucoalign/seed.h"

namespace ucoalign {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Budgeted facility location: choose at most k of the n candidate centers so
// that the total distance from every location to its closest chosen center
// is small. Locations and candidates are the same n sites.
//
// hard_objective is the service cost; an empty selection costs n * M, where
// M is the no-coverage penalty distance. Feasibility is |D| <= k.
//
// The surrogate is E[service] + beta * Pr[|D| > k] under the product
// Bernoulli distribution x. Both terms are exact and multilinear:
//   E_v = sum_r d_v(r) x_(r) prod_{l<r} (1 - x_(l)) + M prod_l (1 - x_l)
// over candidates sorted by distance from v, and the overflow tail comes from
// a dynamic program over counts 0..k+1. The sort depends only on distances,
// so the recorded graph has value-independent structure.
class FacilityProblem final : public Problem {
 public:
  // `dist` is row-major: dist[v * n + c] is the distance from location v to
  // candidate c. Throws std::invalid_argument unless entries are finite and
  // non-negative, 1 <= k <= n, beta > 0 and penalty >= max entry.
  FacilityProblem(std::size_t n, std::vector<double> dist, std::size_t k,
                  double beta, double penalty);
  // Euclidean distances between the points; penalty = max distance.
  static FacilityProblem FromPoints(std::vector<Point> points, std::size_t k,
                                    double beta);

  std::size_t dimension() const override { return n_; }
  double distance(std::size_t v, std::size_t c) const {
    return dist_[v * n_ + c];
  }
  std::size_t budget() const { return k_; }
  double beta() const { return beta_; }
  double penalty() const { return penalty_; }
  // Empty unless built from points.
  const std::vector<Point>& points() const { return points_; }

  double hard_objective(const BinaryDecisions& d) const override;
  bool is_feasible(const BinaryDecisions& d) const override;

  double expected_service(std::span<const double> x) const;
  double tail_penalty(std::span<const double> x) const;
  Var expected_service(Tape& tape, std::span<const Var> x) const;
  Var tail_penalty(Tape& tape, std::span<const Var> x) const;

  using Problem::surrogate;
  double surrogate(std::span<const double> x) const override;
  Var surrogate(Tape& tape, std::span<const Var> x) const override;

  // Exact gradient of the surrogate in O(n^2 + n k). Since the surrogate is
  // multilinear, gradient[j] = f(x_j := 1) - f(x_j := 0).
  std::vector<double> surrogate_gradient(std::span<const double> x) const;
  double surrogate_partial(std::span<const double> x, std::size_t j) const;
  // Hessian-vector product H u, by forward-mode differentiation of the
  // gradient along u.
  std::vector<double> hessian_vector_product(std::span<const double> x,
                                             std::span<const double> u) const;
  // Row j of the Hessian in closed form, O(n^2 + n k).
  std::vector<double> hessian_row(std::span<const double> x, std::size_t j) const;

  // gain[b] = (x_j - b) * gradient[j].
  Gains<double> gains(std::span<const double> x, std::size_t j) const override;
  std::vector<Gains<double>> all_gains(std::span<const double> x) const override;
  Gains<Var> gains(Tape& tape, std::span<const Var> x,
                   std::size_t j) const override;
  std::vector<Gains<Var>> all_gains(Tape& tape,
                                    std::span<const Var> x) const override;

  // Candidates ordered by ascending distance from `v` (ties by index).
  std::span<const std::uint32_t> order(std::size_t v) const {
    return {order_.data() + v * n_, n_};
  }

 private:
  template <typename T>
  T expected_service_impl(std::span<const T> x) const;
  template <typename T>
  T tail_penalty_impl(std::span<const T> x) const;
  template <typename T>
  void service_gradient_impl(std::span<const T> x, std::span<T> grad) const;
  template <typename T>
  void tail_gradient_impl(std::span<const T> x, double scale,
                          std::span<T> grad) const;

  std::size_t n_;
  std::vector<double> dist_;
  std::size_t k_;
  double beta_;
  double penalty_;
  std::vector<Point> points_;
  std::vector<std::uint32_t> order_;     // n x n, row v sorted by distance
  std::vector<double> sorted_dist_;      // dist along order_
  std::vector<std::uint32_t> rank_;      // rank_[v * n + c]: position of c in row v
};

// n points uniform in the unit square drawn from `seed`; see FromPoints.
FacilityProblem sample_facility(std::size_t n, std::size_t k, double beta,
                                const SeedStream& seed);

}  // namespace ucoalign

#endif  // UCOALIGN_FACILITY_H_
