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

#ifndef UCOALIGN_TESTS_SUPPORT_ORACLES_H_
#define UCOALIGN_TESTS_SUPPORT_ORACLES_H_

// Independent reference computations for tests. Nothing here calls the
// incremental or closed-form paths of the library under test: expectations
// come from enumerating all 2^n outcomes, optima from brute force and
// derivatives from central differences.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ucoalign/decisions.h"
#include "ucoalign/facility.h"
#include "ucoalign/quadratic.h"
#include "ucoalign/seed.h"

namespace ucoalign::testing {

inline BinaryDecisions corner(std::size_t n, std::uint64_t mask) {
  BinaryDecisions d = BinaryDecisions::Zeros(n);
  for (std::size_t i = 0; i < n; ++i) d.set(i, (mask >> i) & 1U);
  return d;
}

// Probability of the corner `mask` under independent Bernoulli(p_i).
inline double corner_probability(std::span<const double> p,
                                 std::uint64_t mask) {
  double prob = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    prob *= ((mask >> i) & 1U) ? p[i] : 1.0 - p[i];
  }
  return prob;
}

// sum over all 2^n corners D of Pr[D] * f(D).
inline double enumerate_expectation(
    std::span<const double> p,
    const std::function<double(const BinaryDecisions&)>& f) {
  const std::size_t n = p.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    total += corner_probability(p, mask) * f(corner(n, mask));
  }
  return total;
}

inline double enumerate_tail(std::span<const double> p, std::size_t k) {
  return enumerate_expectation(p, [k](const BinaryDecisions& d) {
    return d.count() > k ? 1.0 : 0.0;
  });
}

// Direct double loop over the coefficient matrix.
inline double quadratic_by_definition(const QuadraticProblem& q,
                                      std::span<const double> x) {
  double total = 0.0;
  for (std::size_t i = 0; i < q.dimension(); ++i) {
    for (std::size_t j = 0; j < q.dimension(); ++j) {
      total += q.alpha(i, j) * x[i] * x[j];
    }
  }
  return total;
}

// Service cost by scanning all chosen centers for every location.
inline double service_by_definition(const FacilityProblem& p,
                                    const BinaryDecisions& d) {
  const std::size_t n = p.dimension();
  if (d.count() == 0) return static_cast<double>(n) * p.penalty();
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (d[c]) best = std::min(best, p.distance(v, c));
    }
    total += best;
  }
  return total;
}

inline double brute_force_minimum(
    std::size_t n, const std::function<double(const BinaryDecisions&)>& f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    best = std::min(best, f(corner(n, mask)));
  }
  return best;
}

inline std::vector<double> central_difference(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double h) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// Uniform point of [lo, hi]^n.
inline std::vector<double> random_point(std::size_t n, Rng& rng,
                                        double lo = 0.0, double hi = 1.0) {
  std::vector<double> x(n);
  for (double& v : x) v = lo + (hi - lo) * rng.uniform();
  return x;
}

inline QuadraticProblem random_quadratic(std::size_t n, Rng& rng,
                                         bool zero_diagonal) {
  std::vector<double> alpha(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      alpha[i * n + j] = (zero_diagonal && i == j) ? 0.0 : rng.normal();
    }
  }
  return QuadraticProblem(n, std::move(alpha));
}

// Random points in the unit square with a random budget.
inline FacilityProblem random_facility(std::size_t n, Rng& rng, double beta) {
  std::vector<Point> pts(n);
  for (Point& p : pts) p = {rng.uniform(), rng.uniform()};
  const std::size_t k = 1 + static_cast<std::size_t>(rng.below(n));
  return FacilityProblem::FromPoints(std::move(pts), k, beta);
}

}  // namespace ucoalign::testing

#endif  // UCOALIGN_TESTS_SUPPORT_ORACLES_H_
