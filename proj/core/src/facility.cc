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

#include "ucoalign/facility.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace ucoalign {
namespace {

// First-order forward-mode number, used for Hessian-vector products.
struct Dual {
  double v = 0.0;
  double d = 0.0;

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit constant lift
  Dual(double value, double deriv) : v(value), d(deriv) {}
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual& operator+=(Dual& a, Dual b) { return a = a + b; }
Dual& operator*=(Dual& a, Dual b) { return a = a * b; }

struct GraphInputs {
  std::vector<double> values;
  std::vector<std::uint32_t> ids;
};

GraphInputs unpack(std::span<const Var> x) {
  GraphInputs in;
  in.values.reserve(x.size());
  in.ids.reserve(x.size());
  for (const Var& v : x) {
    in.values.push_back(v.value());
    in.ids.push_back(v.index());
  }
  return in;
}

}  // namespace

FacilityProblem::FacilityProblem(std::size_t n, std::vector<double> dist,
                                 std::size_t k, double beta, double penalty)
    : n_(n),
      dist_(std::move(dist)),
      k_(k),
      beta_(beta),
      penalty_(penalty) {
  if (dist_.size() != n_ * n_) {
    throw std::invalid_argument("distance matrix must be n x n");
  }
  if (k_ < 1 || k_ > n_) {
    throw std::invalid_argument("facility budget k must satisfy 1 <= k <= n");
  }
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    throw std::invalid_argument("constraint coefficient beta must be > 0");
  }
  double max_dist = 0.0;
  for (double d : dist_) {
    if (!std::isfinite(d) || d < 0.0) {
      throw std::invalid_argument("distances must be finite and non-negative");
    }
    max_dist = std::max(max_dist, d);
  }
  if (!std::isfinite(penalty_) || penalty_ < max_dist) {
    throw std::invalid_argument(
        "no-coverage penalty must be at least the largest distance");
  }

  order_.resize(n_ * n_);
  sorted_dist_.resize(n_ * n_);
  rank_.resize(n_ * n_);
  for (std::size_t v = 0; v < n_; ++v) {
    auto row = order_.begin() + static_cast<std::ptrdiff_t>(v * n_);
    std::iota(row, row + static_cast<std::ptrdiff_t>(n_), std::uint32_t{0});
    std::stable_sort(row, row + static_cast<std::ptrdiff_t>(n_),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return distance(v, a) < distance(v, b);
                     });
    for (std::size_t r = 0; r < n_; ++r) {
      const std::uint32_t c = order_[v * n_ + r];
      sorted_dist_[v * n_ + r] = distance(v, c);
      rank_[v * n_ + c] = static_cast<std::uint32_t>(r);
    }
  }
}

FacilityProblem FacilityProblem::FromPoints(std::vector<Point> points,
                                            std::size_t k, double beta) {
  const std::size_t n = points.size();
  std::vector<double> dist(n * n, 0.0);
  double max_dist = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d =
          std::hypot(points[a].x - points[b].x, points[a].y - points[b].y);
      dist[a * n + b] = d;
      dist[b * n + a] = d;
      max_dist = std::max(max_dist, d);
    }
  }
  FacilityProblem p(n, std::move(dist), k, beta, max_dist);
  p.points_ = std::move(points);
  return p;
}

double FacilityProblem::hard_objective(const BinaryDecisions& d) const {
  check_dimension(d.size());
  if (d.count() == 0) return static_cast<double>(n_) * penalty_;
  double total = 0.0;
  for (std::size_t v = 0; v < n_; ++v) {
    for (std::size_t r = 0; r < n_; ++r) {
      if (d[order_[v * n_ + r]]) {
        total += sorted_dist_[v * n_ + r];
        break;
      }
    }
  }
  return total;
}

bool FacilityProblem::is_feasible(const BinaryDecisions& d) const {
  check_dimension(d.size());
  return d.count() <= k_;
}

template <typename T>
T FacilityProblem::expected_service_impl(std::span<const T> x) const {
  T total = 0.0;
  for (std::size_t v = 0; v < n_; ++v) {
    const std::uint32_t* row = order_.data() + v * n_;
    const double* d = sorted_dist_.data() + v * n_;
    T none = 1.0;  // probability that no closer candidate is chosen
    T e = 0.0;
    for (std::size_t r = 0; r < n_; ++r) {
      const T& p = x[row[r]];
      e += d[r] * (p * none);
      none *= 1.0 - p;
    }
    total += e + penalty_ * none;
  }
  return total;
}

template <typename T>
T FacilityProblem::tail_penalty_impl(std::span<const T> x) const {
  // q[c] = Pr[count == c] for c <= k; q[k+1] absorbs every count above k.
  std::vector<T> q(k_ + 2, T(0.0));
  q[0] = 1.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const T& p = x[i];
    const T stay = 1.0 - p;
    q[k_ + 1] += q[k_] * p;
    for (std::size_t c = k_; c > 0; --c) q[c] = q[c] * stay + q[c - 1] * p;
    q[0] *= stay;
  }
  return q[k_ + 1];
}

template <typename T>
void FacilityProblem::service_gradient_impl(std::span<const T> x,
                                            std::span<T> grad) const {
  // With tail_r = expected cost of v given ranks <= r are all unchosen,
  //   tail_{n-1} = M,  tail_r = x_(r+1) d_(r+1) + (1 - x_(r+1)) tail_{r+1},
  // dE_v / dx_(r) = prod_{l<r} (1 - x_(l)) * (d_(r) - tail_r).
  // Both recurrences are serial, so kLanes locations advance together.
  constexpr std::size_t kLanes = 4;
  std::vector<T> tail(kLanes * n_);
  std::size_t v = 0;
  auto block = [&]<std::size_t L>(std::integral_constant<std::size_t, L>) {
    const std::uint32_t* row[L];
    const double* d[L];
    T* t[L];
    for (std::size_t l = 0; l < L; ++l) {
      row[l] = order_.data() + (v + l) * n_;
      d[l] = sorted_dist_.data() + (v + l) * n_;
      t[l] = tail.data() + l * n_;
      t[l][n_ - 1] = penalty_;
    }
    for (std::size_t r = n_ - 1; r > 0; --r) {
      for (std::size_t l = 0; l < L; ++l) {
        const T& p = x[row[l][r]];
        t[l][r - 1] = d[l][r] * p + (1.0 - p) * t[l][r];
      }
    }
    T none[L];
    for (std::size_t l = 0; l < L; ++l) none[l] = 1.0;
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t l = 0; l < L; ++l) {
        grad[row[l][r]] += none[l] * (d[l][r] - t[l][r]);
        none[l] *= 1.0 - x[row[l][r]];
      }
    }
    v += L;
  };
  while (v + kLanes <= n_) block(std::integral_constant<std::size_t, kLanes>{});
  while (v < n_) block(std::integral_constant<std::size_t, 1>{});
}

template <typename T>
void FacilityProblem::tail_gradient_impl(std::span<const T> x, double scale,
                                         std::span<T> grad) const {
  // d Pr[S > k] / dx_j = Pr[S without j == k], from prefix and suffix count
  // distributions truncated at k.
  const std::size_t w = k_ + 1;
  std::vector<T> prefix((n_ + 1) * w, T(0.0));
  std::vector<T> suffix((n_ + 1) * w, T(0.0));
  prefix[0] = 1.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const T* src = prefix.data() + i * w;
    T* dst = prefix.data() + (i + 1) * w;
    const T stay = 1.0 - x[i];
    dst[0] = src[0] * stay;
    for (std::size_t c = 1; c < w; ++c) dst[c] = src[c] * stay + src[c - 1] * x[i];
  }
  suffix[n_ * w] = 1.0;
  for (std::size_t i = n_; i-- > 0;) {
    const T* src = suffix.data() + (i + 1) * w;
    T* dst = suffix.data() + i * w;
    const T stay = 1.0 - x[i];
    dst[0] = src[0] * stay;
    for (std::size_t c = 1; c < w; ++c) dst[c] = src[c] * stay + src[c - 1] * x[i];
  }
  for (std::size_t j = 0; j < n_; ++j) {
    const T* before = prefix.data() + j * w;
    const T* after = suffix.data() + (j + 1) * w;
    T exact = 0.0;
    for (std::size_t a = 0; a <= k_; ++a) exact += before[a] * after[k_ - a];
    grad[j] += scale * exact;
  }
}

double FacilityProblem::expected_service(std::span<const double> x) const {
  check_dimension(x.size());
  return expected_service_impl<double>(x);
}

double FacilityProblem::tail_penalty(std::span<const double> x) const {
  check_dimension(x.size());
  return tail_penalty_impl<double>(x);
}

double FacilityProblem::surrogate(std::span<const double> x) const {
  check_dimension(x.size());
  return expected_service_impl<double>(x) + beta_ * tail_penalty_impl<double>(x);
}

std::vector<double> FacilityProblem::surrogate_gradient(
    std::span<const double> x) const {
  check_dimension(x.size());
  std::vector<double> grad(n_, 0.0);
  service_gradient_impl<double>(x, grad);
  tail_gradient_impl<double>(x, beta_, grad);
  return grad;
}

double FacilityProblem::surrogate_partial(std::span<const double> x,
                                          std::size_t j) const {
  check_dimension(x.size());
  double partial = 0.0;
  for (std::size_t v = 0; v < n_; ++v) {
    const std::uint32_t* row = order_.data() + v * n_;
    const double* d = sorted_dist_.data() + v * n_;
    const std::size_t r = rank_[v * n_ + j];
    double tail = penalty_;
    for (std::size_t s = n_ - 1; s > r; --s) {
      const double p = x[row[s]];
      tail = d[s] * p + (1.0 - p) * tail;
    }
    double none = 1.0;
    for (std::size_t s = 0; s < r; ++s) none *= 1.0 - x[row[s]];
    partial += none * (d[r] - tail);
  }
  // Pr[count over the other coordinates == k].
  std::vector<double> q(k_ + 1, 0.0);
  q[0] = 1.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i == j) continue;
    const double p = x[i];
    for (std::size_t c = k_; c > 0; --c) q[c] = q[c] * (1.0 - p) + q[c - 1] * p;
    q[0] *= 1.0 - p;
  }
  return partial + beta_ * q[k_];
}

std::vector<double> FacilityProblem::hessian_vector_product(
    std::span<const double> x, std::span<const double> u) const {
  check_dimension(x.size());
  check_dimension(u.size());
  std::vector<Dual> xd(n_);
  for (std::size_t i = 0; i < n_; ++i) xd[i] = Dual(x[i], u[i]);
  std::vector<Dual> grad(n_);
  service_gradient_impl<Dual>(xd, grad);
  tail_gradient_impl<Dual>(xd, beta_, grad);
  std::vector<double> hu(n_);
  for (std::size_t i = 0; i < n_; ++i) hu[i] = grad[i].d;
  return hu;
}

std::vector<double> FacilityProblem::hessian_row(std::span<const double> x,
                                                 std::size_t j) const {
  check_dimension(x.size());
  if (j >= n_) throw std::out_of_range("hessian_row: index out of range");
  std::vector<double> h(n_, 0.0);
  // Service part, per location v with j at rank r:
  //   s > r:  -prod_{l<r} (1 - x_(l)) prod_{r<l<s} (1 - x_(l)) (d_(s) - tail_s)
  //   s < r:  -prod_{l<r, l!=s} (1 - x_(l)) (d_(r) - tail_r)
  std::vector<double> tail(n_);
  std::vector<double> before(n_ + 1);
  for (std::size_t v = 0; v < n_; ++v) {
    const std::uint32_t* row = order_.data() + v * n_;
    const double* d = sorted_dist_.data() + v * n_;
    const std::size_t r = rank_[v * n_ + j];
    tail[n_ - 1] = penalty_;
    for (std::size_t s = n_ - 1; s > r; --s) {
      const double p = x[row[s]];
      tail[s - 1] = d[s] * p + (1.0 - p) * tail[s];
    }
    before[0] = 1.0;
    for (std::size_t s = 0; s < r; ++s) before[s + 1] = before[s] * (1.0 - x[row[s]]);
    double between = before[r];
    for (std::size_t s = r + 1; s < n_; ++s) {
      h[row[s]] -= between * (d[s] - tail[s]);
      between *= 1.0 - x[row[s]];
    }
    const double own = d[r] - tail[r];
    double skip = 1.0;  // prod_{s<l<r} (1 - x_(l))
    for (std::size_t s = r; s-- > 0;) {
      h[row[s]] -= before[s] * skip * own;
      skip *= 1.0 - x[row[s]];
    }
  }
  // Tail part: d Pr[S_{-j} = k] / dx_i = Pr[S_{-j,-i} = k-1] - Pr[S_{-j,-i} = k],
  // from prefix and suffix count distributions that skip j.
  const std::size_t w = k_ + 1;
  std::vector<double> prefix((n_ + 1) * w, 0.0);
  std::vector<double> suffix((n_ + 1) * w, 0.0);
  auto step = [&](const double* src, double* dst, std::size_t i) {
    if (i == j) {
      std::copy(src, src + w, dst);
      return;
    }
    const double p = x[i];
    dst[0] = src[0] * (1.0 - p);
    for (std::size_t c = 1; c < w; ++c) dst[c] = src[c] * (1.0 - p) + src[c - 1] * p;
  };
  prefix[0] = 1.0;
  for (std::size_t i = 0; i < n_; ++i) {
    step(prefix.data() + i * w, prefix.data() + (i + 1) * w, i);
  }
  suffix[n_ * w] = 1.0;
  for (std::size_t i = n_; i-- > 0;) {
    step(suffix.data() + (i + 1) * w, suffix.data() + i * w, i);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (i == j) continue;
    const double* a = prefix.data() + i * w;
    const double* b = suffix.data() + (i + 1) * w;
    double at_k = 0.0;
    double at_k1 = 0.0;
    for (std::size_t c = 0; c <= k_; ++c) at_k += a[c] * b[k_ - c];
    for (std::size_t c = 0; c < k_; ++c) at_k1 += a[c] * b[k_ - 1 - c];
    h[i] += beta_ * (at_k1 - at_k);
  }
  return h;
}

Var FacilityProblem::expected_service(Tape& tape,
                                      std::span<const Var> x) const {
  check_dimension(x.size());
  GraphInputs in = unpack(x);
  const double value = expected_service_impl<double>(in.values);
  auto backward = [this, in = std::move(in)](std::span<const double> out_adj,
                                             std::span<double> adj) {
    std::vector<double> grad(n_, 0.0);
    service_gradient_impl<double>(in.values, grad);
    for (std::size_t i = 0; i < n_; ++i) adj[in.ids[i]] += out_adj[0] * grad[i];
  };
  const double values[] = {value};
  return tape.custom(values, std::move(backward)).front();
}

Var FacilityProblem::tail_penalty(Tape& tape, std::span<const Var> x) const {
  check_dimension(x.size());
  GraphInputs in = unpack(x);
  const double value = tail_penalty_impl<double>(in.values);
  auto backward = [this, in = std::move(in)](std::span<const double> out_adj,
                                             std::span<double> adj) {
    std::vector<double> grad(n_, 0.0);
    tail_gradient_impl<double>(in.values, 1.0, grad);
    for (std::size_t i = 0; i < n_; ++i) adj[in.ids[i]] += out_adj[0] * grad[i];
  };
  const double values[] = {value};
  return tape.custom(values, std::move(backward)).front();
}

Var FacilityProblem::surrogate(Tape& tape, std::span<const Var> x) const {
  check_dimension(x.size());
  GraphInputs in = unpack(x);
  const double value = surrogate(in.values);
  auto backward = [this, in = std::move(in)](std::span<const double> out_adj,
                                             std::span<double> adj) {
    const std::vector<double> grad = surrogate_gradient(in.values);
    for (std::size_t i = 0; i < n_; ++i) adj[in.ids[i]] += out_adj[0] * grad[i];
  };
  const double values[] = {value};
  return tape.custom(values, std::move(backward)).front();
}

Gains<double> FacilityProblem::gains(std::span<const double> x,
                                     std::size_t j) const {
  const double g = surrogate_partial(x, j);
  return {x[j] * g, (x[j] - 1.0) * g};
}

std::vector<Gains<double>> FacilityProblem::all_gains(
    std::span<const double> x) const {
  const std::vector<double> grad = surrogate_gradient(x);
  std::vector<Gains<double>> out(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    out[j] = {x[j] * grad[j], (x[j] - 1.0) * grad[j]};
  }
  return out;
}

namespace {

Gains<Var> gains_from_partial(Tape& tape, Var xj, Var partial) {
  const double xv = xj.value();
  const double g = partial.value();
  return {tape.node(xv * g, {{xj, g}, {partial, xv}}),
          tape.node((xv - 1.0) * g, {{xj, g}, {partial, xv - 1.0}})};
}

}  // namespace

Gains<Var> FacilityProblem::gains(Tape& tape, std::span<const Var> x,
                                  std::size_t j) const {
  check_dimension(x.size());
  GraphInputs in = unpack(x);
  const double value = surrogate_partial(in.values, j);
  // d partial_j / dx is row j of the Hessian.
  auto backward = [this, in = std::move(in), j](std::span<const double> out_adj,
                                                std::span<double> adj) {
    const std::vector<double> row = hessian_row(in.values, j);
    for (std::size_t i = 0; i < n_; ++i) adj[in.ids[i]] += out_adj[0] * row[i];
  };
  const double values[] = {value};
  const Var partial = tape.custom(values, std::move(backward)).front();
  return gains_from_partial(tape, x[j], partial);
}

std::vector<Gains<Var>> FacilityProblem::all_gains(
    Tape& tape, std::span<const Var> x) const {
  check_dimension(x.size());
  GraphInputs in = unpack(x);
  const std::vector<double> grad = surrogate_gradient(in.values);
  // The Hessian is symmetric, so the vector-Jacobian product of the gradient
  // map is H u.
  auto backward = [this, in = std::move(in)](std::span<const double> out_adj,
                                             std::span<double> adj) {
    const std::vector<double> hu = hessian_vector_product(in.values, out_adj);
    for (std::size_t i = 0; i < n_; ++i) adj[in.ids[i]] += hu[i];
  };
  const std::vector<Var> partials = tape.custom(grad, std::move(backward));
  std::vector<Gains<Var>> out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    out.push_back(gains_from_partial(tape, x[j], partials[j]));
  }
  return out;
}

FacilityProblem sample_facility(std::size_t n, std::size_t k, double beta,
                                const SeedStream& seed) {
  Rng rng(seed);
  std::vector<Point> points(n);
  for (Point& p : points) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  return FacilityProblem::FromPoints(std::move(points), k, beta);
}

}  // namespace ucoalign
