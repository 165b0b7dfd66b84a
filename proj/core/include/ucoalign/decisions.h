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

#ifndef UCOALIGN_DECISIONS_H_
#define UCOALIGN_DECISIONS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ucoalign {

// A point of [0,1]^n read as an independent multivariate Bernoulli
// distribution: entry i is the probability that decision i is 1.
class ContinuousDecisions {
 public:
  ContinuousDecisions() = default;

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  friend ContinuousDecisions validate_continuous(std::vector<double> values);
  explicit ContinuousDecisions(std::vector<double> values)
      : values_(std::move(values)) {}

  std::vector<double> values_;
};

// A point of {0,1}^n.
class BinaryDecisions {
 public:
  BinaryDecisions() = default;
  // Throws std::invalid_argument if any entry is not 0 or 1.
  explicit BinaryDecisions(std::vector<int> bits);
  static BinaryDecisions Zeros(std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t count() const;

  // The corner of [0,1]^n at this point.
  std::vector<double> embed() const;

  void set(std::size_t i, bool bit) { bits_[i] = bit ? 1 : 0; }

  friend bool operator==(const BinaryDecisions&,
                         const BinaryDecisions&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Checks that every entry is finite and lies in [0,1]. Throws
// std::invalid_argument naming the first offending index.
ContinuousDecisions validate_continuous(std::vector<double> values);

// Entry i of the result is 1 iff values[i] >= t. Requires 0 < t < 1.
BinaryDecisions threshold(std::span<const double> values, double t);
inline BinaryDecisions threshold(const ContinuousDecisions& d, double t) {
  return threshold(d.values(), t);
}

// True iff every entry is exactly 0 or 1.
bool is_binary(std::span<const double> values);

// Converts an all-binary real vector. Throws std::invalid_argument if an
// entry is fractional.
BinaryDecisions to_binary(std::span<const double> values);

}  // namespace ucoalign

#endif  // UCOALIGN_DECISIONS_H_
