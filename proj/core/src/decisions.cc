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

#include "ucoalign/decisions.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ucoalign {

BinaryDecisions::BinaryDecisions(std::vector<int> bits) {
  bits_.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) {
      throw std::invalid_argument("binary decision at index " +
                                  std::to_string(i) + " is not 0 or 1");
    }
    bits_.push_back(static_cast<std::uint8_t>(bits[i]));
  }
}

BinaryDecisions BinaryDecisions::Zeros(std::size_t n) {
  BinaryDecisions d;
  d.bits_.assign(n, 0);
  return d;
}

std::size_t BinaryDecisions::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<double> BinaryDecisions::embed() const {
  return std::vector<double>(bits_.begin(), bits_.end());
}

ContinuousDecisions validate_continuous(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw std::invalid_argument("continuous decision at index " +
                                  std::to_string(i) + " is outside [0,1]");
    }
  }
  return ContinuousDecisions(std::move(values));
}

BinaryDecisions threshold(std::span<const double> values, double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::invalid_argument("threshold must lie strictly inside (0,1)");
  }
  BinaryDecisions out = BinaryDecisions::Zeros(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.set(i, values[i] >= t);
  return out;
}

bool is_binary(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return v == 0.0 || v == 1.0; });
}

BinaryDecisions to_binary(std::span<const double> values) {
  BinaryDecisions out = BinaryDecisions::Zeros(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0 && values[i] != 1.0) {
      throw std::invalid_argument("entry " + std::to_string(i) +
                                  " is fractional");
    }
    out.set(i, values[i] == 1.0);
  }
  return out;
}

}  // namespace ucoalign
