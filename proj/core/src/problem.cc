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

#include "ucoalign/problem.h"

#include <stdexcept>
#include <string>

namespace ucoalign {

void Problem::check_dimension(std::size_t size) const {
  if (size != dimension()) {
    throw std::invalid_argument("dimension mismatch: expected " +
                                std::to_string(dimension()) + ", got " +
                                std::to_string(size));
  }
}

Gains<double> Problem::gains_by_reevaluation(std::span<const double> x,
                                             std::size_t j) const {
  check_dimension(x.size());
  std::vector<double> probe(x.begin(), x.end());
  const double base = surrogate(probe);
  Gains<double> g{};
  for (int b = 0; b < 2; ++b) {
    probe[j] = b;
    g[b] = base - surrogate(probe);
  }
  return g;
}

Gains<Var> Problem::gains_by_reevaluation(Tape& tape, std::span<const Var> x,
                                          std::size_t j) const {
  check_dimension(x.size());
  std::vector<Var> probe(x.begin(), x.end());
  const Var base = surrogate(tape, probe);
  Gains<Var> g{};
  for (int b = 0; b < 2; ++b) {
    probe[j] = tape.variable(b);
    g[b] = base - surrogate(tape, probe);
  }
  return g;
}

Gains<double> Problem::gains(std::span<const double> x, std::size_t j) const {
  return gains_by_reevaluation(x, j);
}

Gains<Var> Problem::gains(Tape& tape, std::span<const Var> x,
                          std::size_t j) const {
  return gains_by_reevaluation(tape, x, j);
}

std::vector<Gains<double>> Problem::all_gains(std::span<const double> x) const {
  std::vector<Gains<double>> out;
  out.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out.push_back(gains(x, j));
  return out;
}

std::vector<Gains<Var>> Problem::all_gains(Tape& tape,
                                           std::span<const Var> x) const {
  std::vector<Gains<Var>> out;
  out.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out.push_back(gains(tape, x, j));
  return out;
}

}  // namespace ucoalign
