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

#ifndef UCOALIGN_INSTANCE_IO_H_
#define UCOALIGN_INSTANCE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "ucoalign/facility.h"
#include "ucoalign/quadratic.h"

namespace ucoalign {

// Facility instances: {"points": [[x, y], ...], "k": int, "beta": real}.
// The distance matrix is recomputed on load. Only instances built from
// points can be written.
std::string facility_to_json(const FacilityProblem& problem);
FacilityProblem facility_from_json(std::string_view text);

// Quadratic instances: {"alpha": [[...], ...]}.
std::string quadratic_to_json(const QuadraticProblem& problem);
QuadraticProblem quadratic_from_json(std::string_view text);

// Malformed documents throw std::invalid_argument; I/O failures throw
// std::runtime_error.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ucoalign

#endif  // UCOALIGN_INSTANCE_IO_H_
