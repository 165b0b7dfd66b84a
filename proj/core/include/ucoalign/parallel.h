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

#ifndef UCOALIGN_PARALLEL_H_
#define UCOALIGN_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace ucoalign {

// 0 means "all available hardware threads" (at least 1).
std::size_t resolve_jobs(std::size_t requested);

// Runs body(i) for i in [0, count) on up to `jobs` threads. Each index is
// processed exactly once; if any call throws, the exception from the lowest
// failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace ucoalign

#endif  // UCOALIGN_PARALLEL_H_
