// Copyright 2026 The Learnability Authors. All Rights Reserved.
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

#pragma once

#include <cstddef>
#include <functional>

namespace learnability {

// Worker count used when a config asks for 0 ("all hardware threads").
unsigned resolve_workers(unsigned requested) noexcept;

// Calls task(i) for every i in [0, count) on up to `workers` threads. Tasks
// must write their results into index-keyed storage. After the first failure
// no new tasks start; once all threads join, the exception with the lowest
// index among the failed tasks is rethrown.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& task);

}  // namespace learnability
