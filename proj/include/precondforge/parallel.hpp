// Copyright 2026 The PrecondForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

namespace precondforge {

// OpenMP loop over [0, n). An exception thrown by `body` is captured per
// index; after the loop the one with the lowest index is rethrown, so the
// reported failure does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, int chunk = 16) {
  std::vector<std::exception_ptr> errors(n);
  bool failed = false;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, chunk) reduction(|| : failed)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
      failed = true;
    }
  }
  if (!failed) return;
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline int max_threads() { return omp_get_max_threads(); }

// Sets the OpenMP team size for subsequent regions; 0 leaves it unchanged.
inline void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace precondforge
