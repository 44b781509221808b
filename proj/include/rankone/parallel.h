// Copyright 2026 The rankone Authors. All Rights Reserved.
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

#ifndef RANKONE_PARALLEL_H_
#define RANKONE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace rankone {

// Number of worker threads used by the row-parallel loops. Reads
// RO_RECOVER_THREADS once (0 or unset = hardware concurrency) unless an
// explicit value was set with set_thread_count().
std::size_t thread_count();

// Overrides the thread count for this process; 0 restores the environment
// default.
void set_thread_count(std::size_t n);

// Splits [0, rows) into contiguous chunks and runs body(begin, end) on each
// chunk. Bodies must write disjoint outputs. Results do not depend on the
// thread count as long as each row is computed independently.
void parallel_rows(std::size_t rows,
                   const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace rankone

#endif  // RANKONE_PARALLEL_H_
