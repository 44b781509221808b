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

#include "rankone/parallel.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace rankone {
namespace {

std::atomic<std::size_t> g_override{0};

std::size_t env_thread_count() {
  static const std::size_t value = [] {
    std::size_t n = 0;
    if (const char* env = std::getenv("RO_RECOVER_THREADS")) {
      try {
        n = static_cast<std::size_t>(std::stoul(env));
      } catch (const std::exception&) {
        n = 0;
      }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
  }();
  return value;
}

// Rows per task never drops below this; tiny images stay single-threaded.
constexpr std::size_t kMinRowsPerTask = 16;

}  // namespace

std::size_t thread_count() {
  const std::size_t o = g_override.load(std::memory_order_relaxed);
  return o != 0 ? o : env_thread_count();
}

void set_thread_count(std::size_t n) { g_override.store(n, std::memory_order_relaxed); }

void parallel_rows(std::size_t rows,
                   const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t max_tasks = (rows + kMinRowsPerTask - 1) / kMinRowsPerTask;
  const std::size_t tasks = std::min(thread_count(), std::max<std::size_t>(1, max_tasks));
  if (tasks <= 1) {
    if (rows > 0) body(0, rows);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(tasks);
  workers.reserve(tasks - 1);
  const std::size_t chunk = (rows + tasks - 1) / tasks;
  auto run = [&](std::size_t t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(rows, begin + chunk);
    if (begin >= end) return;
    try {
      body(begin, end);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  for (std::size_t t = 1; t < tasks; ++t) workers.emplace_back(run, t);
  run(0);
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rankone
