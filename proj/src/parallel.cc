// Copyright 2026 The AML Authors.
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

#include "aml/parallel.h"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace aml {
namespace {
int g_default_threads = -1;
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (g_default_threads < 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : g_default_threads);
}

void configure_threads_from_env() {
  const char* value = std::getenv("AML_THREADS");
  if (value == nullptr) return;
  try {
    set_threads(std::stoi(value));
  } catch (const std::exception&) {
    // Malformed values fall back to the runtime default.
    set_threads(0);
  }
}

}  // namespace aml
