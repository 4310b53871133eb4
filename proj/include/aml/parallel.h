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

#ifndef AML_PARALLEL_H_
#define AML_PARALLEL_H_

namespace aml {

// Number of worker threads used by the OpenMP kernels.
int max_threads();

// n <= 0 restores the runtime default.
void set_threads(int n);

// Reads AML_THREADS (0 or unset = auto) and applies it.
void configure_threads_from_env();

}  // namespace aml

#endif  // AML_PARALLEL_H_
