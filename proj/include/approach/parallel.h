// Copyright 2026 The Approach Authors. All rights reserved.
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

#ifndef APPROACH_PARALLEL_H_
#define APPROACH_PARALLEL_H_

#include <functional>

namespace approach {

// std::thread::hardware_concurrency(), at least 1.
int DefaultThreads();

// Splits [0, n) into at most `threads` contiguous chunks and runs
// body(begin, end) on each, one thread per chunk. The first exception thrown
// by any chunk is rethrown after all threads join. threads <= 0 means
// DefaultThreads().
void ParallelFor(int n, int threads, const std::function<void(int, int)>& body);

}  // namespace approach

#endif  // APPROACH_PARALLEL_H_
