// Copyright 2026 The dpts Authors. All Rights Reserved.
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


#ifndef DPTS_PARALLEL_H_
#define DPTS_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace dpts {

// Worker count: DPTS_THREADS if set and positive, else the hardware
// concurrency (at least 1).
int WorkerCount();

// Calls body(begin, end) over contiguous chunks of [0, n). Chunks are
// disjoint, so bodies writing only to their own indices need no locking.
void ParallelFor(size_t n, const std::function<void(size_t, size_t)>& body);

}  // namespace dpts

#endif  // DPTS_PARALLEL_H_
