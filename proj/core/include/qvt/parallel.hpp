// Copyright 2026 The qvtlab Authors
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

namespace qvt {

/// Worker count: QVT_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Run body(i) for i in [0, n) on up to thread_count() threads. Work is split
/// into contiguous chunks, so results depend only on i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qvt
