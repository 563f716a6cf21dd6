// Copyright 2026 The sheetlaw Authors.
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

namespace sheetlaw {

// Worker count for OpenMP regions. SHEETLAW_THREADS overrides the OpenMP
// default. Results are bit-identical for any worker count: parallel loops
// write per-index slots and reductions run in a fixed serial order.
int worker_count();

}  // namespace sheetlaw
