// Copyright 2026 The hlsdift Authors
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

#ifndef HLSDIFT_PASSES_HPP
#define HLSDIFT_PASSES_HPP

#include <vector>

#include "hlsdift/kernel.hpp"

namespace hlsdift {

/// Replaces every non-memory node whose arguments are all constants with a
/// constant of the same id, cascading forward in one sweep. References and
/// checkpoint arguments keep pointing at that id. A node that would divide by
/// zero is left in place and reported as a warning.
Kernel const_fold(const Kernel& k, std::vector<Diagnostic>* diagnostics = nullptr);

/// Drops nodes that do not reach an output, a checkpoint, or a store.
/// Checkpoints, stores, memories, inputs and constants are always kept.
Kernel dead_code_elim(const Kernel& k);

/// dead_code_elim(const_fold(k)).
Kernel optimize(const Kernel& k, std::vector<Diagnostic>* diagnostics = nullptr);

}  // namespace hlsdift

#endif  // HLSDIFT_PASSES_HPP
