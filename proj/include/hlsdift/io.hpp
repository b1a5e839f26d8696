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

#ifndef HLSDIFT_IO_HPP
#define HLSDIFT_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "hlsdift/simulator.hpp"

namespace hlsdift {

/// Inputs file: {"values": {id: int}, "tags": {id: int},
///               "memory": {id: [int]}, "memory_tags": {id: [int]}}.
/// All keys optional; anything else is rejected with Error(InvalidInputs).
RunInputs parse_inputs(std::string_view text);
std::string inputs_to_json(const RunInputs& in);

/// Report file with fixed field order:
/// {outputs: {id: {value, tag}}, exceptions: [{checkpoint, node, tag, step,
///  policy}], irq, steps, mode, rule}.
std::string report_to_json(const SimulationReport& report);

/// Expectation file: {"cases": [{"mode": "fine"|"coarse", "rule": ...,
///  "inputs": {...}, "outputs": {id: {value, tag}}, "exceptions": n?}]}.
/// Output order follows the kernel's declaration order.
std::vector<ExpectedRun> parse_expectations(std::string_view text,
                                            const Kernel& k);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace hlsdift

#endif  // HLSDIFT_IO_HPP
