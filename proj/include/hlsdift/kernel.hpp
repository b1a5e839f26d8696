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

#ifndef HLSDIFT_KERNEL_HPP
#define HLSDIFT_KERNEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlsdift/bitvalue.hpp"
#include "hlsdift/monitor.hpp"

namespace hlsdift {

struct Diagnostic {
  enum class Severity { error, warning };

  Severity severity = Severity::error;
  std::string location;  // "line 3", "node 'n2'", "/nodes/1/op", ...
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string to_string(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diags);

struct InputDecl {
  std::string id;
  BitType type;
  std::uint32_t default_tag = 0;

  friend bool operator==(const InputDecl&, const InputDecl&) = default;
};

struct ConstantDecl {
  std::string id;
  BitValue value;

  friend bool operator==(const ConstantDecl&, const ConstantDecl&) = default;
};

struct MemoryDecl {
  std::string id;
  std::size_t size = 0;
  BitType cell;
  std::vector<Int> init;                // empty: all zero
  std::vector<std::uint32_t> init_tags;  // empty: all untainted

  friend bool operator==(const MemoryDecl&, const MemoryDecl&) = default;
};

/// One operation. Argument shapes: load [memory, address];
/// store [memory, address, value]; mux [sel, t, f]. Stores have no result.
struct Node {
  std::string id;
  OpKind op = OpKind::add;
  std::vector<std::string> args;
  std::optional<BitType> result;

  friend bool operator==(const Node&, const Node&) = default;
};

/// A dift_monitor(x) call site.
struct CheckpointDecl {
  std::string id;
  std::string arg;
  std::string policy;

  friend bool operator==(const CheckpointDecl&, const CheckpointDecl&) = default;
};

struct OutputDecl {
  std::string id;
  std::string source;

  friend bool operator==(const OutputDecl&, const OutputDecl&) = default;
};

/// Straight-line dataflow description of an accelerator. Nodes execute in
/// list order and may only refer to inputs, constants, memories, and earlier
/// nodes.
struct Kernel {
  std::string name;
  unsigned tag_width = 1;
  std::vector<InputDecl> inputs;
  std::vector<ConstantDecl> constants;
  std::vector<MemoryDecl> memories;
  std::vector<Node> nodes;
  std::vector<Policy> policies;
  std::vector<CheckpointDecl> checkpoints;
  std::vector<OutputDecl> outputs;

  const InputDecl* find_input(std::string_view id) const;
  const ConstantDecl* find_constant(std::string_view id) const;
  const MemoryDecl* find_memory(std::string_view id) const;
  const Node* find_node(std::string_view id) const;
  /// Type of a value-producing id (input, constant, non-store node).
  std::optional<BitType> value_type(std::string_view id) const;

  friend bool operator==(const Kernel&, const Kernel&) = default;
};

struct ParseResult {
  std::optional<Kernel> kernel;  // set only when there are no errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return kernel.has_value(); }
};

/// Parses and validates a kernel JSON document. Syntax errors are located by
/// line, structural ones by JSON pointer, semantic ones by id.
ParseResult parse_kernel(std::string_view text);

/// Every kernel invariant: unique ids, define-before-use, arity, operand kinds,
/// comparison/store result types, tag and memory shapes, known policies.
std::vector<Diagnostic> validate(const Kernel& k);

/// Canonical JSON rendering in the kernel file format; parse_kernel reads it
/// back to an equal Kernel.
std::string kernel_to_json(const Kernel& k);

}  // namespace hlsdift

#endif  // HLSDIFT_KERNEL_HPP
