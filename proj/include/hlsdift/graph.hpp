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

#ifndef HLSDIFT_GRAPH_HPP
#define HLSDIFT_GRAPH_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hlsdift/kernel.hpp"
#include "hlsdift/tainted.hpp"

namespace hlsdift {

enum class VertexKind {
  input,
  constant,
  memory,
  op,
  output,
  tag_source,  // tag wire origin of an input, constant or memory
  tag_op,      // propagation logic paired with one op vertex
  tag_output,
  monitor,
};

bool is_tag_vertex(VertexKind kind);

struct Vertex {
  std::string id;
  VertexKind kind = VertexKind::op;
  std::string label;
  std::string shadows;  // value vertex a tag vertex belongs to

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class EdgeKind { value, tag, monitor };

struct Edge {
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::value;
  std::string label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Vertex ids: value vertices use the kernel id, outputs "out:<id>", tag
/// vertices "tag:<value vertex id>", and the single monitor "monitor".
struct DataflowGraph {
  std::string name;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  std::size_t count(VertexKind kind) const;
  std::size_t in_degree(const std::string& id, EdgeKind kind) const;

  friend bool operator==(const DataflowGraph&, const DataflowGraph&) = default;
};

/// The kernel as an uninstrumented accelerator datapath.
DataflowGraph value_graph(const Kernel& k);

/// Adds a tag vertex for every value vertex, wires tags along every value
/// edge, and feeds each checkpoint's tag into one monitor vertex. The value
/// sub-graph is left untouched.
DataflowGraph instrument(const Kernel& k, const DiftConfig& cfg);

/// Removes tag and monitor vertices together with their edges.
DataflowGraph strip_tags(const DataflowGraph& g);

/// Line-oriented text rendering used for structural comparisons.
std::string canonical_form(const DataflowGraph& g);

/// Deterministic Graphviz text: value edges solid, tag edges dashed, monitor
/// double-outlined.
std::string emit_dot(const DataflowGraph& g);
std::string emit_dot(const Kernel& k);

}  // namespace hlsdift

#endif  // HLSDIFT_GRAPH_HPP
