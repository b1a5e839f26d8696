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

#include "hlsdift/graph.hpp"

#include <algorithm>
#include <sstream>

namespace hlsdift {

namespace {

std::string tag_id(const std::string& value_id) { return "tag:" + value_id; }
std::string output_vertex_id(const std::string& id) { return "out:" + id; }

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string_view kind_name(VertexKind kind) {
  switch (kind) {
    case VertexKind::input: return "input";
    case VertexKind::constant: return "constant";
    case VertexKind::memory: return "memory";
    case VertexKind::op: return "op";
    case VertexKind::output: return "output";
    case VertexKind::tag_source: return "tag_source";
    case VertexKind::tag_op: return "tag_op";
    case VertexKind::tag_output: return "tag_output";
    case VertexKind::monitor: return "monitor";
  }
  return "?";
}

std::string_view edge_kind_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::value: return "value";
    case EdgeKind::tag: return "tag";
    case EdgeKind::monitor: return "monitor";
  }
  return "?";
}

std::string vertex_attrs(const Vertex& v) {
  switch (v.kind) {
    case VertexKind::input: return "shape=invhouse";
    case VertexKind::constant: return "shape=plaintext";
    case VertexKind::memory: return "shape=box3d";
    case VertexKind::op: return "shape=ellipse";
    case VertexKind::output: return "shape=house";
    case VertexKind::tag_source:
    case VertexKind::tag_output:
      return "shape=note, color=red, fontcolor=red";
    case VertexKind::tag_op: return "shape=diamond, color=red, fontcolor=red";
    case VertexKind::monitor: return "shape=box, peripheries=2, style=bold";
  }
  return "";
}

std::string edge_attrs(const Edge& e) {
  std::string attrs;
  switch (e.kind) {
    case EdgeKind::value: attrs = "style=solid"; break;
    case EdgeKind::tag: attrs = "style=dashed, color=red"; break;
    case EdgeKind::monitor: attrs = "style=dashed, color=red, penwidth=2"; break;
  }
  if (!e.label.empty()) attrs += ", label=\"" + dot_escape(e.label) + "\"";
  return attrs;
}

}  // namespace

bool is_tag_vertex(VertexKind kind) {
  return kind == VertexKind::tag_source || kind == VertexKind::tag_op ||
         kind == VertexKind::tag_output || kind == VertexKind::monitor;
}

std::size_t DataflowGraph::count(VertexKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      vertices.begin(), vertices.end(),
      [&](const Vertex& v) { return v.kind == kind; }));
}

std::size_t DataflowGraph::in_degree(const std::string& id,
                                     EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const Edge& e) {
        return e.to == id && e.kind == kind;
      }));
}

DataflowGraph value_graph(const Kernel& k) {
  DataflowGraph g;
  g.name = k.name;
  for (const auto& in : k.inputs) {
    g.vertices.push_back(
        {in.id, VertexKind::input, in.id + "\n" + to_string(in.type), ""});
  }
  for (const auto& c : k.constants) {
    g.vertices.push_back({c.id, VertexKind::constant,
                          c.id + " = " + int_to_string(to_int(c.value)), ""});
  }
  for (const auto& m : k.memories) {
    g.vertices.push_back({m.id, VertexKind::memory,
                          m.id + "[" + std::to_string(m.size) + "]\n" +
                              to_string(m.cell),
                          ""});
  }
  for (const auto& n : k.nodes) {
    std::string label = n.id + "\n" + std::string(op_name(n.op));
    if (n.result) label += " " + to_string(*n.result);
    g.vertices.push_back({n.id, VertexKind::op, label, ""});
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      g.edges.push_back({n.args[i], n.id, EdgeKind::value, std::to_string(i)});
    }
  }
  for (const auto& o : k.outputs) {
    const std::string vid = output_vertex_id(o.id);
    g.vertices.push_back({vid, VertexKind::output, o.id, ""});
    g.edges.push_back({o.source, vid, EdgeKind::value, ""});
  }
  return g;
}

DataflowGraph instrument(const Kernel& k, const DiftConfig& cfg) {
  DataflowGraph g = value_graph(k);
  const std::string rule =
      cfg.mode.is_coarse() ? "boundary" : std::string(rule_name(cfg.mode.rule()));

  for (const auto& in : k.inputs) {
    g.vertices.push_back({tag_id(in.id), VertexKind::tag_source,
                          "tag " + in.id + " = " + std::to_string(in.default_tag),
                          in.id});
  }
  for (const auto& c : k.constants) {
    g.vertices.push_back(
        {tag_id(c.id), VertexKind::tag_source, "tag " + c.id + " = 0", c.id});
  }
  for (const auto& m : k.memories) {
    g.vertices.push_back(
        {tag_id(m.id), VertexKind::tag_source, "tags " + m.id, m.id});
  }
  for (const auto& n : k.nodes) {
    g.vertices.push_back({tag_id(n.id), VertexKind::tag_op,
                          "tag " + n.id + "\n" + std::string(op_name(n.op)) +
                              " (" + rule + ")",
                          n.id});
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      g.edges.push_back(
          {tag_id(n.args[i]), tag_id(n.id), EdgeKind::tag, ""});
    }
  }
  for (const auto& o : k.outputs) {
    const std::string vid = output_vertex_id(o.id);
    g.vertices.push_back(
        {tag_id(vid), VertexKind::tag_output, "tag " + o.id, vid});
    g.edges.push_back({tag_id(o.source), tag_id(vid), EdgeKind::tag, ""});
  }

  g.vertices.push_back({"monitor", VertexKind::monitor, "monitor", ""});
  for (const auto& c : k.checkpoints) {
    g.edges.push_back({tag_id(c.arg), "monitor", EdgeKind::monitor,
                       c.id + ": " + c.policy});
  }
  return g;
}

DataflowGraph strip_tags(const DataflowGraph& g) {
  DataflowGraph out;
  out.name = g.name;
  for (const auto& v : g.vertices) {
    if (!is_tag_vertex(v.kind)) out.vertices.push_back(v);
  }
  for (const auto& e : g.edges) {
    if (e.kind == EdgeKind::value) out.edges.push_back(e);
  }
  return out;
}

std::string canonical_form(const DataflowGraph& g) {
  std::ostringstream os;
  os << "graph " << g.name << "\n";
  for (const auto& v : g.vertices) {
    os << "v " << kind_name(v.kind) << " " << v.id << " [" << dot_escape(v.label) << "]";
    if (!v.shadows.empty()) os << " shadows " << v.shadows;
    os << "\n";
  }
  for (const auto& e : g.edges) {
    os << "e " << edge_kind_name(e.kind) << " " << e.from << " -> " << e.to
       << " [" << e.label << "]\n";
  }
  return os.str();
}

std::string emit_dot(const DataflowGraph& g) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(g.name) << "\" {\n";
  os << "  rankdir=TB;\n";
  os << "  node [fontname=\"monospace\"];\n";
  for (const auto& v : g.vertices) {
    os << "  \"" << dot_escape(v.id) << "\" [" << vertex_attrs(v)
       << ", label=\"" << dot_escape(v.label) << "\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  \"" << dot_escape(e.from) << "\" -> \"" << dot_escape(e.to)
       << "\" [" << edge_attrs(e) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_dot(const Kernel& k) { return emit_dot(value_graph(k)); }

}  // namespace hlsdift
