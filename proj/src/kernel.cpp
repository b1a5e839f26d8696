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

#include "hlsdift/kernel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "hlsdift/error.hpp"
#include "json_util.hpp"
#include "json.hpp"

namespace hlsdift {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Diagnostic error_at(std::string location, std::string message) {
  return {Diagnostic::Severity::error, std::move(location), std::move(message)};
}

Diagnostic warning_at(std::string location, std::string message) {
  return {Diagnostic::Severity::warning, std::move(location),
          std::move(message)};
}

std::string in_quotes(std::string_view id) {
  return "'" + std::string(id) + "'";
}

// Reads one kernel document into a Kernel, recording structural problems as
// diagnostics. A thrown Abort means the rest of the document cannot be read.
class KernelReader {
 public:
  struct Abort {};

  explicit KernelReader(std::vector<Diagnostic>& diags) : diags_(diags) {}

  Kernel read(const json& doc) {
    Kernel k;
    if (!doc.is_object()) fail("", "kernel document must be a JSON object");
    check_keys(doc, "",
               {"name", "tag_width", "inputs", "constants", "memories",
                "nodes", "policies", "checkpoints", "outputs"});
    k.name = require_string(doc, "", "name");
    const Int tw = require_int(doc, "", "tag_width");
    if (tw < 1 || tw > kMaxTagWidth) {
      fail("/tag_width", "tag_width must be in [1, 32]");
    }
    k.tag_width = static_cast<unsigned>(tw);

    for_each_item(doc, "inputs", [&](const json& item, const std::string& at) {
      check_keys(item, at, {"id", "width", "signed", "default_tag"});
      InputDecl in;
      in.id = require_string(item, at, "id");
      in.type = read_type(item, at);
      in.default_tag = read_tag_bits(item, at, "default_tag", k.tag_width);
      k.inputs.push_back(std::move(in));
    });

    for_each_item(doc, "constants", [&](const json& item, const std::string& at) {
      check_keys(item, at, {"id", "width", "signed", "value"});
      const std::string id = require_string(item, at, "id");
      const BitType ty = read_type(item, at);
      const Int raw = require_int(item, at, "value");
      const BitValue v = make_bitvalue(ty, raw);
      if (to_int(v) != raw) {
        diags_.push_back(warning_at(
            "constant " + in_quotes(id),
            "value " + int_to_string(raw) + " wrapped to " +
                int_to_string(to_int(v)) + " in " + to_string(ty)));
      }
      k.constants.push_back({id, v});
    });

    for_each_item(doc, "memories", [&](const json& item, const std::string& at) {
      check_keys(item, at, {"id", "size", "width", "signed", "init", "init_tags"});
      MemoryDecl m;
      m.id = require_string(item, at, "id");
      const Int size = require_int(item, at, "size");
      if (size < 1 || size > (Int{1} << 24)) {
        fail(at + "/size", "memory size must be in [1, 2^24]");
      }
      m.size = static_cast<std::size_t>(size);
      m.cell = read_type(item, at);
      if (item.contains("init")) {
        m.init = read_int_array(item.at("init"), at + "/init");
      }
      if (item.contains("init_tags")) {
        for (Int t : read_int_array(item.at("init_tags"), at + "/init_tags")) {
          m.init_tags.push_back(checked_tag(t, at + "/init_tags", k.tag_width));
        }
      }
      k.memories.push_back(std::move(m));
    });

    for_each_item(doc, "nodes", [&](const json& item, const std::string& at) {
      check_keys(item, at, {"id", "op", "args", "width", "signed"});
      Node n;
      n.id = require_string(item, at, "id");
      const std::string op = require_string(item, at, "op");
      auto kind = parse_op(op);
      if (!kind) fail(at + "/op", "unknown op " + in_quotes(op));
      n.op = *kind;
      if (!item.contains("args") || !item.at("args").is_array()) {
        fail(at + "/args", "args must be an array of ids");
      }
      for (const auto& a : item.at("args")) {
        if (!a.is_string()) fail(at + "/args", "args must be an array of ids");
        n.args.push_back(a.get<std::string>());
      }
      if (item.contains("width")) {
        n.result = read_type(item, at);
      } else if (item.contains("signed")) {
        fail(at + "/signed", "'signed' given without 'width'");
      }
      k.nodes.push_back(std::move(n));
    });

    for_each_item(doc, "policies", [&](const json& item, const std::string& at) {
      check_keys(item, at, {"name", "kind", "mask"});
      Policy p;
      p.name = require_string(item, at, "name");
      const std::string kind = require_string(item, at, "kind");
      auto pk = parse_policy_kind(kind);
      if (!pk) fail(at + "/kind", "unknown policy kind " + in_quotes(kind));
      p.kind = *pk;
      if (p.kind == PolicyKind::deny_if_mask && !item.contains("mask")) {
        fail(at + "/mask", "deny_if_mask requires a mask");
      }
      const std::uint32_t mask = read_tag_bits(item, at, "mask", k.tag_width);
      p.mask = Tag(k.tag_width, p.kind == PolicyKind::deny_if_mask ? mask : 0);
      k.policies.push_back(std::move(p));
    });

    for_each_item(doc, "checkpoints", [&](const json& item, const std::string& at) {
      check_keys(item, at, {"id", "arg", "policy"});
      k.checkpoints.push_back({require_string(item, at, "id"),
                               require_string(item, at, "arg"),
                               require_string(item, at, "policy")});
    });

    for_each_item(doc, "outputs", [&](const json& item, const std::string& at) {
      check_keys(item, at, {"id", "source"});
      k.outputs.push_back(
          {require_string(item, at, "id"), require_string(item, at, "source")});
    });
    return k;
  }

 private:
  [[noreturn]] void fail(const std::string& at, std::string message) {
    diags_.push_back(error_at(at.empty() ? "/" : at, std::move(message)));
    throw Abort{};
  }

  void check_keys(const json& obj, const std::string& at,
                  std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) fail(at, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(at + "/" + key, "unknown key " + in_quotes(key));
      }
    }
  }

  template <typename Fn>
  void for_each_item(const json& doc, const std::string& key, Fn&& fn) {
    if (!doc.contains(key)) return;
    const json& arr = doc.at(key);
    if (!arr.is_array()) fail("/" + key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      fn(arr[i], "/" + key + "/" + std::to_string(i));
    }
  }

  std::string require_string(const json& obj, const std::string& at,
                             const std::string& key) {
    if (!obj.contains(key) || !obj.at(key).is_string()) {
      fail(at + "/" + key, "missing or non-string " + in_quotes(key));
    }
    return obj.at(key).get<std::string>();
  }

  Int read_int(const json& v, const std::string& at) {
    auto parsed = json_to_int(v);
    if (!parsed) fail(at, "expected an integer");
    return *parsed;
  }

  Int require_int(const json& obj, const std::string& at,
                  const std::string& key) {
    if (!obj.contains(key)) fail(at + "/" + key, "missing " + in_quotes(key));
    return read_int(obj.at(key), at + "/" + key);
  }

  std::vector<Int> read_int_array(const json& arr, const std::string& at) {
    if (!arr.is_array()) fail(at, "expected an array of integers");
    std::vector<Int> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(read_int(arr[i], at + "/" + std::to_string(i)));
    }
    return out;
  }

  BitType read_type(const json& obj, const std::string& at) {
    const Int width = require_int(obj, at, "width");
    bool is_signed = false;
    if (obj.contains("signed")) {
      if (!obj.at("signed").is_boolean()) fail(at + "/signed", "expected a boolean");
      is_signed = obj.at("signed").get<bool>();
    }
    if (width < 1 || width > kMaxValueWidth) {
      fail(at + "/width", "width must be in [1, 64]");
    }
    return BitType{static_cast<unsigned>(width), is_signed};
  }

  std::uint32_t checked_tag(Int t, const std::string& at, unsigned tag_width) {
    if (t < 0 || t > tag_mask(tag_width)) {
      fail(at, "tag " + int_to_string(t) + " does not fit in " +
                   std::to_string(tag_width) + " bits");
    }
    return static_cast<std::uint32_t>(t);
  }

  std::uint32_t read_tag_bits(const json& obj, const std::string& at,
                              const std::string& key, unsigned tag_width) {
    if (!obj.contains(key)) return 0;
    return checked_tag(read_int(obj.at(key), at + "/" + key), at + "/" + key,
                       tag_width);
  }

  std::vector<Diagnostic>& diags_;
};

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

ordered_json type_fields(ordered_json obj, BitType ty) {
  obj["width"] = ty.width;
  obj["signed"] = ty.is_signed;
  return obj;
}

}  // namespace

std::string to_string(const Diagnostic& d) {
  return std::string(d.severity == Diagnostic::Severity::error ? "error"
                                                               : "warning") +
         ": " + d.location + ": " + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::error;
  });
}

const InputDecl* Kernel::find_input(std::string_view id) const {
  for (const auto& in : inputs) {
    if (in.id == id) return &in;
  }
  return nullptr;
}

const ConstantDecl* Kernel::find_constant(std::string_view id) const {
  for (const auto& c : constants) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const MemoryDecl* Kernel::find_memory(std::string_view id) const {
  for (const auto& m : memories) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

const Node* Kernel::find_node(std::string_view id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::optional<BitType> Kernel::value_type(std::string_view id) const {
  if (const auto* in = find_input(id)) return in->type;
  if (const auto* c = find_constant(id)) return c->value.type();
  if (const auto* n = find_node(id)) return n->result;
  return std::nullopt;
}

ParseResult parse_kernel(std::string_view text) {
  ParseResult result;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    result.diagnostics.push_back(
        error_at("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)),
                 e.what()));
    return result;
  }

  Kernel k;
  try {
    k = KernelReader(result.diagnostics).read(doc);
  } catch (const KernelReader::Abort&) {
    return result;
  }
  for (auto& d : validate(k)) result.diagnostics.push_back(std::move(d));
  if (!has_errors(result.diagnostics)) result.kernel = std::move(k);
  return result;
}

std::vector<Diagnostic> validate(const Kernel& k) {
  std::vector<Diagnostic> diags;
  auto err = [&](std::string where, std::string msg) {
    diags.push_back(error_at(std::move(where), std::move(msg)));
  };

  if (k.tag_width < 1 || k.tag_width > kMaxTagWidth) {
    err("kernel", "tag_width must be in [1, 32]");
    return diags;
  }
  const std::uint32_t tmask = tag_mask(k.tag_width);

  // Every definition site, so forward references can be told apart from
  // undefined ones.
  std::set<std::string> declared;
  auto declare = [&](const std::string& id, const char* what) {
    if (!declared.insert(id).second) {
      err(std::string(what) + " " + in_quotes(id), "duplicate id " + in_quotes(id));
    }
  };

  std::set<std::string> values;    // usable as a value operand
  std::set<std::string> memories;  // usable as a memory operand
  std::set<std::string> stores;

  for (const auto& in : k.inputs) {
    declare(in.id, "input");
    if (!is_valid(in.type)) err("input " + in_quotes(in.id), "invalid width");
    if ((in.default_tag & ~tmask) != 0) {
      err("input " + in_quotes(in.id), "default_tag exceeds tag width");
    }
    values.insert(in.id);
  }
  for (const auto& c : k.constants) {
    declare(c.id, "constant");
    values.insert(c.id);
  }
  for (const auto& m : k.memories) {
    declare(m.id, "memory");
    const std::string at = "memory " + in_quotes(m.id);
    if (m.size == 0) err(at, "size must be at least 1");
    if (!is_valid(m.cell)) err(at, "invalid cell width");
    if (!m.init.empty() && m.init.size() != m.size) {
      err(at, "init has " + std::to_string(m.init.size()) +
                  " entries, memory has " + std::to_string(m.size) + " cells");
    }
    if (!m.init_tags.empty() && m.init_tags.size() != m.size) {
      err(at, "init_tags has " + std::to_string(m.init_tags.size()) +
                  " entries, memory has " + std::to_string(m.size) + " cells");
    }
    for (auto t : m.init_tags) {
      if ((t & ~tmask) != 0) err(at, "init tag exceeds tag width");
    }
    memories.insert(m.id);
  }
  std::set<std::string> node_ids;
  for (const auto& n : k.nodes) node_ids.insert(n.id);

  for (const auto& n : k.nodes) {
    const std::string at = "node " + in_quotes(n.id);
    declare(n.id, "node");
    const std::string op(op_name(n.op));

    if (n.args.size() != op_arity(n.op)) {
      err(at, op + " takes " + std::to_string(op_arity(n.op)) +
                  " arguments, got " + std::to_string(n.args.size()));
    }
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      const std::string& a = n.args[i];
      const bool wants_memory = is_memory_op(n.op) && i == 0;
      if (wants_memory) {
        if (memories.count(a) == 0) {
          err(at, "argument " + std::to_string(i) + " of " + op +
                      " must name a memory, got " + in_quotes(a));
        }
        continue;
      }
      if (values.count(a) != 0) continue;
      if (memories.count(a) != 0) {
        err(at, "memory " + in_quotes(a) + " used as a value");
      } else if (stores.count(a) != 0) {
        err(at, "store " + in_quotes(a) + " produces no value");
      } else if (node_ids.count(a) != 0) {
        err(at, "uses " + in_quotes(a) + " before its definition");
      } else {
        err(at, "undefined id " + in_quotes(a));
      }
    }

    if (n.op == OpKind::store) {
      if (n.result) err(at, "store must not declare a result type");
    } else if (!n.result) {
      err(at, op + " needs a result width");
    } else if (!is_valid(*n.result)) {
      err(at, "invalid result width");
    } else if (is_comparison(n.op) && *n.result != kBoolType) {
      err(at, op + " must produce an unsigned 1-bit result");
    }
    if (is_memory_op(n.op) && n.args.size() >= 2) {
      if (auto ty = k.value_type(n.args[1]); ty && ty->width > kMaxValueWidth) {
        err(at, "address wider than 64 bits");
      }
    }

    if (n.op == OpKind::store) {
      stores.insert(n.id);
    } else {
      values.insert(n.id);
    }
  }

  std::set<std::string> policy_names;
  for (const auto& p : k.policies) {
    const std::string at = "policy " + in_quotes(p.name);
    if (!policy_names.insert(p.name).second) {
      err(at, "duplicate policy name");
    }
    if (p.mask.width() != k.tag_width) err(at, "mask width != tag_width");
  }

  std::set<std::string> checkpoint_ids;
  for (const auto& c : k.checkpoints) {
    const std::string at = "checkpoint " + in_quotes(c.id);
    if (!checkpoint_ids.insert(c.id).second) err(at, "duplicate checkpoint id");
    if (values.count(c.arg) == 0) {
      err(at, "argument " + in_quotes(c.arg) + " is not a defined value");
    }
    if (policy_names.count(c.policy) == 0) {
      err(at, "unknown policy " + in_quotes(c.policy));
    }
  }

  std::set<std::string> output_ids;
  for (const auto& o : k.outputs) {
    const std::string at = "output " + in_quotes(o.id);
    if (!output_ids.insert(o.id).second) err(at, "duplicate output id");
    if (values.count(o.source) == 0) {
      err(at, "source " + in_quotes(o.source) + " is not a defined value");
    }
  }
  return diags;
}

std::string kernel_to_json(const Kernel& k) {
  ordered_json doc;
  doc["name"] = k.name;
  doc["tag_width"] = k.tag_width;

  doc["inputs"] = ordered_json::array();
  for (const auto& in : k.inputs) {
    ordered_json item;
    item["id"] = in.id;
    item = type_fields(std::move(item), in.type);
    item["default_tag"] = in.default_tag;
    doc["inputs"].push_back(std::move(item));
  }
  doc["constants"] = ordered_json::array();
  for (const auto& c : k.constants) {
    ordered_json item;
    item["id"] = c.id;
    item = type_fields(std::move(item), c.value.type());
    item["value"] = int_to_json(to_int(c.value));
    doc["constants"].push_back(std::move(item));
  }
  doc["memories"] = ordered_json::array();
  for (const auto& m : k.memories) {
    ordered_json item;
    item["id"] = m.id;
    item["size"] = m.size;
    item = type_fields(std::move(item), m.cell);
    if (!m.init.empty()) {
      item["init"] = ordered_json::array();
      for (Int v : m.init) item["init"].push_back(int_to_json(v));
    }
    if (!m.init_tags.empty()) item["init_tags"] = m.init_tags;
    doc["memories"].push_back(std::move(item));
  }
  doc["nodes"] = ordered_json::array();
  for (const auto& n : k.nodes) {
    ordered_json item;
    item["id"] = n.id;
    item["op"] = std::string(op_name(n.op));
    item["args"] = n.args;
    if (n.result) item = type_fields(std::move(item), *n.result);
    doc["nodes"].push_back(std::move(item));
  }
  doc["policies"] = ordered_json::array();
  for (const auto& p : k.policies) {
    ordered_json item;
    item["name"] = p.name;
    item["kind"] = std::string(policy_kind_name(p.kind));
    if (p.kind == PolicyKind::deny_if_mask) item["mask"] = p.mask.bits();
    doc["policies"].push_back(std::move(item));
  }
  doc["checkpoints"] = ordered_json::array();
  for (const auto& c : k.checkpoints) {
    doc["checkpoints"].push_back(
        ordered_json{{"id", c.id}, {"arg", c.arg}, {"policy", c.policy}});
  }
  doc["outputs"] = ordered_json::array();
  for (const auto& o : k.outputs) {
    doc["outputs"].push_back(ordered_json{{"id", o.id}, {"source", o.source}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace hlsdift
