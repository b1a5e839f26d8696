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

#include "hlsdift/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hlsdift/error.hpp"
#include "json.hpp"
#include "json_util.hpp"

namespace hlsdift {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& message) {
  throw Error(ErrorKind::InvalidInputs, message);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line =
        1 + std::count(text.begin(),
                       text.begin() + static_cast<std::ptrdiff_t>(
                                          byte == 0 ? 0 : byte - 1),
                       '\n');
    bad("line " + std::to_string(line) + ": " + e.what());
  }
}

void only_keys(const json& obj, std::initializer_list<std::string_view> keys,
               const std::string& where) {
  if (!obj.is_object()) bad(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      bad(where + ": unknown key '" + key + "'");
    }
  }
}

Int int_at(const json& v, const std::string& where) {
  auto parsed = json_to_int(v);
  if (!parsed) bad(where + ": expected an integer");
  return *parsed;
}

std::uint32_t tag_at(const json& v, const std::string& where) {
  const Int t = int_at(v, where);
  if (t < 0 || t > 0xffffffff) bad(where + ": tag out of range");
  return static_cast<std::uint32_t>(t);
}

RunInputs inputs_from(const json& doc, const std::string& where) {
  only_keys(doc, {"values", "tags", "memory", "memory_tags"}, where);
  RunInputs in;
  auto object_at = [&](const char* key) -> const json* {
    if (!doc.contains(key)) return nullptr;
    const json& obj = doc.at(key);
    if (!obj.is_object()) bad(where + "/" + key + ": expected an object");
    return &obj;
  };
  if (const json* values = object_at("values")) {
    for (const auto& [id, v] : values->items()) {
      in.values[id] = int_at(v, where + "/values/" + id);
    }
  }
  if (const json* tags = object_at("tags")) {
    for (const auto& [id, v] : tags->items()) {
      in.tags[id] = tag_at(v, where + "/tags/" + id);
    }
  }
  if (const json* memory = object_at("memory")) {
    for (const auto& [id, cells] : memory->items()) {
      if (!cells.is_array()) bad(where + "/memory/" + id + ": expected an array");
      for (const auto& c : cells) {
        in.memory[id].push_back(int_at(c, where + "/memory/" + id));
      }
    }
  }
  if (const json* memory_tags = object_at("memory_tags")) {
    for (const auto& [id, cells] : memory_tags->items()) {
      if (!cells.is_array()) {
        bad(where + "/memory_tags/" + id + ": expected an array");
      }
      for (const auto& c : cells) {
        in.memory_tags[id].push_back(tag_at(c, where + "/memory_tags/" + id));
      }
    }
  }
  return in;
}

}  // namespace

RunInputs parse_inputs(std::string_view text) {
  return inputs_from(parse_document(text), "inputs");
}

std::string inputs_to_json(const RunInputs& in) {
  ordered_json doc;
  doc["values"] = ordered_json::object();
  for (const auto& [id, v] : in.values) doc["values"][id] = int_to_json(v);
  doc["tags"] = ordered_json::object();
  for (const auto& [id, t] : in.tags) doc["tags"][id] = t;
  if (!in.memory.empty()) {
    doc["memory"] = ordered_json::object();
    for (const auto& [id, cells] : in.memory) {
      ordered_json arr = ordered_json::array();
      for (Int c : cells) arr.push_back(int_to_json(c));
      doc["memory"][id] = std::move(arr);
    }
  }
  if (!in.memory_tags.empty()) {
    doc["memory_tags"] = ordered_json::object();
    for (const auto& [id, tags] : in.memory_tags) doc["memory_tags"][id] = tags;
  }
  return doc.dump(2) + "\n";
}

std::string report_to_json(const SimulationReport& report) {
  ordered_json doc;
  doc["outputs"] = ordered_json::object();
  for (const auto& o : report.outputs) {
    ordered_json entry;
    entry["value"] = o.value;
    entry["tag"] = o.tag;
    doc["outputs"][o.id] = std::move(entry);
  }
  doc["exceptions"] = ordered_json::array();
  for (const auto& e : report.exceptions) {
    ordered_json entry;
    entry["checkpoint"] = e.checkpoint_id;
    entry["node"] = e.node_id;
    entry["tag"] = e.tag_bits;
    entry["step"] = e.step;
    entry["policy"] = e.policy_name;
    doc["exceptions"].push_back(std::move(entry));
  }
  doc["irq"] = report.irq;
  doc["steps"] = report.steps_executed;
  doc["mode"] = std::string(report.mode.mode_name());
  doc["rule"] = std::string(report.mode.rule_label());
  return doc.dump(2) + "\n";
}

std::vector<ExpectedRun> parse_expectations(std::string_view text,
                                            const Kernel& k) {
  const json doc = parse_document(text);
  only_keys(doc, {"cases"}, "expectations");
  if (!doc.contains("cases") || !doc["cases"].is_array()) {
    bad("expectations: 'cases' must be an array");
  }
  std::vector<ExpectedRun> out;
  for (std::size_t i = 0; i < doc["cases"].size(); ++i) {
    const json& c = doc["cases"][i];
    const std::string where = "cases/" + std::to_string(i);
    only_keys(c, {"mode", "rule", "inputs", "outputs", "exceptions"}, where);

    ExpectedRun run;
    const std::string mode = c.value("mode", std::string("fine"));
    if (mode == "coarse") {
      run.mode = DiftMode::coarse();
    } else if (mode == "fine") {
      auto rule = parse_rule(c.value("rule", std::string("union")));
      if (!rule) bad(where + ": unknown rule");
      run.mode = DiftMode::fine(*rule);
    } else {
      bad(where + ": unknown mode '" + mode + "'");
    }
    if (c.contains("inputs")) run.inputs = inputs_from(c["inputs"], where + "/inputs");
    if (!c.contains("outputs") || !c["outputs"].is_object()) {
      bad(where + ": 'outputs' must be an object");
    }
    for (const auto& o : k.outputs) {
      if (!c["outputs"].contains(o.id)) bad(where + ": missing output '" + o.id + "'");
      const json& entry = c["outputs"][o.id];
      only_keys(entry, {"value", "tag"}, where + "/outputs/" + o.id);
      const Int value = int_at(entry.at("value"), where + "/outputs/" + o.id);
      if (value < 0) bad(where + ": output values are bit patterns");
      run.outputs.push_back({o.id, static_cast<std::uint64_t>(value),
                             tag_at(entry.at("tag"), where)});
    }
    if (c.contains("exceptions")) {
      run.exception_count =
          static_cast<std::size_t>(int_at(c["exceptions"], where + "/exceptions"));
    }
    out.push_back(std::move(run));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << contents;
}

}  // namespace hlsdift
