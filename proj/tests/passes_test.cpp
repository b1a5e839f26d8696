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

#include "hlsdift/passes.hpp"

#include <gtest/gtest.h>

#include <random>

#include "hlsdift/simulator.hpp"
#include "test_util.hpp"

namespace hlsdift {
namespace {

using testing_util::data_path;
using testing_util::load_fixture;
using testing_util::load_kernel;
using testing_util::parse_or_throw;

std::vector<std::pair<std::string, std::string>> exception_sites(
    const SimulationReport& r) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : r.exceptions) out.emplace_back(e.checkpoint_id, e.node_id);
  return out;
}

const ConstantDecl* find_constant(const Kernel& k, const std::string& id) {
  return k.find_constant(id);
}

TEST(ConstFoldTest, FoldsConstantProduct) {
  const Kernel k = parse_or_throw(R"({"name": "k", "tag_width": 1,
      "inputs": [{"id": "x", "width": 8, "signed": false}],
      "constants": [{"id": "a", "width": 8, "signed": false, "value": 3},
                    {"id": "b", "width": 8, "signed": false, "value": 4}],
      "nodes": [{"id": "m", "op": "mul", "args": ["a", "b"], "width": 8, "signed": false},
                {"id": "s", "op": "add", "args": ["x", "m"], "width": 8, "signed": false}],
      "outputs": [{"id": "o", "source": "s"}]})");
  const Kernel f = const_fold(k);
  ASSERT_NE(find_constant(f, "m"), nullptr);
  EXPECT_EQ(to_int(find_constant(f, "m")->value), 12);
  EXPECT_EQ(f.find_node("m"), nullptr);
  ASSERT_NE(f.find_node("s"), nullptr);
  EXPECT_EQ(*f.find_node("s"), *k.find_node("s"));
}

TEST(ConstFoldTest, LeavesInputDependentNodes) {
  const Kernel k = load_fixture("fir4.json");
  EXPECT_EQ(const_fold(k), k);
}

TEST(ConstFoldTest, CascadesThroughChains) {
  const Kernel k = load_kernel(data_path("fold_checkpoint.json"));
  const Kernel f = const_fold(k);
  ASSERT_NE(find_constant(f, "r"), nullptr);
  EXPECT_EQ(to_int(find_constant(f, "r")->value), 96);  // (3*4) << 3
  EXPECT_EQ(f.nodes.size(), 2U);
}

TEST(ConstFoldTest, DivisionByZeroIsReportedNotFolded) {
  const Kernel k = parse_or_throw(R"({"name": "k", "tag_width": 1,
      "constants": [{"id": "a", "width": 8, "signed": false, "value": 3},
                    {"id": "z", "width": 8, "signed": false, "value": 0}],
      "nodes": [{"id": "d", "op": "div", "args": ["a", "z"], "width": 8, "signed": false}],
      "outputs": [{"id": "o", "source": "d"}]})");
  std::vector<Diagnostic> diags;
  const Kernel f = const_fold(k, &diags);
  EXPECT_NE(f.find_node("d"), nullptr);
  ASSERT_EQ(diags.size(), 1U);
  EXPECT_EQ(diags[0].severity, Diagnostic::Severity::warning);
  EXPECT_EQ(diags[0].location, "node 'd'");
}

TEST(ConstFoldTest, PreservesExceptionSequence) {
  const Kernel k = load_kernel(data_path("fold_checkpoint.json"));
  const Kernel f = const_fold(k);
  std::mt19937_64 rng(8);
  DiftConfig cfg;
  cfg.tag_width = k.tag_width;
  for (int i = 0; i < 100; ++i) {
    const RunInputs in = random_inputs(k, rng);
    const SimulationReport a = run_dift(k, in, cfg);
    const SimulationReport b = run_dift(f, in, cfg);
    EXPECT_EQ(exception_sites(a), exception_sites(b));
    EXPECT_EQ(a.outputs, b.outputs);
  }
}

TEST(PassesTest, Idempotent) {
  for (const char* name : {"fir4.json", "dot8.json", "overflow_demo.json"}) {
    const Kernel k = load_fixture(name);
    const Kernel f = const_fold(k);
    EXPECT_EQ(const_fold(f), f) << name;
    const Kernel d = dead_code_elim(k);
    EXPECT_EQ(dead_code_elim(d), d) << name;
    const Kernel o = optimize(k);
    EXPECT_EQ(optimize(o), o) << name;
  }
}

TEST(DeadCodeTest, DropsUnusedNodesOnly) {
  const Kernel k = load_kernel(data_path("dce2.json"));
  const Kernel d = dead_code_elim(k);
  EXPECT_EQ(d.nodes.size(), k.nodes.size() - 2);
  EXPECT_EQ(d.find_node("d1"), nullptr);
  EXPECT_EQ(d.find_node("d2"), nullptr);
  EXPECT_NE(d.find_node("g"), nullptr);  // only feeds a checkpoint

  std::mt19937_64 rng(4);
  DiftConfig cfg;
  for (int i = 0; i < 100; ++i) {
    const RunInputs in = random_inputs(k, rng);
    EXPECT_EQ(run_baseline(k, in), run_baseline(d, in));
    const SimulationReport a = run_dift(k, in, cfg);
    const SimulationReport b = run_dift(d, in, cfg);
    EXPECT_EQ(a.outputs, b.outputs);
    EXPECT_EQ(exception_sites(a), exception_sites(b));
  }
}

TEST(DeadCodeTest, KeepsStores) {
  const Kernel k = load_fixture("overflow_demo.json");
  EXPECT_NE(dead_code_elim(k).find_node("st"), nullptr);
}

TEST(DeadCodeTest, RemovesDotProductDeadNode) {
  const Kernel k = load_fixture("dot8.json");
  const Kernel o = optimize(k);
  EXPECT_EQ(o.find_node("unused"), nullptr);
  EXPECT_EQ(o.find_node("bias"), nullptr);
  EXPECT_NE(o.find_constant("bias"), nullptr);
}

}  // namespace
}  // namespace hlsdift
