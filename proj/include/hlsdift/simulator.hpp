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

#ifndef HLSDIFT_SIMULATOR_HPP
#define HLSDIFT_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hlsdift/kernel.hpp"
#include "hlsdift/monitor.hpp"
#include "hlsdift/tainted.hpp"

namespace hlsdift {

/// Stimulus for one run. Values are wrapped into the input's type; tags
/// override default_tag; memory entries replace a memory's initial contents
/// or tags wholesale.
struct RunInputs {
  std::map<std::string, Int> values;
  std::map<std::string, std::uint32_t> tags;
  std::map<std::string, std::vector<Int>> memory;
  std::map<std::string, std::vector<std::uint32_t>> memory_tags;

  friend bool operator==(const RunInputs&, const RunInputs&) = default;
};

using BaselineOutputs = std::vector<std::pair<std::string, std::uint64_t>>;

struct OutputValue {
  std::string id;
  std::uint64_t value = 0;
  std::uint32_t tag = 0;

  friend bool operator==(const OutputValue&, const OutputValue&) = default;
};

/// Tag seen by a checkpoint, allowed or not.
struct CheckpointObservation {
  std::string checkpoint_id;
  std::uint32_t tag = 0;

  friend bool operator==(const CheckpointObservation&,
                         const CheckpointObservation&) = default;
};

struct SimulationReport {
  std::vector<OutputValue> outputs;  // empty when halted
  std::vector<SecurityException> exceptions;
  bool irq = false;
  std::size_t steps_executed = 0;
  bool halted = false;
  DiftMode mode = DiftMode::fine(PropagationRule::FineUnion);
  std::vector<CheckpointObservation> observations;
  std::vector<Diagnostic> warnings;
};

/// Replacement for the per-op tag rule; used to run deliberately broken
/// rules against the property checks.
using TagRule = std::function<Tag(OpKind, std::span<const DiftValue>)>;

struct RunHooks {
  TagRule propagate;               // overrides the fine-mode rule when set
  MonitorState* monitor = nullptr;  // external monitor (registers persist)
};

/// Executes the untracked datapath. Checkpoints do nothing. Missing inputs
/// read as 0 and produce a warning. Throws EvalError for division by zero or
/// an address outside its memory, and Error(InvalidInputs) for stimulus that
/// does not match the kernel.
BaselineOutputs run_baseline(const Kernel& k, const RunInputs& in,
                             std::vector<Diagnostic>* warnings = nullptr);

/// Executes the DIFT-enhanced datapath.
///
/// Fine mode tracks a tag per wire and per memory cell: loads join the cell
/// tag with the address tag; stores write the value tag, joined with the
/// address tag under FineUnion. Coarse mode reports the boundary tag of all
/// inputs and initial memory at every output and checkpoint.
///
/// Checkpoints fire in declaration order, each as soon as its argument has
/// been computed and every earlier checkpoint has fired. With
/// OnException::halt the run stops at the first denial and reports no
/// outputs. Output values always equal run_baseline's.
///
/// When hooks.monitor has TAG_IN written, that tag replaces default_tag for
/// inputs without an explicit tag.
SimulationReport run_dift(const Kernel& k, const RunInputs& in,
                          const DiftConfig& cfg, const RunHooks& hooks = {});

/// Draws a stimulus: uniform input values, tags that are zero half of the
/// time, and random memory contents/tags for roughly half the memories.
RunInputs random_inputs(const Kernel& k, std::mt19937_64& rng);

/// Copy of `in` with every input and memory tag set to zero.
RunInputs without_tags(const Kernel& k, const RunInputs& in);

struct Mismatch {
  enum class Kind { value_divergence, pass_divergence };

  Kind kind = Kind::value_divergence;
  std::size_t sample = 0;
  RunInputs inputs;
  std::string detail;
};

struct ConsistencyReport {
  std::size_t samples = 0;
  std::size_t value_mismatches = 0;
  std::size_t pass_mismatches = 0;
  std::vector<Mismatch> mismatches;

  bool passed() const { return mismatches.empty(); }
};

/// Runs `samples` seeded stimuli through run_baseline and run_dift and
/// compares output values; also compares run_dift on the kernel against
/// run_dift on optimize(k) for values, tags and the exception sequence
/// (checkpoint, node, tag, policy; steps may shift). Identical errors on both
/// sides count as agreement; the optimized side may succeed where the
/// original faulted only if the faulting node was removed.
ConsistencyReport check_consistency(const Kernel& k, const DiftConfig& cfg,
                                    std::size_t samples, std::uint64_t seed);

/// True iff the exact result of `kind` is the same for every value of the
/// tainted operands, the others held at `untainted_values`. Operands must be
/// at most 6 bits wide (WidthTooLarge otherwise). The result type defaults to
/// u1 for comparisons and to the first operand's type otherwise. A division
/// by zero counts as its own outcome.
bool independence_oracle(OpKind kind, std::span<const BitType> operand_types,
                         const std::set<std::size_t>& tainted_positions,
                         const std::map<std::size_t, Int>& untainted_values,
                         std::optional<BitType> result_ty = std::nullopt);

constexpr unsigned kOracleMaxWidth = 6;

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<RunInputs> counterexample;  // first violation, replayable
  std::string detail;

  bool passed() const { return violations == 0; }
};

struct PropertyReport {
  std::size_t trials = 0;
  std::size_t skipped = 0;  // stimuli that fault in the datapath itself
  std::vector<PropertyResult> properties;

  bool passed() const;
};

struct FuzzOptions {
  TagRule union_rule;  // stands in for FineUnion when set
};

/// Seeded property checks per trial: untainted closure, FineUnion
/// monotonicity, FinePrecise within FineUnion, and fine within coarse, over
/// outputs and checkpoint observations.
PropertyReport fuzz_properties(const Kernel& k, std::size_t trials,
                               std::uint64_t seed,
                               const FuzzOptions& options = {});

/// Expected outcome of one configured run, as read from an expectation file.
struct ExpectedRun {
  DiftMode mode = DiftMode::fine(PropagationRule::FineUnion);
  RunInputs inputs;
  std::vector<OutputValue> outputs;
  std::optional<std::size_t> exception_count;
};

/// Number of expectations whose actual run differs.
std::size_t replay_expectations(const Kernel& k,
                                std::span<const ExpectedRun> expected,
                                std::vector<std::string>* details = nullptr);

}  // namespace hlsdift

#endif  // HLSDIFT_SIMULATOR_HPP
