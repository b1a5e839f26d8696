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

#include "hlsdift/simulator.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "hlsdift/error.hpp"
#include "hlsdift/passes.hpp"

namespace hlsdift {

namespace {

// Stimulus resolved against the kernel declarations.
struct ResolvedInputs {
  std::map<std::string, BitValue> values;
  std::map<std::string, std::uint32_t> tags;
  std::map<std::string, std::vector<BitValue>> memory;
  std::map<std::string, std::vector<std::uint32_t>> memory_tags;
};

[[noreturn]] void bad_inputs(const std::string& message) {
  throw Error(ErrorKind::InvalidInputs, message);
}

ResolvedInputs resolve(const Kernel& k, const RunInputs& in,
                       std::optional<std::uint32_t> tag_override,
                       std::vector<Diagnostic>* warnings) {
  const std::uint32_t tmask = tag_mask(k.tag_width);
  for (const auto& [id, v] : in.values) {
    if (!k.find_input(id)) bad_inputs("value for unknown input '" + id + "'");
  }
  for (const auto& [id, t] : in.tags) {
    if (!k.find_input(id)) bad_inputs("tag for unknown input '" + id + "'");
    if ((t & ~tmask) != 0) bad_inputs("tag of '" + id + "' exceeds tag width");
  }
  for (const auto& [id, cells] : in.memory) {
    const MemoryDecl* m = k.find_memory(id);
    if (!m) bad_inputs("contents for unknown memory '" + id + "'");
    if (cells.size() != m->size) {
      bad_inputs("memory '" + id + "' needs " + std::to_string(m->size) +
                 " cells, got " + std::to_string(cells.size()));
    }
  }
  for (const auto& [id, tags] : in.memory_tags) {
    const MemoryDecl* m = k.find_memory(id);
    if (!m) bad_inputs("tags for unknown memory '" + id + "'");
    if (tags.size() != m->size) {
      bad_inputs("memory_tags '" + id + "' needs " + std::to_string(m->size) +
                 " cells, got " + std::to_string(tags.size()));
    }
    for (auto t : tags) {
      if ((t & ~tmask) != 0) bad_inputs("memory tag exceeds tag width");
    }
  }

  ResolvedInputs r;
  for (const auto& decl : k.inputs) {
    auto v = in.values.find(decl.id);
    if (v == in.values.end()) {
      if (warnings) {
        warnings->push_back({Diagnostic::Severity::warning,
                             "input '" + decl.id + "'",
                             "no value given, using 0"});
      }
      r.values.emplace(decl.id, make_bitvalue(decl.type, 0));
    } else {
      r.values.emplace(decl.id, make_bitvalue(decl.type, v->second));
    }
    auto t = in.tags.find(decl.id);
    std::uint32_t tag = decl.default_tag;
    if (t != in.tags.end()) {
      tag = t->second;
    } else if (tag_override) {
      tag = *tag_override & tmask;
    }
    r.tags.emplace(decl.id, tag);
  }
  for (const auto& m : k.memories) {
    auto over = in.memory.find(m.id);
    const std::vector<Int>* init =
        over != in.memory.end() ? &over->second : &m.init;
    std::vector<BitValue> cells;
    cells.reserve(m.size);
    for (std::size_t i = 0; i < m.size; ++i) {
      cells.push_back(make_bitvalue(m.cell, init->empty() ? 0 : (*init)[i]));
    }
    r.memory.emplace(m.id, std::move(cells));

    auto tover = in.memory_tags.find(m.id);
    std::vector<std::uint32_t> tags =
        tover != in.memory_tags.end() ? tover->second : m.init_tags;
    if (tags.empty()) tags.assign(m.size, 0);
    r.memory_tags.emplace(m.id, std::move(tags));
  }
  return r;
}

[[noreturn]] void rethrow_at(const Error& e, const Node& n, std::size_t step) {
  std::ostringstream msg;
  msg << "node '" << n.id << "' (step " << step << "): " << e.what();
  throw EvalError(e.kind(), n.id, step, msg.str());
}

std::size_t checked_address(const BitValue& addr, const MemoryDecl& m,
                            const Node& n, std::size_t step) {
  const Int a = to_int(addr);
  if (a < 0 || a >= static_cast<Int>(m.size)) {
    std::ostringstream msg;
    msg << "node '" << n.id << "' (step " << step << "): address "
        << int_to_string(a) << " outside memory '" << m.id << "' of "
        << m.size << " cells";
    throw EvalError(ErrorKind::OutOfBoundsAddress, n.id, step, msg.str());
  }
  return static_cast<std::size_t>(a);
}

struct MemoryCells {
  std::vector<DiftValue> cells;
};

}  // namespace

BaselineOutputs run_baseline(const Kernel& k, const RunInputs& in,
                             std::vector<Diagnostic>* warnings) {
  ResolvedInputs r = resolve(k, in, std::nullopt, warnings);

  std::map<std::string, BitValue> wires = std::move(r.values);
  for (const auto& c : k.constants) wires.emplace(c.id, c.value);
  auto& memory = r.memory;

  std::size_t step = 0;
  for (const auto& n : k.nodes) {
    ++step;
    auto arg = [&](std::size_t i) -> const BitValue& {
      return wires.at(n.args[i]);
    };
    try {
      switch (n.op) {
        case OpKind::load: {
          const MemoryDecl& m = *k.find_memory(n.args[0]);
          const std::size_t at = checked_address(arg(1), m, n, step);
          wires.insert_or_assign(
              n.id, make_bitvalue(*n.result, to_int(memory.at(m.id)[at])));
          break;
        }
        case OpKind::store: {
          const MemoryDecl& m = *k.find_memory(n.args[0]);
          const std::size_t at = checked_address(arg(1), m, n, step);
          memory.at(m.id)[at] = make_bitvalue(m.cell, to_int(arg(2)));
          break;
        }
        case OpKind::mux:
          wires.insert_or_assign(
              n.id, select_value(arg(0), arg(1), arg(2), *n.result));
          break;
        case OpKind::bit_not:
        case OpKind::neg:
          wires.insert_or_assign(n.id, eval_unop(n.op, arg(0), *n.result));
          break;
        default:
          wires.insert_or_assign(
              n.id, eval_binop(n.op, arg(0), arg(1), *n.result));
          break;
      }
    } catch (const EvalError&) {
      throw;
    } catch (const Error& e) {
      rethrow_at(e, n, step);
    }
  }

  BaselineOutputs out;
  for (const auto& o : k.outputs) {
    out.emplace_back(o.id, wires.at(o.source).bits());
  }
  return out;
}

SimulationReport run_dift(const Kernel& k, const RunInputs& in,
                          const DiftConfig& cfg, const RunHooks& hooks) {
  if (cfg.tag_width != k.tag_width) {
    throw Error(ErrorKind::WidthMismatch,
                "config tag width " + std::to_string(cfg.tag_width) +
                    " != kernel tag width " + std::to_string(k.tag_width));
  }
  const unsigned tw = k.tag_width;

  MonitorState local_monitor(tw);
  MonitorState& monitor = hooks.monitor ? *hooks.monitor : local_monitor;
  if (monitor.tag_width() != tw) {
    throw Error(ErrorKind::WidthMismatch, "monitor tag width mismatch");
  }
  for (const auto& p : k.policies) {
    auto known = monitor.policies().find(p.name);
    if (known == monitor.policies().end()) {
      monitor.add_policy(p);
    } else if (!(known->second == p)) {
      throw Error(ErrorKind::InvalidKernel,
                  "monitor already holds a different policy '" + p.name + "'");
    }
  }
  for (const auto& c : k.checkpoints) monitor.bind_checkpoint(c.id, c.policy);

  SimulationReport report;
  report.mode = cfg.mode;
  ResolvedInputs r = resolve(k, in, monitor.tag_in(), &report.warnings);

  // Boundary tag over every input and initial memory cell.
  std::vector<Tag> input_tags;
  for (const auto& [id, t] : r.tags) input_tags.emplace_back(tw, t);
  std::vector<Tag> memory_tags;
  for (const auto& [id, tags] : r.memory_tags) {
    for (auto t : tags) memory_tags.emplace_back(tw, t);
  }
  const Tag boundary = boundary_tag(tw, input_tags, memory_tags);

  const bool coarse = cfg.mode.is_coarse();
  const PropagationRule rule =
      coarse ? PropagationRule::FineUnion : cfg.mode.rule();
  const bool custom_rule = !coarse && static_cast<bool>(hooks.propagate);

  std::map<std::string, DiftValue> wires;
  for (const auto& [id, v] : r.values) {
    wires.emplace(id, lift(v, Tag(tw, r.tags.at(id))));
  }
  for (const auto& c : k.constants) {
    wires.emplace(c.id, lift(c.value, Tag::untainted(tw)));
  }
  std::map<std::string, MemoryCells> memory;
  for (const auto& m : k.memories) {
    MemoryCells cells;
    const auto& values = r.memory.at(m.id);
    const auto& tags = r.memory_tags.at(m.id);
    for (std::size_t i = 0; i < m.size; ++i) {
      cells.cells.push_back(lift(values[i], Tag(tw, tags[i])));
    }
    memory.emplace(m.id, std::move(cells));
  }

  std::size_t next_checkpoint = 0;
  auto fire_ready = [&](std::size_t step) {
    while (next_checkpoint < k.checkpoints.size()) {
      const CheckpointDecl& cp = k.checkpoints[next_checkpoint];
      auto wire = wires.find(cp.arg);
      if (wire == wires.end()) return false;
      ++next_checkpoint;
      DiftValue observed = wire->second;
      if (coarse) observed.tag = boundary;
      report.observations.push_back({cp.id, observed.tag.bits()});
      if (auto exc = monitor.checkpoint(cp.id, cp.arg, observed, step)) {
        report.exceptions.push_back(*exc);
        if (cfg.on_exception == OnException::halt) return true;
      }
    }
    return false;
  };

  auto finish = [&](bool halted) {
    report.halted = halted;
    report.irq = monitor.irq();
    return report;
  };

  if (fire_ready(0)) return finish(true);

  std::size_t step = 0;
  for (const auto& n : k.nodes) {
    ++step;
    report.steps_executed = step;
    auto arg = [&](std::size_t i) -> const DiftValue& {
      return wires.at(n.args[i]);
    };
    try {
      switch (n.op) {
        case OpKind::load: {
          const MemoryDecl& m = *k.find_memory(n.args[0]);
          const DiftValue& addr = arg(1);
          const std::size_t at = checked_address(addr.value, m, n, step);
          const DiftValue& cell = memory.at(m.id).cells[at];
          wires.insert_or_assign(
              n.id, DiftValue{make_bitvalue(*n.result, to_int(cell.value)),
                              join(cell.tag, addr.tag)});
          break;
        }
        case OpKind::store: {
          const MemoryDecl& m = *k.find_memory(n.args[0]);
          const DiftValue& addr = arg(1);
          const DiftValue& value = arg(2);
          const std::size_t at = checked_address(addr.value, m, n, step);
          Tag tag = value.tag;
          if (rule == PropagationRule::FineUnion || custom_rule) {
            tag = join(tag, addr.tag);
          }
          memory.at(m.id).cells[at] =
              DiftValue{make_bitvalue(m.cell, to_int(value.value)), tag};
          break;
        }
        default: {
          DiftValue result;
          if (n.op == OpKind::mux) {
            result = apply_mux(arg(0), arg(1), arg(2), *n.result, rule);
          } else if (is_unary_op(n.op)) {
            result = apply_unop(n.op, arg(0), *n.result, rule);
          } else {
            result = apply_binop(n.op, arg(0), arg(1), *n.result, rule);
          }
          if (custom_rule) {
            std::vector<DiftValue> operands;
            for (std::size_t i = 0; i < n.args.size(); ++i) {
              operands.push_back(arg(i));
            }
            result.tag = hooks.propagate(n.op, operands);
          }
          wires.insert_or_assign(n.id, result);
          break;
        }
      }
    } catch (const EvalError&) {
      throw;
    } catch (const Error& e) {
      rethrow_at(e, n, step);
    }
    if (fire_ready(step)) return finish(true);
  }

  for (const auto& o : k.outputs) {
    const DiftValue& v = wires.at(o.source);
    report.outputs.push_back(
        {o.id, v.value.bits(), coarse ? boundary.bits() : v.tag.bits()});
  }
  return finish(false);
}

RunInputs random_inputs(const Kernel& k, std::mt19937_64& rng) {
  const std::uint32_t tmask = tag_mask(k.tag_width);
  auto draw_tag = [&]() -> std::uint32_t {
    const std::uint64_t word = rng();
    return (word & 1U) != 0 ? static_cast<std::uint32_t>(word >> 1) & tmask
                            : 0;
  };

  RunInputs in;
  for (const auto& decl : k.inputs) {
    in.values[decl.id] = to_int(make_bitvalue(decl.type, rng()));
    in.tags[decl.id] = draw_tag();
  }
  for (const auto& m : k.memories) {
    if ((rng() & 1U) != 0) {
      std::vector<Int> cells;
      for (std::size_t i = 0; i < m.size; ++i) {
        cells.push_back(to_int(make_bitvalue(m.cell, rng())));
      }
      in.memory[m.id] = std::move(cells);
    }
    if ((rng() & 1U) != 0) {
      std::vector<std::uint32_t> tags;
      for (std::size_t i = 0; i < m.size; ++i) tags.push_back(draw_tag());
      in.memory_tags[m.id] = std::move(tags);
    }
  }
  return in;
}

RunInputs without_tags(const Kernel& k, const RunInputs& in) {
  RunInputs out = in;
  for (const auto& decl : k.inputs) out.tags[decl.id] = 0;
  for (const auto& m : k.memories) {
    out.memory_tags[m.id] = std::vector<std::uint32_t>(m.size, 0);
  }
  return out;
}

namespace {

struct Outcome {
  std::optional<SimulationReport> report;
  std::optional<BaselineOutputs> baseline;
  std::optional<std::pair<ErrorKind, std::string>> error;
};

Outcome try_dift(const Kernel& k, const RunInputs& in, const DiftConfig& cfg,
                 const RunHooks& hooks = {}) {
  Outcome o;
  try {
    o.report = run_dift(k, in, cfg, hooks);
  } catch (const EvalError& e) {
    o.error = std::make_pair(e.kind(), e.node_id());
  }
  return o;
}

Outcome try_baseline(const Kernel& k, const RunInputs& in) {
  Outcome o;
  try {
    o.baseline = run_baseline(k, in);
  } catch (const EvalError& e) {
    o.error = std::make_pair(e.kind(), e.node_id());
  }
  return o;
}

std::string describe_error(const std::pair<ErrorKind, std::string>& e) {
  return std::string(error_kind_name(e.first)) + " at '" + e.second + "'";
}

// Exceptions compared without their step, which passes may shift.
bool same_exceptions(const std::vector<SecurityException>& a,
                     const std::vector<SecurityException>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].checkpoint_id != b[i].checkpoint_id ||
        a[i].node_id != b[i].node_id || a[i].tag_bits != b[i].tag_bits ||
        a[i].policy_name != b[i].policy_name) {
      return false;
    }
  }
  return true;
}

std::optional<std::string> compare_values(const Outcome& base,
                                          const Outcome& dift) {
  // A halted run stops before any later fault the baseline hits.
  if (dift.report && dift.report->halted) return std::nullopt;
  if (base.error || dift.error) {
    if (base.error && dift.error && *base.error == *dift.error) {
      return std::nullopt;
    }
    return "baseline " +
           (base.error ? describe_error(*base.error) : std::string("ok")) +
           ", dift " +
           (dift.error ? describe_error(*dift.error) : std::string("ok"));
  }
  const auto& outs = dift.report->outputs;
  for (std::size_t i = 0; i < base.baseline->size(); ++i) {
    const auto& [id, value] = (*base.baseline)[i];
    if (i >= outs.size() || outs[i].id != id || outs[i].value != value) {
      return "output '" + id + "' differs";
    }
  }
  return std::nullopt;
}

std::optional<std::string> compare_passes(const Outcome& orig,
                                          const Outcome& opt,
                                          const Kernel& optimized) {
  if (orig.error) {
    if (opt.error) {
      if (*orig.error == *opt.error) return std::nullopt;
      return "original " + describe_error(*orig.error) + ", optimized " +
             describe_error(*opt.error);
    }
    if (!optimized.find_node(orig.error->second)) return std::nullopt;
    return "optimized run lost " + describe_error(*orig.error);
  }
  if (opt.error) return "optimized run raised " + describe_error(*opt.error);

  const SimulationReport& a = *orig.report;
  const SimulationReport& b = *opt.report;
  if (a.outputs != b.outputs) return std::string("outputs differ");
  if (!same_exceptions(a.exceptions, b.exceptions)) {
    return std::string("exception sequences differ");
  }
  if (a.irq != b.irq || a.halted != b.halted) {
    return std::string("irq/halt state differs");
  }
  return std::nullopt;
}

bool all_subset(const std::vector<OutputValue>& small,
                const std::vector<OutputValue>& big) {
  if (small.size() != big.size()) return false;
  for (std::size_t i = 0; i < small.size(); ++i) {
    if ((small[i].tag & ~big[i].tag) != 0) return false;
  }
  return true;
}

bool all_subset(const std::vector<CheckpointObservation>& small,
                const std::vector<CheckpointObservation>& big) {
  if (small.size() != big.size()) return false;
  for (std::size_t i = 0; i < small.size(); ++i) {
    if ((small[i].tag & ~big[i].tag) != 0) return false;
  }
  return true;
}

bool tags_within(const SimulationReport& small, const SimulationReport& big) {
  return all_subset(small.outputs, big.outputs) &&
         all_subset(small.observations, big.observations);
}

bool all_untainted(const SimulationReport& r) {
  return r.exceptions.empty() &&
         std::all_of(r.outputs.begin(), r.outputs.end(),
                     [](const OutputValue& o) { return o.tag == 0; }) &&
         std::all_of(r.observations.begin(), r.observations.end(),
                     [](const CheckpointObservation& o) { return o.tag == 0; });
}

void record(PropertyResult& p, bool ok, std::vector<RunInputs> witness,
            std::size_t trial) {
  ++p.checked;
  if (ok) return;
  if (p.violations++ == 0) {
    p.counterexample = std::move(witness);
    p.detail = "trial " + std::to_string(trial);
  }
}

}  // namespace

ConsistencyReport check_consistency(const Kernel& k, const DiftConfig& cfg,
                                    std::size_t samples, std::uint64_t seed) {
  const Kernel optimized = optimize(k);
  std::mt19937_64 rng(seed);
  ConsistencyReport report;
  report.samples = samples;

  for (std::size_t s = 0; s < samples; ++s) {
    RunInputs in = random_inputs(k, rng);
    const Outcome base = try_baseline(k, in);
    const Outcome dift = try_dift(k, in, cfg);
    const Outcome opt = try_dift(optimized, in, cfg);

    if (auto diff = compare_values(base, dift)) {
      ++report.value_mismatches;
      report.mismatches.push_back(
          {Mismatch::Kind::value_divergence, s, in, *diff});
    }
    if (auto diff = compare_passes(dift, opt, optimized)) {
      ++report.pass_mismatches;
      report.mismatches.push_back(
          {Mismatch::Kind::pass_divergence, s, in, *diff});
    }
  }
  return report;
}

bool independence_oracle(OpKind kind, std::span<const BitType> operand_types,
                         const std::set<std::size_t>& tainted_positions,
                         const std::map<std::size_t, Int>& untainted_values,
                         std::optional<BitType> result_ty) {
  if (is_memory_op(kind)) {
    throw Error(ErrorKind::TypeMismatch, "memory ops have no pure result");
  }
  if (operand_types.size() != op_arity(kind)) {
    throw Error(ErrorKind::ArityMismatch, "operand count does not match op");
  }
  for (const auto& ty : operand_types) {
    make_type(ty.width, ty.is_signed);
    if (ty.width > kOracleMaxWidth) {
      throw Error(ErrorKind::WidthTooLarge,
                  "oracle enumerates operands of at most 6 bits");
    }
  }
  for (std::size_t pos : tainted_positions) {
    if (pos >= operand_types.size()) {
      throw Error(ErrorKind::ArityMismatch, "tainted position out of range");
    }
  }
  const BitType out_ty =
      result_ty ? *result_ty
                : (is_comparison(kind) ? kBoolType : operand_types[0]);

  std::vector<BitValue> operands(operand_types.size());
  std::vector<std::size_t> varying;
  for (std::size_t i = 0; i < operand_types.size(); ++i) {
    if (tainted_positions.count(i) != 0) {
      varying.push_back(i);
      continue;
    }
    auto fixed = untainted_values.find(i);
    if (fixed == untainted_values.end()) {
      throw Error(ErrorKind::InvalidInputs,
                  "no value for untainted operand " + std::to_string(i));
    }
    operands[i] = make_bitvalue(operand_types[i], fixed->second);
  }

  // Outcome encoding: the result pattern, or a sentinel for division by zero.
  constexpr Int kFault = -1;
  std::optional<Int> first;
  std::uint64_t total = 1;
  for (std::size_t pos : varying) total <<= operand_types[pos].width;

  for (std::uint64_t counter = 0; counter < total; ++counter) {
    std::uint64_t rest = counter;
    for (std::size_t pos : varying) {
      const unsigned w = operand_types[pos].width;
      operands[pos] = BitValue::from_bits(operand_types[pos], rest & low_mask(w));
      rest >>= w;
    }
    Int outcome;
    try {
      if (kind == OpKind::mux) {
        outcome = select_value(operands[0], operands[1], operands[2], out_ty).bits();
      } else if (is_unary_op(kind)) {
        outcome = eval_unop(kind, operands[0], out_ty).bits();
      } else {
        outcome = eval_binop(kind, operands[0], operands[1], out_ty).bits();
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivisionByZero) throw;
      outcome = kFault;
    }
    if (!first) {
      first = outcome;
    } else if (*first != outcome) {
      return false;
    }
  }
  return true;
}

bool PropertyReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed(); });
}

PropertyReport fuzz_properties(const Kernel& k, std::size_t trials,
                               std::uint64_t seed,
                               const FuzzOptions& options) {
  std::mt19937_64 rng(seed);
  const std::uint32_t tmask = tag_mask(k.tag_width);

  PropertyReport report;
  report.trials = trials;
  PropertyResult closure;
  closure.name = "untainted_closure";
  PropertyResult monotone;
  monotone.name = "union_monotonicity";
  PropertyResult precise;
  precise.name = "precise_within_union";
  PropertyResult coarse;
  coarse.name = "fine_within_coarse";

  const DiftConfig union_cfg{k.tag_width,
                             DiftMode::fine(PropagationRule::FineUnion),
                             OnException::record};
  const DiftConfig precise_cfg{k.tag_width,
                               DiftMode::fine(PropagationRule::FinePrecise),
                               OnException::record};
  const DiftConfig coarse_cfg{k.tag_width, DiftMode::coarse(),
                              OnException::record};
  RunHooks union_hooks;
  union_hooks.propagate = options.union_rule;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const RunInputs in = random_inputs(k, rng);

    // Widening draws happen before any run so the stream never depends on
    // whether a stimulus faults.
    RunInputs widened = in;
    for (const auto& decl : k.inputs) {
      widened.tags[decl.id] |= static_cast<std::uint32_t>(rng()) & tmask;
    }
    for (const auto& m : k.memories) {
      std::vector<std::uint32_t> tags = m.init_tags;
      if (auto it = in.memory_tags.find(m.id); it != in.memory_tags.end()) {
        tags = it->second;
      }
      if (tags.empty()) tags.assign(m.size, 0);
      for (auto& t : tags) t |= static_cast<std::uint32_t>(rng()) & tmask;
      widened.memory_tags[m.id] = std::move(tags);
    }
    const RunInputs zero = without_tags(k, in);

    try {
      const SimulationReport u = run_dift(k, in, union_cfg, union_hooks);
      const SimulationReport p = run_dift(k, in, precise_cfg);
      const SimulationReport c = run_dift(k, in, coarse_cfg);
      const SimulationReport uw = run_dift(k, widened, union_cfg, union_hooks);

      const bool zero_ok =
          all_untainted(run_dift(k, zero, union_cfg, union_hooks)) &&
          all_untainted(run_dift(k, zero, precise_cfg)) &&
          all_untainted(run_dift(k, zero, coarse_cfg));

      record(closure, zero_ok, {zero}, trial);
      record(monotone, tags_within(u, uw), {in, widened}, trial);
      record(precise, tags_within(p, u), {in}, trial);
      record(coarse, tags_within(u, c) && tags_within(p, c), {in}, trial);
    } catch (const EvalError&) {
      ++report.skipped;
    }
  }

  report.properties = {closure, monotone, precise, coarse};
  return report;
}

std::size_t replay_expectations(const Kernel& k,
                                std::span<const ExpectedRun> expected,
                                std::vector<std::string>* details) {
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const ExpectedRun& e = expected[i];
    const DiftConfig cfg{k.tag_width, e.mode, OnException::record};
    const Outcome got = try_dift(k, e.inputs, cfg);
    std::string problem;
    if (got.error) {
      problem = describe_error(*got.error);
    } else if (got.report->outputs != e.outputs) {
      problem = "outputs differ";
    } else if (e.exception_count &&
               got.report->exceptions.size() != *e.exception_count) {
      problem = "exception count differs";
    }
    if (!problem.empty()) {
      ++mismatches;
      if (details) {
        details->push_back("case " + std::to_string(i) + ": " + problem);
      }
    }
  }
  return mismatches;
}

}  // namespace hlsdift
