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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlsdift/cli.hpp"
#include "hlsdift/error.hpp"
#include "hlsdift/io.hpp"
#include "hlsdift/monitor.hpp"
#include "hlsdift/passes.hpp"
#include "hlsdift/simulator.hpp"
#include "reference.hpp"
#include "test_util.hpp"

namespace hlsdift {
namespace {

namespace fs = std::filesystem;
using testing_util::fixture_path;
using testing_util::load_fixture;

const char* const kFixtures[] = {"fir4.json", "dot8.json", "overflow_demo.json"};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<DiftMode> all_modes() {
  return {DiftMode::fine(PropagationRule::FineUnion),
          DiftMode::fine(PropagationRule::FinePrecise), DiftMode::coarse()};
}

std::string mode_label(const DiftMode& m) {
  return m.is_coarse() ? "coarse" : std::string(m.rule_label());
}

// 1. eval_binop against the reference, every operand pair for widths <= 6.
Outcome value_semantics() {
  const OpKind ops[] = {OpKind::add, OpKind::sub, OpKind::mul, OpKind::div,
                        OpKind::mod, OpKind::bit_and, OpKind::bit_or,
                        OpKind::bit_xor, OpKind::shl, OpKind::shr, OpKind::eq,
                        OpKind::ne, OpKind::lt, OpKind::le, OpKind::gt,
                        OpKind::ge};
  std::vector<BitType> results;
  for (unsigned w : {1U, 2U, 3U, 4U, 5U, 6U, 13U}) {
    results.push_back({w, false});
    results.push_back({w, true});
  }
  const std::vector<BitType> bool_only{kBoolType};

  std::size_t checked = 0, mismatches = 0;
  std::string first;
  for (OpKind op : ops) {
    const std::string name(op_name(op));
    const bool shift = op == OpKind::shl || op == OpKind::shr;
    const auto& rtypes = is_comparison(op) ? bool_only : results;
    for (unsigned wa = 1; wa <= 6; ++wa) {
      for (unsigned wb = 1; wb <= 6; ++wb) {
        for (int signs = 0; signs < 4; ++signs) {
          const BitType ta{wa, (signs & 1) != 0};
          const BitType tb{wb, (signs & 2) != 0};
          for (long long a = 0; a < ref::pow2(wa); ++a) {
            const BitValue va = BitValue::from_bits(ta, static_cast<std::uint64_t>(a));
            for (long long b = 0; b < ref::pow2(wb); ++b) {
              const BitValue vb = BitValue::from_bits(tb, static_cast<std::uint64_t>(b));
              std::optional<long long> exact;
              if (!shift) exact = ref::exact(name, wa, ta.is_signed, a, wb, tb.is_signed, b, 1);
              for (const BitType& rt : rtypes) {
                if (shift) exact = ref::exact(name, wa, ta.is_signed, a, wb, tb.is_signed, b, rt.width);
                ++checked;
                bool ok;
                try {
                  const BitValue got = eval_binop(op, va, vb, rt);
                  ok = exact && got.type() == rt &&
                       static_cast<long long>(got.bits()) == ref::wrap(*exact, rt.width);
                } catch (const Error& e) {
                  ok = !exact && e.kind() == ErrorKind::DivisionByZero;
                }
                if (!ok && mismatches++ == 0) {
                  first = name + " " + to_string(ta) + ":" + std::to_string(a) + " " +
                          to_string(tb) + ":" + std::to_string(b) + " -> " + to_string(rt);
                }
              }
            }
          }
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(checked) + " evaluations, " +
                               std::to_string(mismatches) + " mismatches" +
                               (first.empty() ? "" : " first: " + first)};
}

// 2. A precise tag of 0 with a tainted operand must mean the result cannot
// depend on that operand.
Outcome precise_soundness() {
  const OpKind ops[] = {OpKind::add, OpKind::sub, OpKind::mul, OpKind::div,
                        OpKind::mod, OpKind::bit_and, OpKind::bit_or,
                        OpKind::bit_xor, OpKind::shl, OpKind::shr, OpKind::eq,
                        OpKind::ne, OpKind::lt, OpKind::le, OpKind::gt,
                        OpKind::ge};
  std::size_t kills = 0, violations = 0, cases = 0;
  std::string first;
  for (OpKind op : ops) {
    std::vector<BitType> rtypes;
    if (is_comparison(op)) {
      rtypes = {kBoolType};
    } else {
      rtypes = {{4, false}, {4, true}, {8, false}, {8, true}, {2, false}};
    }
    for (int signs = 0; signs < 4; ++signs) {
      const std::array<BitType, 2> types{BitType{4, (signs & 1) != 0},
                                         BitType{4, (signs & 2) != 0}};
      for (std::size_t pos = 0; pos < 2; ++pos) {
        const std::size_t other = 1 - pos;
        for (long long fixed = 0; fixed < 16; ++fixed) {
          for (long long probe = 0; probe < 16; ++probe) {
            std::array<DiftValue, 2> operands;
            operands[pos] = {BitValue::from_bits(types[pos], probe), Tag(1, 1)};
            operands[other] = {BitValue::from_bits(types[other], fixed), Tag(1, 0)};
            ++cases;
            if (propagate(PropagationRule::FinePrecise, op, operands).tainted()) continue;
            for (const BitType& rt : rtypes) {
              ++kills;
              const bool independent = independence_oracle(
                  op, types, {pos}, {{other, to_int(operands[other].value)}}, rt);
              if (!independent && violations++ == 0) {
                first = std::string(op_name(op)) + " tainted position " +
                        std::to_string(pos) + " other=" + std::to_string(fixed) +
                        " result " + to_string(rt);
              }
            }
          }
        }
      }
    }
  }
  return {violations == 0 && kills > 0,
          std::to_string(cases) + " cases, " + std::to_string(kills) +
              " kills checked, " + std::to_string(violations) + " violations" +
              (first.empty() ? "" : " first: " + first)};
}

// 3. Precise never reports a label union does not.
Outcome rule_conservativeness() {
  std::mt19937_64 rng(31337);
  const OpKind ops[] = {OpKind::add, OpKind::sub, OpKind::mul, OpKind::div,
                        OpKind::mod, OpKind::bit_and, OpKind::bit_or,
                        OpKind::bit_xor, OpKind::shl, OpKind::shr, OpKind::eq,
                        OpKind::lt, OpKind::ge, OpKind::bit_not, OpKind::neg,
                        OpKind::mux};
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const OpKind op = ops[rng() % std::size(ops)];
    const unsigned tw = static_cast<unsigned>(rng() % 8 + 1);
    std::vector<DiftValue> operands;
    for (std::size_t j = 0; j < op_arity(op); ++j) {
      const BitType ty{static_cast<unsigned>(rng() % 64 + 1), (rng() & 1) != 0};
      Int raw;
      switch (rng() % 4) {
        case 0: raw = 0; break;
        case 1: raw = -1; break;
        default: raw = static_cast<Int>(rng()); break;
      }
      const std::uint32_t tag =
          (rng() % 3 == 0) ? 0 : static_cast<std::uint32_t>(rng()) & tag_mask(tw);
      operands.push_back({make_bitvalue(ty, raw), Tag(tw, tag)});
    }
    const Tag u = propagate(PropagationRule::FineUnion, op, operands);
    const Tag p = propagate(PropagationRule::FinePrecise, op, operands);
    if ((p.bits() & ~u.bits()) != 0) ++violations;
  }
  return {violations == 0, "10000 applications, " + std::to_string(violations) + " violations"};
}

// 4. Baseline and DIFT compute the same output values.
Outcome data_flow_consistency() {
  std::size_t runs = 0, faults = 0, mismatches = 0;
  for (const char* name : kFixtures) {
    const Kernel k = load_fixture(name);
    for (const DiftMode& mode : all_modes()) {
      const DiftConfig cfg{k.tag_width, mode, OnException::record};
      std::mt19937_64 rng(1000);
      for (int s = 0; s < 1000; ++s) {
        const RunInputs in = random_inputs(k, rng);
        ++runs;
        std::optional<BaselineOutputs> base;
        std::optional<ErrorKind> base_err, dift_err;
        try {
          base = run_baseline(k, in);
        } catch (const EvalError& e) {
          base_err = e.kind();
        }
        std::optional<SimulationReport> dift;
        try {
          dift = run_dift(k, in, cfg);
        } catch (const EvalError& e) {
          dift_err = e.kind();
        }
        if (base_err || dift_err) {
          ++faults;
          if (base_err != dift_err) ++mismatches;
          continue;
        }
        bool same = base->size() == dift->outputs.size();
        for (std::size_t i = 0; same && i < base->size(); ++i) {
          same = (*base)[i].first == dift->outputs[i].id &&
                 (*base)[i].second == dift->outputs[i].value;
        }
        if (!same) ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(runs) + " runs (" + std::to_string(faults) +
                               " faulted identically on both sides), " +
                               std::to_string(mismatches) + " mismatches"};
}

using Sites = std::vector<std::pair<std::string, std::string>>;

Sites exception_sites(const SimulationReport& r) {
  Sites out;
  for (const auto& e : r.exceptions) out.emplace_back(e.checkpoint_id, e.node_id);
  return out;
}

// 5. Optimization passes leave outputs, tags and exceptions unchanged.
Outcome pass_preservation() {
  std::size_t runs = 0, skipped = 0, mismatches = 0;
  for (const char* name : kFixtures) {
    const Kernel k = load_fixture(name);
    const Kernel opt = dead_code_elim(const_fold(k));
    for (const DiftMode& mode : all_modes()) {
      const DiftConfig cfg{k.tag_width, mode, OnException::record};
      std::mt19937_64 rng(2000);
      for (int s = 0; s < 1000; ++s) {
        const RunInputs in = random_inputs(k, rng);
        ++runs;
        std::optional<SimulationReport> a, b;
        std::optional<std::string> a_fault, b_fault;
        try { a = run_dift(k, in, cfg); } catch (const EvalError& e) { a_fault = e.node_id(); }
        try { b = run_dift(opt, in, cfg); } catch (const EvalError& e) { b_fault = e.node_id(); }
        if (a_fault || b_fault) {
          ++skipped;
          // A fault may only vanish if the faulting node itself was removed.
          const bool ok = (a_fault && b_fault && *a_fault == *b_fault) ||
                          (a_fault && !b_fault && !opt.find_node(*a_fault));
          if (!ok) ++mismatches;
          continue;
        }
        if (a->outputs != b->outputs || exception_sites(*a) != exception_sites(*b)) {
          ++mismatches;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(runs) + " runs (" + std::to_string(skipped) +
                               " faulting), " + std::to_string(mismatches) + " mismatches"};
}

std::uint32_t boundary_of(const Kernel& k, const RunInputs& in) {
  std::uint32_t b = 0;
  for (const auto& decl : k.inputs) {
    auto it = in.tags.find(decl.id);
    b |= it != in.tags.end() ? it->second : decl.default_tag;
  }
  for (const auto& m : k.memories) {
    auto it = in.memory_tags.find(m.id);
    for (auto t : it != in.memory_tags.end() ? it->second : m.init_tags) b |= t;
  }
  return b;
}

// 6. Fine tags never exceed the boundary tag.
Outcome coarse_over_approximation() {
  std::size_t runs = 0, violations = 0;
  for (const char* name : kFixtures) {
    const Kernel k = load_fixture(name);
    std::mt19937_64 rng(3000);
    for (int s = 0; s < 1000; ++s) {
      const RunInputs in = random_inputs(k, rng);
      const std::uint32_t boundary = boundary_of(k, in);
      try {
        const SimulationReport coarse =
            run_dift(k, in, {k.tag_width, DiftMode::coarse(), OnException::record});
        for (const auto& o : coarse.outputs) violations += o.tag != boundary;
        for (const auto& o : coarse.observations) violations += o.tag != boundary;
        for (auto rule : {PropagationRule::FineUnion, PropagationRule::FinePrecise}) {
          const SimulationReport fine =
              run_dift(k, in, {k.tag_width, DiftMode::fine(rule), OnException::record});
          ++runs;
          for (const auto& o : fine.outputs) violations += (o.tag & ~boundary) != 0;
          for (const auto& o : fine.observations) violations += (o.tag & ~boundary) != 0;
        }
      } catch (const EvalError&) {
      }
    }
  }
  return {violations == 0 && runs > 0,
          std::to_string(runs) + " fine runs, " + std::to_string(violations) + " violations"};
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hlsdift");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str()};
}

// 7. Tainted index into the buffer raises exactly one exception.
Outcome overflow_demo(const fs::path& dir) {
  const std::string kernel = fixture_path("overflow_demo.json");
  std::string first_report;
  for (int rep = 0; rep < 3; ++rep) {
    const std::string report_path = (dir / ("demo" + std::to_string(rep) + ".json")).string();
    const CliRun bad = cli({"run", kernel, fixture_path("overflow_tainted.json"),
                            "--report", report_path});
    if (bad.code != exit_code::kSecurity) {
      return {false, "tainted run exited " + std::to_string(bad.code)};
    }
    const std::string text = read_file(report_path);
    const auto doc = nlohmann::json::parse(text);
    const auto& exc = doc.at("exceptions");
    if (exc.size() != 1 || exc[0].at("checkpoint") != "chk_index") {
      return {false, "expected one exception at chk_index, report: " + text};
    }
    if (rep == 0) first_report = text;
    if (text != first_report) return {false, "reports differ between repeats"};

    const std::string ok_path = (dir / "ok.json").string();
    const CliRun ok = cli({"run", kernel, fixture_path("overflow_untainted.json"),
                           "--report", ok_path});
    if (ok.code != exit_code::kOk ||
        !nlohmann::json::parse(read_file(ok_path)).at("exceptions").empty()) {
      return {false, "untainted run exited " + std::to_string(ok.code)};
    }
  }
  return {true, "tainted exit 10 with 1 exception at chk_index, untainted exit 0, 3 repeats"};
}

// 8. irq and EXC_COUNT track the exception queue.
Outcome monitor_state_machine() {
  std::mt19937_64 rng(4000);
  std::size_t ops = 0, violations = 0;
  const char* cps[] = {"cp_any", "cp_mask", "cp_allow"};
  for (int seq = 0; seq < 1000; ++seq) {
    MonitorState m(3);
    m.add_policy({"any", PolicyKind::deny_if_any, Tag(3, 0)});
    m.add_policy({"mask", PolicyKind::deny_if_mask, Tag(3, 0b100)});
    m.add_policy({"allow", PolicyKind::allow_all, Tag(3, 0)});
    m.bind_checkpoint("cp_any", "any");
    m.bind_checkpoint("cp_mask", "mask");
    m.bind_checkpoint("cp_allow", "allow");
    std::deque<std::string> model;
    const int len = static_cast<int>(rng() % 40 + 1);
    for (int i = 0; i < len; ++i) {
      ++ops;
      switch (rng() % 4) {
        case 0: {
          const std::string cp = cps[rng() % 3];
          const auto tag = static_cast<std::uint32_t>(rng() & 7);
          const bool deny = (cp == "cp_any" && tag != 0) || (cp == "cp_mask" && (tag & 4));
          const std::string node = "n" + std::to_string(i);
          const bool raised = m.checkpoint(cp, node, {make_bitvalue(BitType{4, false}, 0), Tag(3, tag)},
                                           static_cast<std::size_t>(i)).has_value();
          if (raised != deny) ++violations;
          if (deny) model.push_back(node);
          break;
        }
        case 1:
          m.reg_read(static_cast<std::uint32_t>(rng() % 4));
          break;
        case 2: {
          const auto word = static_cast<std::uint32_t>(rng() & 3);
          m.reg_write(reg::kStatus, word);
          if (word & 1U) model.clear();
          break;
        }
        default: {
          const auto drained = m.drain_exceptions();
          if (drained.size() != model.size()) ++violations;
          for (std::size_t j = 0; j < drained.size() && j < model.size(); ++j) {
            if (drained[j].node_id != model[j]) ++violations;
          }
          model.clear();
          break;
        }
      }
      if (m.irq() != !model.empty()) ++violations;
      if ((m.reg_read(reg::kStatus) & 1U) != (model.empty() ? 0U : 1U)) ++violations;
      if (m.reg_read(reg::kExcCount) != model.size()) ++violations;
    }
  }
  return {violations == 0, "1000 sequences, " + std::to_string(ops) + " operations, " +
                               std::to_string(violations) + " violations"};
}

// 9. No input taint means no output taint and no exceptions.
Outcome untainted_closure() {
  std::size_t runs = 0, skipped = 0, violations = 0;
  for (const char* name : kFixtures) {
    const Kernel k = load_fixture(name);
    std::mt19937_64 rng(5000);
    for (int s = 0; s < 1000; ++s) {
      const RunInputs in = without_tags(k, random_inputs(k, rng));
      for (const DiftMode& mode : all_modes()) {
        ++runs;
        try {
          const SimulationReport r = run_dift(k, in, {k.tag_width, mode, OnException::record});
          for (const auto& o : r.outputs) violations += o.tag != 0;
          for (const auto& o : r.observations) violations += o.tag != 0;
          violations += r.exceptions.size();
          violations += r.irq ? 1 : 0;
        } catch (const EvalError&) {
          ++skipped;
        }
      }
    }
  }
  return {violations == 0, std::to_string(runs) + " runs (" + std::to_string(skipped) +
                               " faulting), " + std::to_string(violations) + " violations"};
}

// 10. Same arguments, same bytes.
Outcome determinism(const fs::path& dir) {
  auto artifact = [&](const std::vector<std::string>& args, const std::string& file) {
    std::vector<std::string> full = args;
    if (!file.empty()) full.push_back((dir / file).string());
    const CliRun r = cli(full);
    std::string bytes = "exit=" + std::to_string(r.code) + "\n" + r.out;
    if (!file.empty()) bytes += read_file((dir / file).string());
    return bytes;
  };
  std::size_t compared = 0;
  for (const char* name : kFixtures) {
    const std::string kernel = fixture_path(name);
    const std::vector<std::vector<std::string>> commands = {
        {"run", kernel, "--seed", "11", "--report"},
        {"run", kernel, "--seed", "11", "--mode", "coarse", "--report"},
        {"run", kernel, "--seed", "11", "--rule", "precise", "--optimize", "--report"},
        {"instrument", kernel, "--emit-dot"},
        {"instrument", kernel, "--mode", "coarse", "--emit-dot"},
    };
    for (std::size_t c = 0; c < commands.size(); ++c) {
      const std::string a = artifact(commands[c], "a_" + std::to_string(c));
      const std::string b = artifact(commands[c], "b_" + std::to_string(c));
      ++compared;
      if (a != b) return {false, std::string("artifacts differ for ") + commands[c][0] + " " + name};
    }
    const std::vector<std::string> check = {"check", kernel, "--samples", "200", "--seed", "11"};
    ++compared;
    if (artifact(check, "") != artifact(check, "")) {
      return {false, std::string("check output differs for ") + name};
    }
  }
  return {true, std::to_string(compared) + " command pairs byte-identical"};
}

}  // namespace
}  // namespace hlsdift

int main() {
  using namespace hlsdift;
  const fs::path dir = fs::temp_directory_path() /
                       ("hlsdift_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);

  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "value semantics oracle", 10, value_semantics},
      {2, "precise rule soundness", 10, precise_soundness},
      {3, "rule conservativeness", 0, rule_conservativeness},
      {4, "data-flow consistency", 30, data_flow_consistency},
      {5, "pass preservation", 0, pass_preservation},
      {6, "coarse over-approximation", 0, coarse_over_approximation},
      {7, "buffer overflow demo", 0, [&] { return overflow_demo(dir); }},
      {8, "monitor state machine", 0, monitor_state_machine},
      {9, "untainted closure", 0, untainted_closure},
      {10, "determinism", 0, [&] { return determinism(dir); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d %-27s %s  %.2fs  %s\n", c.id, c.name,
                o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  fs::remove_all(dir);
  std::printf("acceptance: %zu passed, %d failed\n", criteria.size() - failed, failed);
  return failed == 0 ? 0 : 1;
}
