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

#include "hlsdift/cli.hpp"

#include <filesystem>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "hlsdift/error.hpp"
#include "hlsdift/graph.hpp"
#include "hlsdift/io.hpp"
#include "hlsdift/kernel.hpp"
#include "hlsdift/passes.hpp"
#include "hlsdift/simulator.hpp"

namespace hlsdift {

namespace {

struct RunArgs {
  std::string kernel;
  std::string inputs;
  std::string mode = "fine";
  std::string rule = "union";
  std::string on_exception = "record";
  bool optimize = false;
  std::string report;
  std::uint64_t seed = 0;
};

struct InstrumentArgs {
  std::string kernel;
  std::string dot;
  std::string mode = "fine";
  std::string rule = "union";
};

struct CheckArgs {
  std::string kernel;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::string expect;
};

struct FuzzArgs {
  std::string kernel;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  std::string out_dir;
};

void print_diagnostics(const std::vector<Diagnostic>& diags,
                       const std::string& file, std::ostream& err) {
  for (const auto& d : diags) err << file << ": " << to_string(d) << "\n";
}

// Loads and validates a kernel; returns nullopt after printing diagnostics.
std::optional<Kernel> load_kernel(const std::string& path, std::ostream& err) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return std::nullopt;
  }
  ParseResult parsed = parse_kernel(text);
  print_diagnostics(parsed.diagnostics, path, err);
  return std::move(parsed.kernel);
}

DiftMode make_mode(const std::string& mode, const std::string& rule) {
  if (mode == "coarse") return DiftMode::coarse();
  return DiftMode::fine(*parse_rule(rule));
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  auto kernel = load_kernel(a.kernel, err);
  if (!kernel) return exit_code::kInvalid;

  RunInputs inputs;
  if (!a.inputs.empty()) {
    try {
      inputs = parse_inputs(read_file(a.inputs));
    } catch (const std::exception& e) {
      err << a.inputs << ": error: " << e.what() << "\n";
      return exit_code::kInvalid;
    }
  } else {
    std::mt19937_64 rng(a.seed);
    inputs = random_inputs(*kernel, rng);
  }

  Kernel k = *kernel;
  if (a.optimize) {
    std::vector<Diagnostic> diags;
    k = optimize(k, &diags);
    print_diagnostics(diags, a.kernel, err);
  }

  const DiftConfig cfg{k.tag_width, make_mode(a.mode, a.rule),
                       *parse_on_exception(a.on_exception)};
  SimulationReport report;
  try {
    report = run_dift(k, inputs, cfg);
  } catch (const EvalError& e) {
    err << "evaluation error: " << error_kind_name(e.kind()) << ": "
        << e.what() << "\n";
    return exit_code::kEvaluation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInvalid;
  }
  print_diagnostics(report.warnings, a.inputs.empty() ? "inputs" : a.inputs,
                    err);

  if (!a.report.empty()) {
    try {
      write_file(a.report, report_to_json(report));
    } catch (const std::exception& e) {
      err << e.what() << "\n";
      return exit_code::kUsage;
    }
  }
  out << "run kernel=" << k.name << " mode=" << cfg.mode.mode_name()
      << " rule=" << cfg.mode.rule_label()
      << " outputs=" << report.outputs.size()
      << " exceptions=" << report.exceptions.size()
      << " irq=" << (report.irq ? 1 : 0) << " steps=" << report.steps_executed
      << (report.halted ? " halted" : "") << "\n";
  return report.exceptions.empty() ? exit_code::kOk : exit_code::kSecurity;
}

int cmd_instrument(const InstrumentArgs& a, std::ostream& out,
                   std::ostream& err) {
  auto k = load_kernel(a.kernel, err);
  if (!k) return exit_code::kInvalid;
  const DiftConfig cfg{k->tag_width, make_mode(a.mode, a.rule),
                       OnException::record};
  const std::string dot = emit_dot(instrument(*k, cfg));
  if (a.dot.empty()) {
    out << dot;
    return exit_code::kOk;
  }
  try {
    write_file(a.dot, dot);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kOk;
}

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  auto k = load_kernel(a.kernel, err);
  if (!k) return exit_code::kInvalid;

  std::vector<ExpectedRun> expected;
  if (!a.expect.empty()) {
    try {
      expected = parse_expectations(read_file(a.expect), *k);
    } catch (const std::exception& e) {
      err << a.expect << ": error: " << e.what() << "\n";
      return exit_code::kInvalid;
    }
  }

  const DiftMode modes[] = {DiftMode::fine(PropagationRule::FineUnion),
                            DiftMode::fine(PropagationRule::FinePrecise),
                            DiftMode::coarse()};
  std::size_t total = 0;
  for (const auto& mode : modes) {
    const DiftConfig cfg{k->tag_width, mode, OnException::record};
    const ConsistencyReport r = check_consistency(*k, cfg, a.samples, a.seed);
    out << "check kernel=" << k->name << " mode=" << mode.mode_name()
        << " rule=" << mode.rule_label() << " samples=" << r.samples
        << " value_mismatches=" << r.value_mismatches
        << " pass_mismatches=" << r.pass_mismatches << "\n";
    for (std::size_t i = 0; i < r.mismatches.size() && i < 3; ++i) {
      err << "  sample " << r.mismatches[i].sample << ": "
          << r.mismatches[i].detail << "\n";
    }
    total += r.mismatches.size();
  }
  if (!expected.empty()) {
    std::vector<std::string> details;
    const std::size_t bad = replay_expectations(*k, expected, &details);
    out << "expect cases=" << expected.size() << " mismatches=" << bad << "\n";
    for (const auto& d : details) err << "  " << d << "\n";
    total += bad;
  }
  out << "check total_mismatches=" << total << "\n";
  return total == 0 ? exit_code::kOk : exit_code::kEvaluation;
}

int cmd_fuzz(const FuzzArgs& a, std::ostream& out, std::ostream& err) {
  auto k = load_kernel(a.kernel, err);
  if (!k) return exit_code::kInvalid;

  const PropertyReport r = fuzz_properties(*k, a.trials, a.seed);
  std::size_t failed = 0;
  for (const auto& p : r.properties) {
    out << "property " << p.name << " checked=" << p.checked
        << " violations=" << p.violations << (p.passed() ? " pass" : " FAIL")
        << "\n";
    if (p.passed()) continue;
    ++failed;
    for (std::size_t i = 0; i < p.counterexample.size(); ++i) {
      const std::string text = inputs_to_json(p.counterexample[i]);
      out << "counterexample " << p.name << " " << i << " (" << p.detail
          << "):\n"
          << text;
      if (!a.out_dir.empty()) {
        try {
          std::filesystem::create_directories(a.out_dir);
          write_file((std::filesystem::path(a.out_dir) /
                      (p.name + "_" + std::to_string(i) + ".json"))
                         .string(),
                     text);
        } catch (const std::exception& e) {
          err << e.what() << "\n";
          return exit_code::kUsage;
        }
      }
    }
  }
  out << "fuzz kernel=" << k->name << " trials=" << r.trials
      << " skipped=" << r.skipped << " failed_properties=" << failed << "\n";
  return failed == 0 ? exit_code::kOk : exit_code::kEvaluation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Dynamic information flow tracking for dataflow kernels",
               "hlsdift"};
  app.require_subcommand(1);

  const std::vector<std::string> modes{"fine", "coarse"};
  const std::vector<std::string> rules{"union", "precise"};

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a kernel with DIFT");
  run_cmd->add_option("kernel", run.kernel, "Kernel JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("inputs", run.inputs,
                      "Inputs JSON file (random from --seed if omitted)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--mode", run.mode)->check(CLI::IsMember(modes));
  run_cmd->add_option("--rule", run.rule)->check(CLI::IsMember(rules));
  run_cmd->add_option("--on-exception", run.on_exception)
      ->check(CLI::IsMember({"record", "halt"}));
  run_cmd->add_flag("--optimize", run.optimize,
                    "Apply constant folding and dead code elimination");
  run_cmd->add_option("--report", run.report, "Write the report JSON here");
  run_cmd->add_option("--seed", run.seed);

  InstrumentArgs inst;
  auto* inst_cmd =
      app.add_subcommand("instrument", "Emit the instrumented graph as DOT");
  inst_cmd->add_option("kernel", inst.kernel, "Kernel JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  inst_cmd->add_option("--emit-dot", inst.dot, "DOT output path (stdout if omitted)");
  inst_cmd->add_option("--mode", inst.mode)->check(CLI::IsMember(modes));
  inst_cmd->add_option("--rule", inst.rule)->check(CLI::IsMember(rules));

  CheckArgs check;
  auto* check_cmd = app.add_subcommand(
      "check", "Differential consistency check over seeded samples");
  check_cmd->add_option("kernel", check.kernel, "Kernel JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  check_cmd->add_option("--samples", check.samples);
  check_cmd->add_option("--seed", check.seed);
  check_cmd->add_option("--expect", check.expect, "Expectation file to replay")
      ->check(CLI::ExistingFile);

  FuzzArgs fuzz;
  auto* fuzz_cmd =
      app.add_subcommand("fuzz", "Property-based checks of tag propagation");
  fuzz_cmd->add_option("kernel", fuzz.kernel, "Kernel JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  fuzz_cmd->add_option("--trials", fuzz.trials);
  fuzz_cmd->add_option("--seed", fuzz.seed);
  fuzz_cmd->add_option("--out-dir", fuzz.out_dir,
                       "Also write counterexamples as input files here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run, out, err);
    if (*inst_cmd) return cmd_instrument(inst, out, err);
    if (*check_cmd) return cmd_check(check, out, err);
    return cmd_fuzz(fuzz, out, err);
  } catch (const EvalError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return exit_code::kEvaluation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
}

}  // namespace hlsdift
