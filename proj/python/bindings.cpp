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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hlsdift/bitvalue.hpp"
#include "hlsdift/cli.hpp"
#include "hlsdift/error.hpp"
#include "hlsdift/graph.hpp"
#include "hlsdift/io.hpp"
#include "hlsdift/kernel.hpp"
#include "hlsdift/passes.hpp"
#include "hlsdift/simulator.hpp"
#include "hlsdift/tainted.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace hlsdift;

namespace {

Int from_py(const py::int_& v) {
  int overflow = 0;
  const long long s = PyLong_AsLongLongAndOverflow(v.ptr(), &overflow);
  if (overflow == 0) return s;
  if (overflow > 0) {
    const unsigned long long u = PyLong_AsUnsignedLongLong(v.ptr());
    if (!PyErr_Occurred()) return static_cast<Int>(u);
    PyErr_Clear();
  }
  throw py::value_error("integer outside [-2**63, 2**64)");
}

py::int_ to_py(Int v) {
  if (v < 0) return py::int_(static_cast<long long>(v));
  return py::int_(static_cast<unsigned long long>(v));
}

OpKind op_from(const std::string& name) {
  auto op = parse_op(name);
  if (!op) throw py::value_error("unknown op '" + name + "'");
  return *op;
}

DiftMode mode_from(const std::string& mode, const std::string& rule) {
  if (mode == "coarse") return DiftMode::coarse();
  if (mode != "fine") throw py::value_error("mode must be 'fine' or 'coarse'");
  auto r = parse_rule(rule);
  if (!r) throw py::value_error("rule must be 'union' or 'precise'");
  return DiftMode::fine(*r);
}

Kernel parse_or_raise(const std::string& text) {
  ParseResult parsed = parse_kernel(text);
  if (!parsed.ok()) {
    std::ostringstream msg;
    for (const auto& d : parsed.diagnostics) msg << to_string(d) << "\n";
    throw py::value_error(msg.str());
  }
  return *parsed.kernel;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dynamic information flow tracking over bit-accurate kernels.";

  static py::exception<Error> dift_error(m, "DiftError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(dift_error, (std::string(error_kind_name(e.kind())) +
                                 ": " + e.what())
                                    .c_str());
    }
  });

  py::class_<BitType>(m, "BitType")
      .def(py::init(&make_type), py::arg("width"), py::arg("signed") = false)
      .def_readonly("width", &BitType::width)
      .def_readonly("signed", &BitType::is_signed)
      .def("__eq__", [](const BitType& a, const BitType& b) { return a == b; })
      .def("__repr__", [](const BitType& t) { return "BitType(" + to_string(t) + ")"; });

  py::class_<BitValue>(m, "BitValue")
      .def_property_readonly("type", &BitValue::type)
      .def_property_readonly("bits", &BitValue::bits)
      .def("__eq__", [](const BitValue& a, const BitValue& b) { return a == b; })
      .def("__repr__", [](const BitValue& v) {
        return "BitValue(" + to_string(v.type()) + ", " +
               std::to_string(v.bits()) + ")";
      });

  m.def("make_bitvalue", [](BitType ty, const py::int_& raw) {
    return make_bitvalue(ty, from_py(raw));
  });
  m.def("to_int", [](const BitValue& v) { return to_py(to_int(v)); });
  m.def("eval_binop", [](const std::string& op, const BitValue& a,
                         const BitValue& b, BitType ty) {
    return eval_binop(op_from(op), a, b, ty);
  });
  m.def("eval_unop", [](const std::string& op, const BitValue& a, BitType ty) {
    return eval_unop(op_from(op), a, ty);
  });

  py::class_<Tag>(m, "Tag")
      .def(py::init<unsigned, std::uint32_t>(), py::arg("width"), py::arg("bits"))
      .def_property_readonly("width", &Tag::width)
      .def_property_readonly("bits", &Tag::bits)
      .def("__eq__", [](const Tag& a, const Tag& b) { return a == b; })
      .def("__repr__", [](const Tag& t) {
        return "Tag(" + std::to_string(t.width()) + ", " +
               std::to_string(t.bits()) + ")";
      });

  m.def("join", &join);
  m.def("propagate", [](const std::string& rule, const std::string& op,
                        const std::vector<std::pair<BitValue, Tag>>& operands) {
    auto r = parse_rule(rule);
    if (!r) throw py::value_error("rule must be 'union' or 'precise'");
    std::vector<DiftValue> ops;
    for (const auto& [v, t] : operands) ops.push_back({v, t});
    return propagate(*r, op_from(op), ops);
  });

  py::class_<Kernel>(m, "Kernel")
      .def_readonly("name", &Kernel::name)
      .def_readonly("tag_width", &Kernel::tag_width)
      .def_property_readonly("node_count", [](const Kernel& k) { return k.nodes.size(); })
      .def_property_readonly("input_ids", [](const Kernel& k) {
        std::vector<std::string> ids;
        for (const auto& in : k.inputs) ids.push_back(in.id);
        return ids;
      })
      .def("to_json", &kernel_to_json)
      .def("__eq__", [](const Kernel& a, const Kernel& b) { return a == b; });

  m.def("parse_kernel", &parse_or_raise, py::arg("text"));
  m.def("validate", [](const Kernel& k) {
    std::vector<std::string> out;
    for (const auto& d : validate(k)) out.push_back(to_string(d));
    return out;
  });
  m.def("const_fold", [](const Kernel& k) { return const_fold(k); });
  m.def("dead_code_elim", &dead_code_elim);
  m.def("emit_dot", [](const Kernel& k) { return emit_dot(k); });
  m.def("instrument_dot", [](const Kernel& k, const std::string& mode,
                             const std::string& rule) {
    return emit_dot(instrument(k, {k.tag_width, mode_from(mode, rule),
                                   OnException::record}));
  }, py::arg("kernel"), py::arg("mode") = "fine", py::arg("rule") = "union");

  m.def("run_baseline", [](const Kernel& k, const std::string& inputs_json) {
    py::dict out;
    for (const auto& [id, bits] : run_baseline(k, parse_inputs(inputs_json))) {
      out[py::str(id)] = bits;
    }
    return out;
  });
  m.def("run_dift", [](const Kernel& k, const std::string& inputs_json,
                       const std::string& mode, const std::string& rule,
                       const std::string& on_exception) {
    auto policy = parse_on_exception(on_exception);
    if (!policy) throw py::value_error("on_exception must be 'record' or 'halt'");
    const DiftConfig cfg{k.tag_width, mode_from(mode, rule), *policy};
    return report_to_json(run_dift(k, parse_inputs(inputs_json), cfg));
  }, py::arg("kernel"), py::arg("inputs_json") = "{}", py::arg("mode") = "fine",
     py::arg("rule") = "union", py::arg("on_exception") = "record");

  m.def("check_consistency", [](const Kernel& k, const std::string& mode,
                                const std::string& rule, std::size_t samples,
                                std::uint64_t seed) {
    const DiftConfig cfg{k.tag_width, mode_from(mode, rule), OnException::record};
    const ConsistencyReport r = check_consistency(k, cfg, samples, seed);
    py::dict out;
    out["samples"] = r.samples;
    out["value_mismatches"] = r.value_mismatches;
    out["pass_mismatches"] = r.pass_mismatches;
    return out;
  }, py::arg("kernel"), py::arg("mode") = "fine", py::arg("rule") = "union",
     py::arg("samples") = 100, py::arg("seed") = 0);

  m.def("independence_oracle", [](const std::string& op,
                                  const std::vector<BitType>& types,
                                  const std::set<std::size_t>& tainted,
                                  const std::map<std::size_t, py::int_>& fixed,
                                  std::optional<BitType> result_ty) {
    std::map<std::size_t, Int> values;
    for (const auto& [pos, v] : fixed) values[pos] = from_py(v);
    return independence_oracle(op_from(op), types, tainted, values, result_ty);
  }, py::arg("op"), py::arg("types"), py::arg("tainted"), py::arg("fixed"),
     py::arg("result_type") = std::nullopt);

  m.def("fuzz_properties", [](const Kernel& k, std::size_t trials,
                              std::uint64_t seed) {
    const PropertyReport r = fuzz_properties(k, trials, seed);
    py::dict out;
    out["trials"] = r.trials;
    out["skipped"] = r.skipped;
    for (const auto& p : r.properties) out[py::str(p.name)] = p.violations;
    return out;
  }, py::arg("kernel"), py::arg("trials") = 200, py::arg("seed") = 0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> argv{"hlsdift"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = run_cli(argv, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
