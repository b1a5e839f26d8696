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

#include <map>
#include <set>
#include <string>

#include "hlsdift/error.hpp"
#include "hlsdift/tainted.hpp"

namespace hlsdift {

Kernel const_fold(const Kernel& k, std::vector<Diagnostic>* diagnostics) {
  Kernel out = k;
  out.nodes.clear();

  std::map<std::string, BitValue> known;
  for (const auto& c : k.constants) known.emplace(c.id, c.value);

  for (const auto& n : k.nodes) {
    bool foldable = !is_memory_op(n.op) && n.result.has_value();
    std::vector<BitValue> args;
    for (const auto& a : n.args) {
      auto it = known.find(a);
      if (it == known.end()) {
        foldable = false;
        break;
      }
      args.push_back(it->second);
    }
    if (!foldable) {
      out.nodes.push_back(n);
      continue;
    }

    BitValue folded;
    try {
      if (is_unary_op(n.op)) {
        folded = eval_unop(n.op, args[0], *n.result);
      } else if (n.op == OpKind::mux) {
        folded = select_value(args[0], args[1], args[2], *n.result);
      } else {
        folded = eval_binop(n.op, args[0], args[1], *n.result);
      }
    } catch (const Error& e) {
      if (diagnostics) {
        diagnostics->push_back({Diagnostic::Severity::warning,
                                "node '" + n.id + "'",
                                std::string("not folded: ") + e.what()});
      }
      out.nodes.push_back(n);
      continue;
    }
    known.emplace(n.id, folded);
    out.constants.push_back({n.id, folded});
  }
  return out;
}

Kernel dead_code_elim(const Kernel& k) {
  std::set<std::string> live;
  for (const auto& o : k.outputs) live.insert(o.source);
  for (const auto& c : k.checkpoints) live.insert(c.arg);

  std::vector<bool> keep(k.nodes.size(), false);
  for (std::size_t i = k.nodes.size(); i-- > 0;) {
    const Node& n = k.nodes[i];
    if (n.op != OpKind::store && live.count(n.id) == 0) continue;
    keep[i] = true;
    for (const auto& a : n.args) live.insert(a);
  }

  Kernel out = k;
  out.nodes.clear();
  for (std::size_t i = 0; i < k.nodes.size(); ++i) {
    if (keep[i]) out.nodes.push_back(k.nodes[i]);
  }
  return out;
}

Kernel optimize(const Kernel& k, std::vector<Diagnostic>* diagnostics) {
  return dead_code_elim(const_fold(k, diagnostics));
}

}  // namespace hlsdift
