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

#include "hlsdift/monitor.hpp"

#include "hlsdift/error.hpp"

namespace hlsdift {

namespace {

void check_address(std::uint32_t addr) {
  if (addr > reg::kTagOut) {
    throw Error(ErrorKind::BadAddress,
                "no register at address " + std::to_string(addr));
  }
}

}  // namespace

std::string_view policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::deny_if_any: return "deny_if_any";
    case PolicyKind::deny_if_mask: return "deny_if_mask";
    case PolicyKind::allow_all: return "allow_all";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  if (name == "deny_if_any") return PolicyKind::deny_if_any;
  if (name == "deny_if_mask") return PolicyKind::deny_if_mask;
  if (name == "allow_all") return PolicyKind::allow_all;
  return std::nullopt;
}

Verdict evaluate_policy(const Policy& p, const Tag& t) {
  switch (p.kind) {
    case PolicyKind::allow_all:
      return Verdict::allow;
    case PolicyKind::deny_if_any:
      return t.tainted() ? Verdict::deny : Verdict::allow;
    case PolicyKind::deny_if_mask:
      if (p.mask.width() != t.width()) {
        throw Error(ErrorKind::WidthMismatch,
                    "policy '" + p.name + "' mask width " +
                        std::to_string(p.mask.width()) + " != tag width " +
                        std::to_string(t.width()));
      }
      return (t.bits() & p.mask.bits()) != 0 ? Verdict::deny : Verdict::allow;
  }
  return Verdict::allow;
}

MonitorState::MonitorState(unsigned tag_width) : tag_width_(tag_width) {
  Tag::untainted(tag_width);  // validates the width
}

void MonitorState::add_policy(Policy p) {
  if (p.kind == PolicyKind::deny_if_mask && p.mask.width() != tag_width_) {
    throw Error(ErrorKind::WidthMismatch,
                "policy '" + p.name + "' mask width mismatch");
  }
  const std::string name = p.name;
  if (!policies_.emplace(name, std::move(p)).second) {
    throw Error(ErrorKind::InvalidKernel, "duplicate policy '" + name + "'");
  }
}

void MonitorState::bind_checkpoint(const std::string& checkpoint_id,
                                   const std::string& policy_name) {
  if (policies_.count(policy_name) == 0) {
    throw Error(ErrorKind::UnknownPolicy,
                "checkpoint '" + checkpoint_id + "' names unknown policy '" +
                    policy_name + "'");
  }
  bindings_[checkpoint_id] = policy_name;
}

std::optional<SecurityException> MonitorState::checkpoint(
    const std::string& checkpoint_id, const std::string& node_id,
    const DiftValue& v, std::size_t step) {
  auto bound = bindings_.find(checkpoint_id);
  if (bound == bindings_.end()) {
    throw Error(ErrorKind::UnknownPolicy,
                "checkpoint '" + checkpoint_id + "' has no policy");
  }
  const Policy& policy = policies_.at(bound->second);
  if (v.tag.width() != tag_width_) {
    throw Error(ErrorKind::WidthMismatch, "checkpoint tag width mismatch");
  }
  if (evaluate_policy(policy, v.tag) == Verdict::allow) return std::nullopt;

  SecurityException exc{checkpoint_id, node_id, v.tag.bits(), step,
                        policy.name};
  queue_.push_back(exc);
  regs_.tag_out = v.tag.bits();
  return exc;
}

std::uint32_t MonitorState::reg_read(std::uint32_t addr) const {
  check_address(addr);
  switch (addr) {
    case reg::kStatus: return irq() ? 1U : 0U;
    case reg::kExcCount: return static_cast<std::uint32_t>(queue_.size());
    case reg::kTagIn: return regs_.tag_in;
    default: return regs_.tag_out;
  }
}

void MonitorState::reg_write(std::uint32_t addr, std::uint32_t word) {
  check_address(addr);
  if (addr == reg::kStatus) {
    if ((word & 1U) != 0) queue_.clear();
  } else if (addr == reg::kTagIn) {
    regs_.tag_in = word & tag_mask(tag_width_);
    regs_.tag_in_written = true;
  }
}

std::vector<SecurityException> MonitorState::drain_exceptions() {
  std::vector<SecurityException> out(queue_.begin(), queue_.end());
  queue_.clear();
  return out;
}

std::optional<std::uint32_t> MonitorState::tag_in() const {
  if (!regs_.tag_in_written) return std::nullopt;
  return regs_.tag_in & tag_mask(tag_width_);
}

}  // namespace hlsdift
