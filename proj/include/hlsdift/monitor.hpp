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

#ifndef HLSDIFT_MONITOR_HPP
#define HLSDIFT_MONITOR_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlsdift/taint.hpp"

namespace hlsdift {

enum class PolicyKind { deny_if_any, deny_if_mask, allow_all };

std::string_view policy_kind_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view name);

struct Policy {
  std::string name;
  PolicyKind kind = PolicyKind::deny_if_any;
  Tag mask;  // only read by deny_if_mask

  friend bool operator==(const Policy&, const Policy&) = default;
};

enum class Verdict { allow, deny };

/// Throws WidthMismatch for deny_if_mask with a mask of another width.
Verdict evaluate_policy(const Policy& p, const Tag& t);

struct SecurityException {
  std::string checkpoint_id;
  std::string node_id;
  std::uint32_t tag_bits = 0;
  std::size_t step = 0;
  std::string policy_name;

  friend bool operator==(const SecurityException&,
                         const SecurityException&) = default;
};

/// Word addresses of the monitor's I/O register file.
namespace reg {
constexpr std::uint32_t kStatus = 0;    // bit 0: irq pending; write 1 clears
constexpr std::uint32_t kExcCount = 1;  // read-only queue length
constexpr std::uint32_t kTagIn = 2;     // software-supplied input tag
constexpr std::uint32_t kTagOut = 3;    // tag of the last denied checkpoint
}  // namespace reg

/// Registers that hold state of their own; STATUS and EXC_COUNT are derived
/// from the exception queue on every read.
struct RegisterFile {
  std::uint32_t tag_in = 0;
  bool tag_in_written = false;
  std::uint32_t tag_out = 0;
};

/// The security monitor of one kernel: policy table, checkpoint bindings,
/// exception queue, interrupt line and register file.
///
/// Single writer. irq() is true exactly when the queue is nonempty.
class MonitorState {
 public:
  explicit MonitorState(unsigned tag_width);

  unsigned tag_width() const { return tag_width_; }

  /// Throws InvalidKernel on a duplicate name, WidthMismatch on a mask of
  /// another width.
  void add_policy(Policy p);
  /// Throws UnknownPolicy.
  void bind_checkpoint(const std::string& checkpoint_id,
                       const std::string& policy_name);

  /// Checks v.tag against the checkpoint's policy. On deny the exception is
  /// queued, irq raised, TAG_OUT latched, and the exception returned.
  std::optional<SecurityException> checkpoint(const std::string& checkpoint_id,
                                              const std::string& node_id,
                                              const DiftValue& v,
                                              std::size_t step);

  /// Throws BadAddress for addr > 3.
  std::uint32_t reg_read(std::uint32_t addr) const;
  /// Writing STATUS with bit 0 set empties the queue and lowers irq. Writes to
  /// read-only registers are ignored. Throws BadAddress for addr > 3.
  void reg_write(std::uint32_t addr, std::uint32_t word);

  /// Removes and returns every queued exception in arrival order.
  std::vector<SecurityException> drain_exceptions();

  bool irq() const { return !queue_.empty(); }
  const std::deque<SecurityException>& exceptions() const { return queue_; }
  const std::map<std::string, Policy>& policies() const { return policies_; }

  /// Tag word written to TAG_IN by software, masked to the tag width.
  std::optional<std::uint32_t> tag_in() const;

 private:
  unsigned tag_width_;
  std::map<std::string, Policy> policies_;
  std::map<std::string, std::string> bindings_;
  std::deque<SecurityException> queue_;
  RegisterFile regs_;
};

}  // namespace hlsdift

#endif  // HLSDIFT_MONITOR_HPP
