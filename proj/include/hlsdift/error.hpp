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

#ifndef HLSDIFT_ERROR_HPP
#define HLSDIFT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hlsdift {

enum class ErrorKind {
  InvalidType,
  DivisionByZero,
  TypeMismatch,
  WidthMismatch,
  ArityMismatch,
  UnknownPolicy,
  BadAddress,
  OutOfBoundsAddress,
  WidthTooLarge,
  InvalidKernel,
  InvalidInputs,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised while executing a kernel; carries the faulting node and the 1-based
// ordinal of that node in the executed schedule.
class EvalError : public Error {
 public:
  EvalError(ErrorKind kind, std::string node_id, std::size_t step,
            const std::string& message)
      : Error(kind, message), node_id_(std::move(node_id)), step_(step) {}

  const std::string& node_id() const { return node_id_; }
  std::size_t step() const { return step_; }

 private:
  std::string node_id_;
  std::size_t step_;
};

}  // namespace hlsdift

#endif  // HLSDIFT_ERROR_HPP
