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

#include "hlsdift/error.hpp"

namespace hlsdift {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidType: return "InvalidType";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UnknownPolicy: return "UnknownPolicy";
    case ErrorKind::BadAddress: return "BadAddress";
    case ErrorKind::OutOfBoundsAddress: return "OutOfBoundsAddress";
    case ErrorKind::WidthTooLarge: return "WidthTooLarge";
    case ErrorKind::InvalidKernel: return "InvalidKernel";
    case ErrorKind::InvalidInputs: return "InvalidInputs";
  }
  return "Unknown";
}

}  // namespace hlsdift
