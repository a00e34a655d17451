// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flatspan/error.h"

namespace flatspan {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kPrecondition:
      return "precondition";
    case ErrorCode::kNotFound:
      return "not_found";
    case ErrorCode::kBudgetExhausted:
      return "budget_exhausted";
    case ErrorCode::kParse:
      return "parse";
  }
  return "unknown";
}

}  // namespace flatspan
