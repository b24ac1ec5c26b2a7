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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spgame {

enum class ErrorCode {
  kInvalidInput,
  kArithmeticOverflow,
  kNoTerminalPath,
  kNegativeCost,
  kOracleViolation,
  kInvalidSubset,
  kInfinitePotential,
  kPreconditionViolated,
  kBlockerExists,
  kWeakPlayerCanForce,
  kCapExceeded,
  // Failures of proof-backed assertions. These should never fire.
  kCycleInH,
  kNoPathInSubgraph,
  kInternalInvariant,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::kNoTerminalPath: return "NoTerminalPath";
    case ErrorCode::kNegativeCost: return "NegativeCost";
    case ErrorCode::kOracleViolation: return "OracleViolation";
    case ErrorCode::kInvalidSubset: return "InvalidSubset";
    case ErrorCode::kInfinitePotential: return "InfinitePotential";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kBlockerExists: return "BlockerExists";
    case ErrorCode::kWeakPlayerCanForce: return "WeakPlayerCanForce";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kCycleInH: return "CycleInH";
    case ErrorCode::kNoPathInSubgraph: return "NoPathInSubgraph";
    case ErrorCode::kInternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

inline bool is_internal(ErrorCode code) {
  return code == ErrorCode::kCycleInH || code == ErrorCode::kNoPathInSubgraph ||
         code == ErrorCode::kInternalInvariant;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Throws kInternalInvariant when a condition that a proof guarantees is false.
inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::kInternalInvariant, what);
}

}  // namespace spgame
