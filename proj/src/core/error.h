// Copyright 2026 The dyntrack Authors.
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

#ifndef DYNTRACK_CORE_ERROR_H_
#define DYNTRACK_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace dyntrack {

// Failure classes raised by the core. The C API maps each one onto a
// dt_status code, so keep the two lists in sync.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kInconsistentUpdate,
  kUnknownNode,
  kZeroDegree,
  kEmptyGraph,
  kInfeasibleChromosome,
  kLengthMismatch,
  kPartitionMismatch,
  kInconsistentSequence,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dyntrack

#endif  // DYNTRACK_CORE_ERROR_H_
