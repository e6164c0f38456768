/*
 * Copyright (c) 2026, The swarmbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#ifndef SWARM_ERROR_HH_
#define SWARM_ERROR_HH_

#include <stdexcept>
#include <string>
#include <string_view>

namespace swarm {

enum class ErrorKind {
  kInvalidEventType,
  kInvalidLog,
  kConflictingOrders,
  kVectorOutOfRange,
  kUnknownState,
  kInvalidMachine,
  kInvalidProtocol,
  kCommandNotEnabled,
  kAmbiguousCommand,
  kNotProjectable,
  kNondeterministicProjection,
  kBoundExceeded,
  kInterleavingOutOfRange,
  kNoProgress,
  kUnknownMember,
  kReplayDivergence,
  kParse,
};

std::string_view to_string(ErrorKind kind);

/**
 * The one exception type thrown by the library. The kind discriminates the
 * failure; the message carries the human-readable witness.
 */
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace swarm

#endif  // SWARM_ERROR_HH_
