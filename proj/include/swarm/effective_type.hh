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

#ifndef SWARM_EFFECTIVE_TYPE_HH_
#define SWARM_EFFECTIVE_TYPE_HH_

#include <cstddef>
#include <span>
#include <vector>

#include "swarm/event_log.hh"
#include "swarm/protocol.hh"

namespace swarm {

struct EffTypeResult {
  LogType etype;
  ProtocolConfig final_config;
  /// Branch ids entered while folding, in order.
  std::vector<std::size_t> path;

  friend bool operator==(const EffTypeResult&, const EffTypeResult&) = default;
};

/**
 * Incremental effective-type fold over one protocol and subscription. Caches
 * per-state role data, so reuse one folder for many logs.
 */
class EffectiveTypeFolder {
 public:
  EffectiveTypeFolder(const SwarmProtocol& g, const Subscription& sub);

  EffTypeResult start() const;
  /// Feeds one event type. Returns true if it is kept in the effective type.
  bool step(EffTypeResult& acc, const EventType& type) const;
  EffTypeResult fold(const LogType& types) const;

  const SwarmProtocol& protocol() const noexcept { return g_; }

 private:
  const SwarmProtocol& g_;
  std::vector<EventTypeSet> observed_;  // types some role of roles(g, s) observes
  std::vector<EventTypeSet> active_;    // union of subscriptions of active roles
};

EffTypeResult effective_type(const LogType& types, const SwarmProtocol& g, const Subscription& sub);
inline EffTypeResult effective_type(const Log& log, const SwarmProtocol& g,
                                    const Subscription& sub) {
  return effective_type(log_type_of(log), g, sub);
}

bool log_equivalent(const Log& a, const Log& b, const SwarmProtocol& g, const Subscription& sub);

struct FidelityVerdict {
  enum class Status { kFaithful, kPending };

  Status status = Status::kFaithful;
  LogType etype;
  /// Branches whose blocks make up the effective type.
  std::vector<std::size_t> witness;
  /// The unconsumed rest of the last block, nonempty iff pending.
  LogType remainder;

  bool faithful() const noexcept { return status == Status::kFaithful; }
};

FidelityVerdict check_fidelity(const Log& log, const SwarmProtocol& g, const Subscription& sub);

/**
 * Brute-force admissibility: is there a set of at most `bound` sequential
 * runs, sharing only a common prefix, whose block-preserving interleavings
 * contain a log over exactly the given events with the same effective type,
 * while every emission block occurs in order in `events`?
 *
 * Blocks are recovered per source from consecutive sequence numbers. Takes a
 * raw event sequence so that block-order violations can be expressed. Throws
 * Error(kBoundExceeded) when the instance is too large to search.
 */
bool admissibility_oracle(std::span<const Event> events, const SwarmProtocol& g,
                          const Subscription& sub, std::size_t bound);

}  // namespace swarm

#endif  // SWARM_EFFECTIVE_TYPE_HH_
