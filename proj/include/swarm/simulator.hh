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

#ifndef SWARM_SIMULATOR_HH_
#define SWARM_SIMULATOR_HH_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "swarm/effective_type.hh"
#include "swarm/event_log.hh"
#include "swarm/machine.hh"
#include "swarm/protocol.hh"

namespace swarm {

/**
 * A swarm whose member i plays roles[i] with the projected machine
 * machines[i]. Member i emits events of source i + 1.
 */
struct Realisation {
  SwarmProtocol protocol;
  Subscription subscription;
  std::vector<Role> roles;
  std::vector<std::shared_ptr<const Machine>> machines;
  /// Every role of the protocol is played by some member.
  bool complete = false;
};

/// Projects every listed role. Propagates projection errors.
Realisation new_realisation(const SwarmProtocol& g, const Subscription& sub,
                            const std::vector<Role>& roles);

inline SourceId source_of(std::size_t member) { return static_cast<SourceId>(member + 1); }

struct SwarmState {
  std::vector<Log> locals;
  Log global;
  /// Last seq of every emitted block, per source.
  std::set<EventId> block_ends;

  PrefixVector vector_of(std::size_t member) const { return prefix_vector(locals.at(member)); }
  bool saturated() const;

  friend bool operator==(const SwarmState&, const SwarmState&) = default;
};

/// The state with empty logs for every member.
SwarmState initial_state(const Realisation& r);

struct LocalStep {
  std::size_t member = 0;
  std::string command;
  std::size_t interleaving = 0;

  friend bool operator==(const LocalStep&, const LocalStep&) = default;
};

struct PropStep {
  std::size_t member = 0;
  PrefixVector target;

  friend bool operator==(const PropStep&, const PropStep&) = default;
};

using Step = std::variant<LocalStep, PropStep>;

std::string to_string(const Step& step);

/// Machine state of `member` after reading its local log.
StateId member_state(const Realisation& r, const SwarmState& s, std::size_t member);

/// Number of global logs step_local can choose from.
std::size_t interleavings(const Realisation& r, const SwarmState& s, std::size_t member,
                          const std::string& command);

/// Throws Error(kCommandNotEnabled), Error(kInterleavingOutOfRange) or
/// Error(kUnknownMember).
SwarmState step_local(const Realisation& r, const SwarmState& s, std::size_t member,
                      const std::string& command, std::size_t interleaving);

/// Throws Error(kNoProgress), Error(kVectorOutOfRange) or Error(kUnknownMember).
SwarmState step_prop(const Realisation& r, const SwarmState& s, std::size_t member,
                     const PrefixVector& target);

SwarmState apply(const Realisation& r, const SwarmState& s, const Step& step);

/// Every member receives the whole global log.
SwarmState saturate(const SwarmState& s);

/// Every local log is a sublog of the global one, the global log holds no
/// other events, and every member holds all of its own events.
bool is_coherent(const SwarmState& s);

struct Successor {
  Step step;
  SwarmState state;
};

/**
 * Local steps (member, command name, interleaving) first, then Prop steps per
 * member in lexicographic vector order. With `atomic_prop`, Prop targets only
 * cut the global log at block boundaries.
 */
std::vector<Successor> enumerate_successors(const Realisation& r, const SwarmState& s,
                                            bool atomic_prop = false);

enum class Monitor { kCoherence, kFidelity, kDeadlock };

std::string_view to_string(Monitor m);

struct Trace {
  std::vector<Step> steps;
  Log global;
};

struct Violation {
  Monitor monitor = Monitor::kCoherence;
  Trace trace;
  std::string detail;
};

/// Saturated, no member has an enabled command, and some member is not in a
/// terminal state.
std::optional<std::string> deadlock(const Realisation& r, const SwarmState& s);

struct ExploreOptions {
  enum class Mode { kExhaustive, kRandom };

  std::size_t depth = 6;
  Mode mode = Mode::kExhaustive;
  std::uint64_t seed = 0;
  std::size_t samples = 1;
  bool atomic_prop = false;
  std::set<Monitor> monitors{Monitor::kCoherence, Monitor::kFidelity};
  /// Distinct states after which exhaustive exploration stops.
  std::size_t node_budget = 1'000'000;
  /// Violations kept in the report; all are counted.
  std::size_t max_violations = 100;
  /// Called once per distinct visited state, in visiting order.
  std::function<void(const SwarmState&)> on_state;
};

struct ExplorationReport {
  std::size_t states_visited = 0;
  std::size_t transitions = 0;
  std::size_t max_depth = 0;
  bool budget_exhausted = false;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;
};

ExplorationReport explore(const Realisation& r, const ExploreOptions& options);

/// Re-executes `trace` from the initial state. Throws Error(kReplayDivergence)
/// if a step fails or the recomputed global log differs from the recorded one.
SwarmState replay(const Realisation& r, const Trace& trace);

}  // namespace swarm

#endif  // SWARM_SIMULATOR_HH_
