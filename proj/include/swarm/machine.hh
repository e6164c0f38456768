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

#ifndef SWARM_MACHINE_HH_
#define SWARM_MACHINE_HH_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "swarm/event_log.hh"

namespace swarm {

using StateId = std::uint32_t;

/// A command `name` emitting the nonempty log type `emits`.
struct CommandLabel {
  std::string name;
  LogType emits;

  friend bool operator==(const CommandLabel&, const CommandLabel&) = default;
  friend auto operator<=>(const CommandLabel&, const CommandLabel&) = default;
};

/// Renders as `name/[t1, t2]`.
std::string to_string(const CommandLabel& label);

struct MachineEdge {
  StateId from = 0;
  EventType type;
  StateId to = 0;
};

/// Unvalidated automaton, the input to Machine and to check_deterministic.
struct MachineGraph {
  StateId initial = 0;
  std::vector<std::string> state_names;
  std::vector<std::vector<CommandLabel>> commands;  // indexed by state
  std::vector<MachineEdge> edges;
};

struct DeterminismViolation {
  StateId state = 0;
  EventType type;
};

/// The first state (by id) with two transitions on one event type, if any.
std::optional<DeterminismViolation> check_deterministic(const MachineGraph& graph);

/**
 * A deterministic finite machine: commands live on states, event types label
 * transitions. All states are reachable from the initial one.
 */
class Machine {
 public:
  /// Throws Error(kInvalidMachine) on nondeterminism, duplicate command names,
  /// empty command types, dangling ids or unreachable states.
  explicit Machine(const MachineGraph& graph);

  /// The one-state machine with no commands and no transitions.
  static Machine terminal();

  StateId initial() const noexcept { return initial_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& state_name(StateId s) const;
  /// Sorted by name.
  const std::vector<CommandLabel>& commands(StateId s) const;
  const std::map<EventType, StateId>& transitions(StateId s) const;
  std::optional<StateId> successor(StateId s, const EventType& type) const;
  bool is_terminal(StateId s) const;

  MachineGraph graph() const;
  /// The sub-machine of states reachable from `s`, with `s` initial.
  Machine rooted_at(StateId s) const;
  /// Smallest equivalent machine, states numbered in breadth-first order.
  Machine minimized() const;

 private:
  Machine() = default;
  void check_state(StateId s) const;

  StateId initial_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<CommandLabel>> commands_;
  std::vector<std::map<EventType, StateId>> trans_;
};

/// Event types with a transition out of `s`. Throws Error(kUnknownState).
EventTypeSet ready(const Machine& m, StateId s);

StateId delta_from(const Machine& m, StateId s, std::span<const Event> events);
StateId delta_from(const Machine& m, StateId s, const LogType& types);
inline StateId delta(const Machine& m, const Log& log) {
  return delta_from(m, m.initial(), log.events());
}
inline StateId delta(const Machine& m, const LogType& types) {
  return delta_from(m, m.initial(), types);
}

std::vector<CommandLabel> enabled_commands(const Machine& m, const Log& log);

/// Hands out consecutive ids of one source, starting at seq `next`.
class FreshIdAllocator {
 public:
  explicit FreshIdAllocator(SourceId source, SeqNo next = 1) : source_(source), next_(next) {}

  EventId take() { return EventId{source_, next_++}; }
  SourceId source() const noexcept { return source_; }
  SeqNo next() const noexcept { return next_; }

 private:
  SourceId source_;
  SeqNo next_;
};

/// Appends the fresh block of command `name`. Throws Error(kCommandNotEnabled).
Log invoke(const Machine& m, const Log& local, const std::string& name, FreshIdAllocator& alloc);

struct EquivalenceResult {
  bool equivalent = false;
  /// Shortest event-type sequence after which the machines differ.
  std::optional<LogType> counterexample;
};

EquivalenceResult equivalent(const Machine& a, const Machine& b);

}  // namespace swarm

#endif  // SWARM_MACHINE_HH_
