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

#ifndef SWARM_PROTOCOL_HH_
#define SWARM_PROTOCOL_HH_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swarm/event_log.hh"
#include "swarm/machine.hh"

namespace swarm {

using Role = std::string;
using RoleSet = std::set<Role>;

/// The branch `command@role<emits>` from `from` to `to`.
struct ProtocolTransition {
  StateId from = 0;
  StateId to = 0;
  Role role;
  CommandLabel command;

  const EventType& head() const { return command.emits.front(); }
  friend bool operator==(const ProtocolTransition&, const ProtocolTransition&) = default;
};

/// Unvalidated protocol automaton.
struct ProtocolGraph {
  std::string name;
  StateId initial = 0;
  std::vector<std::string> state_names;
  std::vector<ProtocolTransition> transitions;
};

struct LogDeterminismViolation {
  StateId state = 0;
  EventType head;
};

/// The first state whose outgoing branches share a head event type, if any.
std::optional<LogDeterminismViolation> check_log_determinism(const ProtocolGraph& graph);

/**
 * A log-deterministic swarm protocol whose states are all reachable from the
 * initial one. Transitions keep their input order; their index is their id.
 */
class SwarmProtocol {
 public:
  /// Throws Error(kInvalidProtocol).
  explicit SwarmProtocol(ProtocolGraph graph);

  const std::string& name() const noexcept { return graph_.name; }
  StateId initial() const noexcept { return graph_.initial; }
  std::size_t size() const noexcept { return graph_.state_names.size(); }
  const std::string& state_name(StateId s) const;
  const std::vector<ProtocolTransition>& transitions() const noexcept { return graph_.transitions; }
  const ProtocolTransition& transition(std::size_t id) const { return graph_.transitions.at(id); }
  /// Ids of the branches leaving `s`. Throws Error(kUnknownState).
  const std::vector<std::size_t>& outgoing(StateId s) const;
  /// The branch at `s` whose block starts with `head`.
  std::optional<std::size_t> branch_with_head(StateId s, const EventType& head) const;
  const ProtocolGraph& graph() const noexcept { return graph_; }

 private:
  ProtocolGraph graph_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Role -> observed event types. Roles without an entry observe nothing.
class Subscription {
 public:
  Subscription() = default;
  Subscription(std::initializer_list<std::pair<const Role, EventTypeSet>> entries)
      : map_(entries) {}

  const EventTypeSet& of(const Role& role) const;
  void set(const Role& role, EventTypeSet types) { map_[role] = std::move(types); }
  void add(const Role& role, const EventType& type) { map_[role].insert(type); }
  const std::map<Role, EventTypeSet>& entries() const noexcept { return map_; }

  /// Every role of `g` observes every event type of `g`.
  static Subscription universal(const SwarmProtocol& g);

  friend bool operator==(const Subscription&, const Subscription&) = default;

 private:
  std::map<Role, EventTypeSet> map_;
};

/// Protocol state plus the rest of the current block still expected.
struct ProtocolConfig {
  StateId state = 0;
  LogType pending;

  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

RoleSet protocol_roles(const SwarmProtocol& g);
RoleSet active_roles(const SwarmProtocol& g, StateId s);
/// Roles that can still act or observe something from `s` on.
RoleSet roles(const SwarmProtocol& g, StateId s, const Subscription& sub);
EventTypeSet event_types(const SwarmProtocol& g);
EventTypeSet guards(const SwarmProtocol& g);
/// States reachable from `s`, including `s`, in ascending order.
std::vector<StateId> reachable_states(const SwarmProtocol& g, StateId s);

ProtocolConfig protocol_delta(const SwarmProtocol& g, const LogType& types);
inline ProtocolConfig protocol_delta(const SwarmProtocol& g, const Log& log) {
  return protocol_delta(g, log_type_of(log));
}

/**
 * Executes branch `command` (disambiguated by `head` when the current state
 * has several branches of that name) and appends its fresh block. Throws
 * Error(kCommandNotEnabled) or Error(kAmbiguousCommand).
 */
Log protocol_step(const SwarmProtocol& g, const Log& log, const std::string& command,
                  FreshIdAllocator& alloc, const std::optional<EventType>& head = std::nullopt);

/// Sequences of branch ids taken by sequential runs of at most `max_steps` steps.
std::vector<std::vector<std::size_t>> enumerate_run_paths(const SwarmProtocol& g,
                                                          std::size_t max_steps);
/// The log type of a branch sequence.
LogType run_log_type(const SwarmProtocol& g, const std::vector<std::size_t>& path);
std::set<LogType> enumerate_runs(const SwarmProtocol& g, std::size_t max_steps);

/// Bisimilarity classes of protocol states, numbered by first occurrence.
std::vector<std::size_t> bisimilarity_classes(const SwarmProtocol& g);

}  // namespace swarm

#endif  // SWARM_PROTOCOL_HH_
