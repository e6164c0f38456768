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

#include "swarm/protocol.hh"

#include <algorithm>
#include <tuple>

#include "swarm/detail/partition.hh"

namespace swarm {

std::optional<LogDeterminismViolation> check_log_determinism(const ProtocolGraph& graph) {
  std::map<StateId, std::set<EventType>> heads;
  std::optional<LogDeterminismViolation> first;
  for (const auto& t : graph.transitions) {
    if (t.command.emits.empty()) continue;
    if (!heads[t.from].insert(t.head()).second) {
      if (!first || t.from < first->state) first = LogDeterminismViolation{t.from, t.head()};
    }
  }
  return first;
}

SwarmProtocol::SwarmProtocol(ProtocolGraph graph) : graph_(std::move(graph)) {
  auto fail = [this](const std::string& why) {
    throw Error(ErrorKind::kInvalidProtocol,
                (graph_.name.empty() ? std::string("protocol") : graph_.name) + ": " + why);
  };
  const std::size_t n = graph_.state_names.size();
  if (n == 0) fail("no states");
  if (graph_.initial >= n) fail("initial state out of range");
  out_.assign(n, {});
  for (std::size_t i = 0; i < graph_.transitions.size(); ++i) {
    const auto& t = graph_.transitions[i];
    if (t.from >= n || t.to >= n) fail("transition " + t.command.name + " names an unknown state");
    if (t.command.emits.empty()) fail("command " + t.command.name + " emits nothing");
    if (t.role.empty()) fail("command " + t.command.name + " has no role");
    out_[t.from].push_back(i);
  }
  if (auto v = check_log_determinism(graph_)) {
    fail("state " + graph_.state_names[v->state] + " has two branches starting with " +
         v->head.name());
  }
  std::vector<bool> seen(n, false);
  std::vector<StateId> stack{graph_.initial};
  seen[graph_.initial] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (auto i : out_[s]) {
      StateId to = graph_.transitions[i].to;
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!seen[s]) fail("state " + graph_.state_names[s] + " is unreachable");
  }
}

const std::string& SwarmProtocol::state_name(StateId s) const {
  if (s >= graph_.state_names.size()) {
    throw Error(ErrorKind::kUnknownState, "no protocol state " + std::to_string(s));
  }
  return graph_.state_names[s];
}

const std::vector<std::size_t>& SwarmProtocol::outgoing(StateId s) const {
  if (s >= out_.size()) throw Error(ErrorKind::kUnknownState, "no protocol state " + std::to_string(s));
  return out_[s];
}

std::optional<std::size_t> SwarmProtocol::branch_with_head(StateId s, const EventType& head) const {
  for (auto i : outgoing(s)) {
    if (graph_.transitions[i].head() == head) return i;
  }
  return std::nullopt;
}

const EventTypeSet& Subscription::of(const Role& role) const {
  static const EventTypeSet kEmpty;
  auto it = map_.find(role);
  return it == map_.end() ? kEmpty : it->second;
}

Subscription Subscription::universal(const SwarmProtocol& g) {
  Subscription sub;
  auto all = event_types(g);
  for (const auto& r : protocol_roles(g)) sub.set(r, all);
  return sub;
}

RoleSet protocol_roles(const SwarmProtocol& g) {
  RoleSet out;
  for (const auto& t : g.transitions()) out.insert(t.role);
  return out;
}

RoleSet active_roles(const SwarmProtocol& g, StateId s) {
  RoleSet out;
  for (auto i : g.outgoing(s)) out.insert(g.transition(i).role);
  return out;
}

std::vector<StateId> reachable_states(const SwarmProtocol& g, StateId s) {
  std::vector<bool> seen(g.size(), false);
  std::vector<StateId> stack{s};
  g.outgoing(s);
  seen[s] = true;
  while (!stack.empty()) {
    StateId cur = stack.back();
    stack.pop_back();
    for (auto i : g.outgoing(cur)) {
      StateId to = g.transition(i).to;
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId k = 0; k < g.size(); ++k) {
    if (seen[k]) out.push_back(k);
  }
  return out;
}

RoleSet roles(const SwarmProtocol& g, StateId s, const Subscription& sub) {
  RoleSet out;
  for (StateId st : reachable_states(g, s)) {
    for (auto i : g.outgoing(st)) {
      const auto& t = g.transition(i);
      out.insert(t.role);
      for (const auto& [r, types] : sub.entries()) {
        if (out.count(r)) continue;
        if (std::any_of(t.command.emits.begin(), t.command.emits.end(),
                        [&](const EventType& e) { return types.count(e) != 0; })) {
          out.insert(r);
        }
      }
    }
  }
  return out;
}

EventTypeSet event_types(const SwarmProtocol& g) {
  EventTypeSet out;
  for (const auto& t : g.transitions()) out.insert(t.command.emits.begin(), t.command.emits.end());
  return out;
}

EventTypeSet guards(const SwarmProtocol& g) {
  EventTypeSet out;
  for (const auto& t : g.transitions()) out.insert(t.head());
  return out;
}

ProtocolConfig protocol_delta(const SwarmProtocol& g, const LogType& types) {
  ProtocolConfig cfg{g.initial(), {}};
  for (const auto& t : types) {
    if (!cfg.pending.empty()) {
      if (cfg.pending.front() == t) cfg.pending.erase(cfg.pending.begin());
      continue;
    }
    if (auto i = g.branch_with_head(cfg.state, t)) {
      const auto& tr = g.transition(*i);
      cfg.state = tr.to;
      cfg.pending.assign(tr.command.emits.begin() + 1, tr.command.emits.end());
    }
  }
  return cfg;
}

Log protocol_step(const SwarmProtocol& g, const Log& log, const std::string& command,
                  FreshIdAllocator& alloc, const std::optional<EventType>& head) {
  ProtocolConfig cfg = protocol_delta(g, log);
  if (!cfg.pending.empty()) {
    throw Error(ErrorKind::kCommandNotEnabled,
                "block still pending " + to_string(cfg.pending) + ", " + command + " not enabled");
  }
  std::vector<std::size_t> hits;
  for (auto i : g.outgoing(cfg.state)) {
    const auto& t = g.transition(i);
    if (t.command.name == command && (!head || t.head() == *head)) hits.push_back(i);
  }
  if (hits.empty()) {
    throw Error(ErrorKind::kCommandNotEnabled,
                "command " + command + " is not enabled in state " + g.state_name(cfg.state));
  }
  if (hits.size() > 1) {
    throw Error(ErrorKind::kAmbiguousCommand,
                "state " + g.state_name(cfg.state) + " has several branches named " + command);
  }
  std::vector<Event> block;
  for (const auto& t : g.transition(hits.front()).command.emits) {
    block.push_back(Event{alloc.take(), t, {}});
  }
  return log.appended(block);
}

std::vector<std::vector<std::size_t>> enumerate_run_paths(const SwarmProtocol& g,
                                                          std::size_t max_steps) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  auto walk = [&](auto&& self, StateId s) -> void {
    out.push_back(path);
    if (path.size() == max_steps) return;
    for (auto i : g.outgoing(s)) {
      path.push_back(i);
      self(self, g.transition(i).to);
      path.pop_back();
    }
  };
  walk(walk, g.initial());
  return out;
}

LogType run_log_type(const SwarmProtocol& g, const std::vector<std::size_t>& path) {
  LogType out;
  for (auto i : path) {
    const auto& e = g.transition(i).command.emits;
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

std::set<LogType> enumerate_runs(const SwarmProtocol& g, std::size_t max_steps) {
  std::set<LogType> out;
  for (const auto& p : enumerate_run_paths(g, max_steps)) out.insert(run_log_type(g, p));
  return out;
}

std::vector<std::size_t> bisimilarity_classes(const SwarmProtocol& g) {
  std::map<std::tuple<Role, std::string, LogType>, int> labels;
  std::vector<int> seed(g.size(), 0);
  std::vector<detail::Edges> edges(g.size());
  for (const auto& t : g.transitions()) {
    auto key = std::make_tuple(t.role, t.command.name, t.command.emits);
    int label = labels.try_emplace(key, static_cast<int>(labels.size())).first->second;
    edges[t.from].emplace_back(label, t.to);
  }
  return detail::coarsest_partition(seed, edges);
}

}  // namespace swarm
