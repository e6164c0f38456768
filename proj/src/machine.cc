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

#include "swarm/machine.hh"

#include <algorithm>
#include <deque>
#include <set>

#include "swarm/detail/partition.hh"

namespace swarm {

std::string to_string(const CommandLabel& label) { return label.name + "/" + to_string(label.emits); }

std::optional<DeterminismViolation> check_deterministic(const MachineGraph& graph) {
  std::set<std::pair<StateId, EventType>> seen;
  std::optional<DeterminismViolation> first;
  for (const auto& e : graph.edges) {
    if (!seen.emplace(e.from, e.type).second) {
      if (!first || e.from < first->state) first = DeterminismViolation{e.from, e.type};
    }
  }
  return first;
}

Machine::Machine(const MachineGraph& graph) {
  const std::size_t n = graph.state_names.size();
  auto fail = [](const std::string& why) { throw Error(ErrorKind::kInvalidMachine, why); };
  if (n == 0) fail("machine has no states");
  if (graph.commands.size() > n) fail("commands given for unknown states");
  if (graph.initial >= n) fail("initial state out of range");
  if (auto v = check_deterministic(graph)) {
    fail("state " + graph.state_names.at(v->state) + " has two transitions on " + v->type.name());
  }
  initial_ = graph.initial;
  names_ = graph.state_names;
  commands_.assign(n, {});
  trans_.assign(n, {});
  for (std::size_t s = 0; s < graph.commands.size(); ++s) {
    auto cmds = graph.commands[s];
    std::sort(cmds.begin(), cmds.end());
    for (std::size_t k = 0; k < cmds.size(); ++k) {
      if (cmds[k].emits.empty()) fail("command " + cmds[k].name + " emits nothing");
      if (k && cmds[k].name == cmds[k - 1].name) {
        fail("state " + names_[s] + " has two commands named " + cmds[k].name);
      }
    }
    commands_[s] = std::move(cmds);
  }
  for (const auto& e : graph.edges) {
    if (e.from >= n || e.to >= n) fail("transition on " + e.type.name() + " names an unknown state");
    trans_[e.from].emplace(e.type, e.to);
  }
  std::vector<bool> seen(n, false);
  std::vector<StateId> stack{initial_};
  seen[initial_] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const auto& [t, to] : trans_[s]) {
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!seen[s]) fail("state " + names_[s] + " is unreachable");
  }
}

Machine Machine::terminal() {
  MachineGraph g;
  g.state_names = {"0"};
  return Machine(g);
}

void Machine::check_state(StateId s) const {
  if (s >= names_.size()) {
    throw Error(ErrorKind::kUnknownState, "no machine state " + std::to_string(s));
  }
}

const std::string& Machine::state_name(StateId s) const {
  check_state(s);
  return names_[s];
}

const std::vector<CommandLabel>& Machine::commands(StateId s) const {
  check_state(s);
  return commands_[s];
}

const std::map<EventType, StateId>& Machine::transitions(StateId s) const {
  check_state(s);
  return trans_[s];
}

std::optional<StateId> Machine::successor(StateId s, const EventType& type) const {
  const auto& t = transitions(s);
  auto it = t.find(type);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

bool Machine::is_terminal(StateId s) const { return commands(s).empty() && trans_[s].empty(); }

MachineGraph Machine::graph() const {
  MachineGraph g;
  g.initial = initial_;
  g.state_names = names_;
  g.commands = commands_;
  for (StateId s = 0; s < names_.size(); ++s) {
    for (const auto& [t, to] : trans_[s]) g.edges.push_back({s, t, to});
  }
  return g;
}

namespace {

// Breadth-first renumbering of the states reachable from `root`.
MachineGraph renumber(const std::vector<std::string>& names,
                      const std::vector<std::vector<CommandLabel>>& commands,
                      const std::vector<std::map<EventType, StateId>>& trans, StateId root) {
  std::vector<std::optional<StateId>> id(names.size());
  std::vector<StateId> order{root};
  id[root] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const auto& [t, to] : trans[order[k]]) {
      if (!id[to]) {
        id[to] = static_cast<StateId>(order.size());
        order.push_back(to);
      }
    }
  }
  MachineGraph g;
  g.initial = 0;
  for (StateId old : order) {
    g.state_names.push_back(names[old]);
    g.commands.push_back(commands[old]);
    for (const auto& [t, to] : trans[old]) g.edges.push_back({*id[old], t, *id[to]});
  }
  return g;
}

}  // namespace

Machine Machine::rooted_at(StateId s) const {
  check_state(s);
  return Machine(renumber(names_, commands_, trans_, s));
}

Machine Machine::minimized() const {
  const std::size_t n = names_.size();
  std::map<std::vector<CommandLabel>, int> cmd_ids;
  std::map<EventType, int> type_ids;
  std::vector<int> seed(n);
  std::vector<detail::Edges> edges(n);
  for (std::size_t s = 0; s < n; ++s) {
    seed[s] = cmd_ids.try_emplace(commands_[s], static_cast<int>(cmd_ids.size())).first->second;
    for (const auto& [t, to] : trans_[s]) {
      int label = type_ids.try_emplace(t, static_cast<int>(type_ids.size())).first->second;
      edges[s].emplace_back(label, to);
    }
  }
  auto cls = detail::coarsest_partition(seed, edges);
  std::size_t count = 0;
  for (auto c : cls) count = std::max(count, c + 1);
  // Each class is represented by its lowest-numbered state.
  std::vector<std::optional<StateId>> rep(count);
  for (StateId s = 0; s < n; ++s) {
    if (!rep[cls[s]]) rep[cls[s]] = s;
  }
  std::vector<std::string> names(count);
  std::vector<std::vector<CommandLabel>> commands(count);
  std::vector<std::map<EventType, StateId>> trans(count);
  for (std::size_t c = 0; c < count; ++c) {
    StateId s = *rep[c];
    names[c] = names_[s];
    commands[c] = commands_[s];
    for (const auto& [t, to] : trans_[s]) trans[c].emplace(t, static_cast<StateId>(cls[to]));
  }
  return Machine(renumber(names, commands, trans, static_cast<StateId>(cls[initial_])));
}

EventTypeSet ready(const Machine& m, StateId s) {
  EventTypeSet out;
  for (const auto& [t, to] : m.transitions(s)) out.insert(t);
  return out;
}

StateId delta_from(const Machine& m, StateId s, std::span<const Event> events) {
  for (const auto& e : events) {
    if (auto next = m.successor(s, e.type)) s = *next;
  }
  return s;
}

StateId delta_from(const Machine& m, StateId s, const LogType& types) {
  for (const auto& t : types) {
    if (auto next = m.successor(s, t)) s = *next;
  }
  return s;
}

std::vector<CommandLabel> enabled_commands(const Machine& m, const Log& log) {
  return m.commands(delta(m, log));
}

Log invoke(const Machine& m, const Log& local, const std::string& name, FreshIdAllocator& alloc) {
  StateId s = delta(m, local);
  const auto& cmds = m.commands(s);
  auto it = std::find_if(cmds.begin(), cmds.end(), [&](const auto& c) { return c.name == name; });
  if (it == cmds.end()) {
    throw Error(ErrorKind::kCommandNotEnabled,
                "command " + name + " is not enabled in state " + m.state_name(s));
  }
  std::vector<Event> block;
  for (const auto& t : it->emits) block.push_back(Event{alloc.take(), t, {}});
  return local.appended(block);
}

EquivalenceResult equivalent(const Machine& a, const Machine& b) {
  using Pair = std::pair<StateId, StateId>;
  std::map<Pair, std::pair<Pair, std::optional<EventType>>> parent;
  std::deque<Pair> queue;
  Pair start{a.initial(), b.initial()};
  parent.emplace(start, std::make_pair(start, std::nullopt));
  queue.push_back(start);
  auto path_to = [&](Pair p) {
    LogType path;
    while (p != start) {
      const auto& [prev, via] = parent.at(p);
      path.push_back(*via);
      p = prev;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  while (!queue.empty()) {
    Pair p = queue.front();
    queue.pop_front();
    const auto& ta = a.transitions(p.first);
    const auto& tb = b.transitions(p.second);
    bool same_keys = ta.size() == tb.size() &&
                     std::equal(ta.begin(), ta.end(), tb.begin(),
                                [](const auto& x, const auto& y) { return x.first == y.first; });
    if (a.commands(p.first) != b.commands(p.second) || !same_keys) {
      return EquivalenceResult{false, path_to(p)};
    }
    for (const auto& [t, to] : ta) {
      Pair q{to, tb.at(t)};
      if (parent.emplace(q, std::make_pair(p, t)).second) queue.push_back(q);
    }
  }
  return EquivalenceResult{true, std::nullopt};
}

}  // namespace swarm
