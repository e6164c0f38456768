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

#include "swarm/projection.hh"

#include <optional>

namespace swarm {

namespace {

class Projector {
 public:
  Projector(const SwarmProtocol& g, const Role& role, const Subscription& sub)
      : g_(g), role_(role), sub_(sub), memo_(g.size()), involved_(g.size()) {
    for (StateId s = 0; s < g.size(); ++s) involved_[s] = roles(g, s, sub).count(role) != 0;
  }

  Machine run() {
    StateId init = visit(g_.initial());
    graph_.initial = init;
    return Machine(graph_).minimized();
  }

 private:
  StateId add_state(std::string name) {
    graph_.state_names.push_back(std::move(name));
    graph_.commands.emplace_back();
    return static_cast<StateId>(graph_.state_names.size() - 1);
  }

  StateId zero() {
    if (!zero_) zero_ = add_state("0");
    return *zero_;
  }

  StateId visit(StateId s) {
    if (!involved_[s]) return zero();
    if (memo_[s]) return *memo_[s];
    StateId m = add_state(g_.state_name(s));
    memo_[s] = m;
    std::map<EventType, std::size_t> first_seen;
    for (auto i : g_.outgoing(s)) {
      const auto& t = g_.transition(i);
      if (t.role == role_) graph_.commands[m].push_back(t.command);
      LogType seen = filter_log_type(t.command.emits, sub_.of(role_));
      if (seen.empty()) {
        if (!involved_[t.to]) continue;
        throw Error(ErrorKind::kNotProjectable,
                    "role " + role_ + " observes nothing of branch " + t.command.name + "@" +
                        t.role + " at state " + g_.state_name(s) + " but is involved afterwards");
      }
      auto [it, fresh] = first_seen.emplace(seen.front(), i);
      if (!fresh) {
        throw Error(ErrorKind::kNondeterministicProjection,
                    "role " + role_ + " cannot tell branches " +
                        g_.transition(it->second).command.name + " and " + t.command.name +
                        " apart at state " + g_.state_name(s) + ": both start with " +
                        seen.front().name());
      }
      StateId target = visit(t.to);
      StateId cur = m;
      for (std::size_t k = 0; k < seen.size(); ++k) {
        StateId next = k + 1 == seen.size()
                           ? target
                           : add_state(g_.state_name(s) + "." + t.command.name + "." +
                                       std::to_string(k + 1));
        graph_.edges.push_back({cur, seen[k], next});
        cur = next;
      }
    }
    return m;
  }

  const SwarmProtocol& g_;
  const Role& role_;
  const Subscription& sub_;
  std::vector<std::optional<StateId>> memo_;
  std::vector<bool> involved_;
  std::optional<StateId> zero_;
  MachineGraph graph_;
};

}  // namespace

Machine project(const SwarmProtocol& g, const Role& role, const Subscription& sub) {
  return Projector(g, role, sub).run();
}

}  // namespace swarm
