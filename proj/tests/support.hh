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

#ifndef SWARM_TESTS_SUPPORT_HH_
#define SWARM_TESTS_SUPPORT_HH_

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "swarm/io.hh"
#include "swarm/simulator.hh"

namespace swarm::test {

inline std::string fixture(const std::string& name) {
  return std::string(SWARM_FIXTURE_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline SwarmProtocol protocol(const std::string& name) {
  return io::protocol_from_json(io::read_json_file(fixture(name + ".json")));
}

inline Subscription subscription(const std::string& name) {
  return io::subscription_from_json(io::read_json_file(fixture(name + ".json")));
}

inline Machine machine(const std::string& name) {
  return io::machine_from_json(io::read_json_file(fixture(name + ".json")));
}

inline Event ev(SourceId source, SeqNo seq, const std::string& type) {
  return Event{EventId{source, seq}, EventType(type), {}};
}

inline Log log(std::vector<Event> events) { return Log(std::move(events)); }

inline std::string ids(const Log& l) {
  std::string out;
  for (const auto& e : l) out += e.type.name();
  return out;
}

inline StateId state_named(const SwarmProtocol& g, const std::string& name) {
  for (StateId s = 0; s < g.size(); ++s) {
    if (g.state_name(s) == name) return s;
  }
  throw Error(ErrorKind::kUnknownState, name);
}

inline std::size_t transition_named(const SwarmProtocol& g, const std::string& from,
                                    const std::string& command) {
  for (std::size_t i = 0; i < g.transitions().size(); ++i) {
    const auto& t = g.transition(i);
    if (g.state_name(t.from) == from && t.command.name == command) return i;
  }
  throw Error(ErrorKind::kUnknownState, from + "/" + command);
}

/// Machine built from (from, type, to) edges and per-state commands.
inline Machine build_machine(std::size_t states, std::vector<MachineEdge> edges,
                             std::vector<std::pair<StateId, CommandLabel>> commands = {}) {
  MachineGraph g;
  for (std::size_t s = 0; s < states; ++s) g.state_names.push_back("m" + std::to_string(s));
  g.commands.resize(states);
  for (auto& [s, c] : commands) g.commands[s].push_back(c);
  g.edges = std::move(edges);
  return Machine(g);
}

/// The part of `g` reachable from `s`, with `s` as its initial state.
inline SwarmProtocol rooted_protocol(const SwarmProtocol& g, StateId s) {
  std::vector<int> renum(g.size(), -1);
  ProtocolGraph out;
  out.name = g.name();
  for (StateId k : reachable_states(g, s)) {
    renum[k] = static_cast<int>(out.state_names.size());
    out.state_names.push_back(g.state_name(k));
  }
  out.initial = static_cast<StateId>(renum[s]);
  for (const auto& t : g.transitions()) {
    if (renum[t.from] < 0) continue;
    out.transitions.push_back(
        {static_cast<StateId>(renum[t.from]), static_cast<StateId>(renum[t.to]), t.role, t.command});
  }
  return SwarmProtocol(out);
}

/// Local step per branch of `path`, each followed by propagation of the whole
/// global log to every other member.
inline Trace sequential_trace(const Realisation& r, const std::vector<std::size_t>& path) {
  Trace t;
  SwarmState s = initial_state(r);
  auto push = [&](Step step) {
    s = apply(r, s, step);
    t.steps.push_back(std::move(step));
  };
  for (auto id : path) {
    const auto& tr = r.protocol.transition(id);
    std::size_t member = 0;
    while (r.roles.at(member) != tr.role) ++member;
    push(LocalStep{member, tr.command.name, 0});
    for (std::size_t i = 0; i < r.roles.size(); ++i) {
      if (!(s.locals[i] == s.global)) push(PropStep{i, prefix_vector(s.global)});
    }
  }
  t.global = s.global;
  return t;
}

}  // namespace swarm::test

#endif  // SWARM_TESTS_SUPPORT_HH_
