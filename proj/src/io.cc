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

#include "swarm/io.hh"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace swarm::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::kParse, what); }

// Runs `f`, turning JSON access errors into Error(kParse).
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    parse_error(std::string(what) + ": " + e.what());
  }
}

LogType log_type_from_json(const json& doc) {
  LogType out;
  for (const auto& t : doc) out.emplace_back(t.get<std::string>());
  return out;
}

json to_json(const LogType& type) {
  json out = json::array();
  for (const auto& t : type) out.push_back(t.name());
  return out;
}

json to_json(const CommandLabel& c) { return json{{"name", c.name}, {"logType", to_json(c.emits)}}; }

// Distinct display names: later duplicates get a numeric suffix.
std::vector<std::string> unique_names(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  std::set<std::string> used(names.begin(), names.end());
  std::set<std::string> taken;
  for (const auto& n : names) {
    std::string name = n;
    for (int k = 2; taken.count(name) || (name != n && used.count(name)); ++k) {
      name = n + "~" + std::to_string(k);
    }
    taken.insert(name);
    out.push_back(name);
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ProtocolGraph protocol_graph_from_json(const json& doc) {
  return guarded("protocol document", [&] {
    ProtocolGraph g;
    if (!doc.is_object()) parse_error("protocol document must be an object");
    g.name = doc.value("name", std::string());
    std::map<std::string, StateId> ids;
    auto id_of = [&](const std::string& name) {
      if (name.empty()) parse_error("empty state name");
      auto [it, fresh] = ids.try_emplace(name, static_cast<StateId>(g.state_names.size()));
      if (fresh) g.state_names.push_back(name);
      return it->second;
    };
    g.initial = id_of(doc.at("initial").get<std::string>());
    for (const auto& t : doc.at("transitions")) {
      ProtocolTransition tr;
      tr.from = id_of(t.at("from").get<std::string>());
      tr.to = id_of(t.at("to").get<std::string>());
      tr.role = t.at("role").get<std::string>();
      tr.command.name = t.at("command").get<std::string>();
      tr.command.emits = log_type_from_json(t.at("logType"));
      if (tr.command.emits.empty()) parse_error("command " + tr.command.name + " emits nothing");
      g.transitions.push_back(std::move(tr));
    }
    return g;
  });
}

SwarmProtocol protocol_from_json(const json& doc) { return SwarmProtocol(protocol_graph_from_json(doc)); }

json to_json(const SwarmProtocol& g) {
  std::vector<json> ts;
  for (const auto& t : g.transitions()) {
    ts.push_back(json{{"from", g.state_name(t.from)},
                      {"to", g.state_name(t.to)},
                      {"role", t.role},
                      {"command", t.command.name},
                      {"logType", to_json(t.command.emits)}});
  }
  std::sort(ts.begin(), ts.end(), [](const json& a, const json& b) {
    auto key = [](const json& j) {
      return std::make_tuple(j["from"].get<std::string>(), j["command"].get<std::string>(),
                             j["role"].get<std::string>(), j["to"].get<std::string>(),
                             j["logType"].dump());
    };
    return key(a) < key(b);
  });
  return json{{"name", g.name()}, {"initial", g.state_name(g.initial())}, {"transitions", ts}};
}

Subscription subscription_from_json(const json& doc) {
  return guarded("subscription document", [&] {
    if (!doc.is_object()) parse_error("subscription document must be an object");
    Subscription sub;
    for (const auto& [role, types] : doc.items()) {
      EventTypeSet set;
      for (const auto& t : types) {
        if (!set.emplace(t.get<std::string>()).second) {
          parse_error("role " + role + " lists " + t.get<std::string>() + " twice");
        }
      }
      sub.set(role, std::move(set));
    }
    return sub;
  });
}

json to_json(const Subscription& sub) {
  json out = json::object();
  for (const auto& [role, types] : sub.entries()) {
    json list = json::array();
    for (const auto& t : types) list.push_back(t.name());
    out[role] = list;
  }
  return out;
}

MachineGraph machine_graph_from_json(const json& doc) {
  return guarded("machine document", [&] {
    if (!doc.is_object()) parse_error("machine document must be an object");
    MachineGraph g;
    std::map<std::string, StateId> ids;
    const json& states = doc.at("states");
    if (!states.is_object()) parse_error("states must be an object");
    for (const auto& [name, body] : states.items()) {
      ids.emplace(name, static_cast<StateId>(g.state_names.size()));
      g.state_names.push_back(name);
    }
    auto id_of = [&](const std::string& name) {
      auto it = ids.find(name);
      if (it == ids.end()) parse_error("unknown state " + name);
      return it->second;
    };
    g.initial = id_of(doc.at("initial").get<std::string>());
    g.commands.resize(g.state_names.size());
    for (const auto& [name, body] : states.items()) {
      StateId s = ids.at(name);
      const json commands = body.value("commands", json::array());
      const json transitions = body.value("transitions", json::object());
      for (const auto& c : commands) {
        g.commands[s].push_back(
            CommandLabel{c.at("name").get<std::string>(), log_type_from_json(c.at("logType"))});
      }
      for (const auto& [type, target] : transitions.items()) {
        g.edges.push_back({s, EventType(type), id_of(target.get<std::string>())});
      }
    }
    return g;
  });
}

Machine machine_from_json(const json& doc) { return Machine(machine_graph_from_json(doc)); }

json to_json(const Machine& m) {
  std::vector<std::string> raw;
  for (StateId s = 0; s < m.size(); ++s) raw.push_back(m.state_name(s));
  auto names = unique_names(raw);
  json states = json::object();
  for (StateId s = 0; s < m.size(); ++s) {
    json cmds = json::array();
    for (const auto& c : m.commands(s)) cmds.push_back(to_json(c));
    json trans = json::object();
    for (const auto& [t, to] : m.transitions(s)) trans[t.name()] = names[to];
    states[names[s]] = json{{"commands", cmds}, {"transitions", trans}};
  }
  return json{{"initial", names[m.initial()]}, {"states", states}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::vector<Event> parse_events(const std::string& text, const EventTypeSet& known) {
  std::vector<Event> out;
  std::istringstream in(text);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto bad = [&](const std::string& why) {
      parse_error("line " + std::to_string(no) + " '" + line + "': " + why);
    };
    auto c1 = line.find(':');
    auto c2 = c1 == std::string::npos ? c1 : line.find(':', c1 + 1);
    if (c2 == std::string::npos) bad("expected source:seq:Type");
    auto number = [&](std::size_t from, std::size_t to) {
      std::uint32_t v = 0;
      auto [p, ec] = std::from_chars(line.data() + from, line.data() + to, v);
      if (ec != std::errc() || p != line.data() + to || v == 0) bad("expected a positive number");
      return v;
    };
    SourceId src = number(0, c1);
    SeqNo seq = number(c1 + 1, c2);
    std::string type = line.substr(c2 + 1);
    if (type.empty()) bad("missing event type");
    if (!known.empty() && !known.count(EventType(type))) bad("unknown event type " + type);
    out.push_back(Event{EventId{src, seq}, EventType(type), {}});
  }
  return out;
}

std::string format_log(const Log& log) {
  std::string out;
  for (const auto& e : log) out += to_string(e) + "\n";
  return out;
}

json to_json(const Step& step) {
  if (const auto* l = std::get_if<LocalStep>(&step)) {
    return json{{"kind", "local"},
                {"member", l->member},
                {"command", l->command},
                {"interleaving", l->interleaving}};
  }
  const auto& p = std::get<PropStep>(step);
  json v = json::object();
  for (const auto& [s, n] : p.target.entries()) v[std::to_string(s)] = n;
  return json{{"kind", "prop"}, {"member", p.member}, {"vector", v}};
}

Step step_from_json(const json& doc) {
  return guarded("trace step", [&]() -> Step {
    std::string kind = doc.at("kind").get<std::string>();
    std::size_t member = doc.at("member").get<std::size_t>();
    if (kind == "local") {
      return LocalStep{member, doc.at("command").get<std::string>(),
                       doc.value("interleaving", std::size_t{0})};
    }
    if (kind != "prop") parse_error("unknown step kind " + kind);
    PrefixVector v;
    for (const auto& [s, n] : doc.at("vector").items()) {
      SourceId src = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), src);
      if (ec != std::errc() || p != s.data() + s.size() || src == 0) {
        parse_error("bad source id " + s);
      }
      v.set(src, n.get<SeqNo>());
    }
    return PropStep{member, v};
  });
}

json trace_to_json(const Realisation& r, const Trace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) steps.push_back(to_json(s));
  json global = json::array();
  for (const auto& e : trace.global) global.push_back(to_string(e));
  return json{{"initial",
               {{"protocol", to_json(r.protocol)},
                {"subscription", to_json(r.subscription)},
                {"roles", r.roles}}},
              {"steps", steps},
              {"global", global}};
}

TraceDocument trace_from_json(const json& doc) {
  const json& init = guarded("trace document", [&]() -> const json& { return doc.at("initial"); });
  TraceDocument t{protocol_from_json(guarded("trace", [&] { return init.at("protocol"); })),
                  subscription_from_json(guarded("trace", [&] { return init.at("subscription"); })),
                  {},
                  {}};
  guarded("trace document", [&] {
    t.roles = init.at("roles").get<std::vector<Role>>();
    for (const auto& s : doc.at("steps")) t.trace.steps.push_back(step_from_json(s));
    std::string lines;
    for (const auto& e : doc.at("global")) lines += e.get<std::string>() + "\n";
    t.trace.global = Log(parse_events(lines));
    return 0;
  });
  return t;
}

namespace {

json branch_json(const SwarmProtocol& g, std::size_t id) {
  const auto& t = g.transition(id);
  return json{{"from", g.state_name(t.from)},
              {"to", g.state_name(t.to)},
              {"role", t.role},
              {"command", t.command.name},
              {"logType", to_json(t.command.emits)}};
}

}  // namespace

json to_json(const SwarmProtocol& g, const WfDiagnostic& d) {
  json out{{"rule", std::string(to_string(d.rule))},
           {"state", g.state_name(d.state)},
           {"events", to_json(LogType(d.events))},
           {"detail", d.detail}};
  if (d.transition) out["branch"] = branch_json(g, *d.transition);
  if (d.role) out["role"] = *d.role;
  return out;
}

json to_json(const SwarmProtocol& g, const FidelityVerdict& v) {
  json witness = json::array();
  for (auto i : v.witness) witness.push_back(branch_json(g, i));
  return json{{"status", v.faithful() ? "Faithful" : "Pending"},
              {"effectiveType", to_json(v.etype)},
              {"witness", witness},
              {"remainder", to_json(v.remainder)}};
}

json to_json(const Realisation& r, const ExplorationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(json{{"monitor", std::string(to_string(v.monitor))},
                              {"detail", v.detail},
                              {"trace", trace_to_json(r, v.trace)}});
  }
  return json{{"statesVisited", report.states_visited},
              {"transitions", report.transitions},
              {"maxDepth", report.max_depth},
              {"budgetExhausted", report.budget_exhausted},
              {"violationCount", report.violation_count},
              {"violations", violations}};
}

std::string to_dot(const Machine& m, const std::string& name) {
  std::vector<std::string> raw;
  for (StateId s = 0; s < m.size(); ++s) raw.push_back(m.state_name(s));
  auto names = unique_names(raw);
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (StateId s = 0; s < m.size(); ++s) {
    os << "  n" << s << " [label=" << quote(names[s]) << (s == m.initial() ? ", style=bold" : "")
       << "];\n";
  }
  for (StateId s = 0; s < m.size(); ++s) {
    for (const auto& c : m.commands(s)) {
      os << "  n" << s << " -> n" << s << " [label=" << quote(to_string(c)) << ", style=dashed];\n";
    }
    for (const auto& [t, to] : m.transitions(s)) {
      os << "  n" << s << " -> n" << to << " [label=" << quote(t.name() + "?") << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const SwarmProtocol& g) {
  std::ostringstream os;
  os << "digraph " << quote(g.name().empty() ? "protocol" : g.name())
     << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (StateId s = 0; s < g.size(); ++s) {
    os << "  n" << s << " [label=" << quote(g.state_name(s))
       << (s == g.initial() ? ", style=bold" : "") << "];\n";
  }
  for (const auto& t : g.transitions()) {
    os << "  n" << t.from << " -> n" << t.to << " [label="
       << quote(t.command.name + "@" + t.role + to_string(t.command.emits)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace swarm::io
