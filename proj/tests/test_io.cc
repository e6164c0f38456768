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

#include <doctest.h>

#include <algorithm>
#include <regex>
#include <sstream>

#include "support.hh"
#include "swarm/projection.hh"

using namespace swarm;
using swarm::test::ev;

namespace {

const char* const kProtocols[] = {"propagation", "ambiguous", "causality", "divergent",
                                  "double_invocation", "log_equivalence", "loop",
                                  "racing_choice", "taxi"};

// Lines of a DOT graph as produced here: a header, node and edge statements,
// and a closing brace.
bool plausible_dot(const std::string& dot, std::size_t& nodes, std::size_t& edges) {
  static const std::regex header(R"(digraph "([^"\\]|\\.)*" \{)");
  static const std::regex attr(R"(  (rankdir=LR|node \[shape=circle\]);)");
  static const std::regex node(R"(  n\d+ \[label="([^"\\]|\\.)*"(, style=bold)?\];)");
  static const std::regex edge(R"(  n\d+ -> n\d+ \[label="([^"\\]|\\.)*"(, style=dashed)?\];)");
  std::istringstream in(dot);
  std::string line;
  nodes = edges = 0;
  if (!std::getline(in, line) || !std::regex_match(line, header)) return false;
  bool closed = false;
  while (std::getline(in, line)) {
    if (closed) return false;
    if (line == "}") {
      closed = true;
    } else if (std::regex_match(line, node)) {
      ++nodes;
    } else if (std::regex_match(line, edge)) {
      ++edges;
    } else if (!std::regex_match(line, attr)) {
      return false;
    }
  }
  return closed;
}

}  // namespace

TEST_CASE("protocol documents round-trip") {
  for (const char* name : kProtocols) {
    auto g = test::protocol(name);
    auto doc = io::to_json(g);
    auto again = io::protocol_from_json(doc);
    CHECK(io::to_json(again) == doc);
    CHECK(io::dump(io::to_json(again)) == io::dump(doc));
  }
}

TEST_CASE("subscription documents round-trip") {
  for (const char* name : {"propagation_sub", "taxi_sub", "causality_sub", "loop_sub"}) {
    auto sub = test::subscription(name);
    CHECK(io::subscription_from_json(io::to_json(sub)) == sub);
  }
  CHECK_THROWS_AS(io::subscription_from_json(io::json::parse(R"({"R": ["a", "a"]})")), Error);
  CHECK_THROWS_AS(io::subscription_from_json(io::json::parse("[1]")), Error);
}

TEST_CASE("machine documents round-trip") {
  for (const char* name : {"office_machine", "passenger_machine", "taxi_machine_listed"}) {
    auto m = test::machine(name);
    auto doc = io::to_json(m);
    auto again = io::machine_from_json(doc);
    CHECK(io::to_json(again) == doc);
    CHECK(equivalent(m, again).equivalent);
  }
  auto g = test::protocol("taxi");
  auto sub = test::subscription("taxi_sub");
  for (const char* role : {"P", "T", "O", "X"}) {
    auto m = project(g, role, sub);
    CHECK(equivalent(io::machine_from_json(io::to_json(m)), m).equivalent);
  }
}

TEST_CASE("malformed documents") {
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kInvalidLog;
  };
  CHECK(kind([] { io::protocol_from_json(io::json::parse(R"({"transitions": []})")); }) ==
        ErrorKind::kParse);
  CHECK(kind([] {
          io::protocol_from_json(io::json::parse(
              R"({"initial": "A", "transitions": [{"from": "A", "to": "B", "role": "R", "command": "c", "logType": []}]})"));
        }) == ErrorKind::kParse);
  CHECK(kind([] {
          io::machine_from_json(io::json::parse(
              R"({"initial": "A", "states": {"A": {"transitions": {"t": "B"}}}})"));
        }) == ErrorKind::kParse);
  CHECK(kind([] { io::read_json_file(test::fixture("no_such_file.json")); }) == ErrorKind::kParse);
  // Well-formed JSON describing a protocol that is not log-deterministic.
  CHECK(kind([] {
          io::protocol_from_json(io::json::parse(
              R"({"initial": "A", "transitions": [
                {"from": "A", "to": "B", "role": "R", "command": "c", "logType": ["t"]},
                {"from": "A", "to": "C", "role": "S", "command": "d", "logType": ["t"]}]})"));
        }) == ErrorKind::kInvalidProtocol);
}

TEST_CASE("log lines") {
  auto text = test::read_text(test::fixture("propagation_run.log"));
  auto events = io::parse_events(text);
  REQUIRE(events.size() == 4);
  CHECK(events[1] == ev(1, 2, "PassengerID"));
  CHECK(io::format_log(Log(events)) == text);
  CHECK(io::parse_events("# comment\n\n1:1:a\r\n").size() == 1);
  for (const char* bad : {"1:1", "0:1:a", "1:x:a", "1:1:", "-1:1:a"}) {
    CHECK_THROWS_AS(io::parse_events(bad), Error);
  }
  // The type is everything after the second colon.
  CHECK(io::parse_events("1:2:3:a")[0].type.name() == "3:a");
  CHECK_THROWS_AS(io::parse_events("1:1:a", make_type_set({"b"})), Error);
  CHECK_NOTHROW(io::parse_events("1:1:a", make_type_set({"a"})));
}

TEST_CASE("steps and traces round-trip") {
  std::vector<Step> steps{LocalStep{0, "c", 3}, PropStep{2, PrefixVector{{{1, 2}, {4, 1}}}}};
  for (const auto& s : steps) CHECK(io::step_from_json(io::to_json(s)) == s);
  CHECK_THROWS_AS(io::step_from_json(io::json::parse(R"({"kind": "jump", "member": 0})")), Error);
  CHECK_THROWS_AS(
      io::step_from_json(io::json::parse(R"({"kind": "prop", "member": 0, "vector": {"x": 1}})")),
      Error);

  auto r = new_realisation(test::protocol("propagation"), test::subscription("propagation_sub_fixed"),
                           {"P", "T", "O"});
  auto path = enumerate_run_paths(r.protocol, 3).back();
  Trace t = test::sequential_trace(r, path);
  auto doc = io::trace_to_json(r, t);
  auto back = io::trace_from_json(doc);
  CHECK(back.roles == r.roles);
  CHECK(back.subscription == r.subscription);
  CHECK(io::to_json(back.protocol) == io::to_json(r.protocol));
  CHECK(back.trace.steps == t.steps);
  CHECK(back.trace.global == t.global);
  CHECK(io::trace_to_json(new_realisation(back.protocol, back.subscription, back.roles), back.trace) ==
        doc);
}

TEST_CASE("machine DOT matches the JSON document") {
  auto g = test::protocol("taxi");
  auto sub = test::subscription("taxi_sub");
  for (const char* role : {"P", "T", "O", "X"}) {
    auto m = project(g, role, sub);
    auto doc = io::to_json(m);
    std::size_t commands = 0, transitions = 0;
    for (const auto& [name, body] : doc["states"].items()) {
      commands += body["commands"].size();
      transitions += body["transitions"].size();
    }
    std::size_t nodes = 0, edges = 0;
    auto dot = io::to_dot(m, role);
    CHECK(plausible_dot(dot, nodes, edges));
    CHECK(nodes == doc["states"].size());
    CHECK(edges == commands + transitions);
    CHECK(static_cast<std::size_t>(std::count(dot.begin(), dot.end(), '?')) == transitions);
  }
}

TEST_CASE("protocol DOT") {
  for (const char* name : kProtocols) {
    auto g = test::protocol(name);
    std::size_t nodes = 0, edges = 0;
    CHECK(plausible_dot(io::to_dot(g), nodes, edges));
    CHECK(nodes == g.size());
    CHECK(edges == g.transitions().size());
  }
}

TEST_CASE("report documents") {
  auto g = test::protocol("propagation");
  auto v = check_fidelity(test::log({ev(1, 1, "Selected")}), g, test::subscription("propagation_sub_fixed"));
  auto doc = io::to_json(g, v);
  CHECK(doc["status"] == "Pending");
  CHECK(doc["remainder"] == io::json::array({"PassengerID"}));
  auto wf = check_well_formed(g, test::subscription("propagation_sub"));
  REQUIRE_FALSE(wf.diagnostics.empty());
  auto d = io::to_json(g, wf.diagnostics[0]);
  CHECK(d["role"] == "T");
  CHECK(d["events"] == io::json::array({"PassengerID"}));
}
