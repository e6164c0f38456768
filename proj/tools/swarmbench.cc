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

// swarmbench: well-formedness, projection, equivalence, simulation and
// fidelity checks for swarm protocols.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "swarm/effective_type.hh"
#include "swarm/io.hh"
#include "swarm/projection.hh"
#include "swarm/simulator.hh"
#include "swarm/well_formed.hh"

namespace {

using swarm::io::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Inputs {
  std::string protocol;
  std::string subscription;
};

swarm::SwarmProtocol load_protocol(const std::string& path) {
  return swarm::io::protocol_from_json(swarm::io::read_json_file(path));
}

swarm::Subscription load_subscription(const std::string& path) {
  return swarm::io::subscription_from_json(swarm::io::read_json_file(path));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw swarm::Error(swarm::ErrorKind::kParse, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cmd_check(const Inputs& in, const std::string& format) {
  auto graph = swarm::io::protocol_graph_from_json(swarm::io::read_json_file(in.protocol));
  auto sub = load_subscription(in.subscription);
  if (auto v = swarm::check_log_determinism(graph)) {
    std::string msg = "[LogDeterminism] state " + graph.state_names[v->state] +
                      ": two branches start with " + v->head.name();
    if (format == "json") {
      json d{{"rule", "LogDeterminism"},
             {"state", graph.state_names[v->state]},
             {"events", json::array({v->head.name()})},
             {"detail", "two branches start with " + v->head.name()}};
      std::cout << swarm::io::dump(json{{"wellFormed", false}, {"diagnostics", json::array({d})}});
    } else {
      std::cout << msg << "\n";
    }
    return kFailed;
  }
  swarm::SwarmProtocol g(std::move(graph));
  auto report = swarm::check_well_formed(g, sub);
  if (format == "json") {
    json diags = json::array();
    for (const auto& d : report.diagnostics) diags.push_back(swarm::io::to_json(g, d));
    std::cout << swarm::io::dump(json{{"wellFormed", report.well_formed}, {"diagnostics", diags}});
  } else {
    for (const auto& d : report.diagnostics) std::cout << swarm::describe(g, d) << "\n";
    std::cout << (report.well_formed ? "well-formed" : "not well-formed") << "\n";
  }
  return report.well_formed ? kOk : kFailed;
}

int cmd_project(const Inputs& in, const std::string& role, const std::string& format) {
  auto g = load_protocol(in.protocol);
  auto sub = load_subscription(in.subscription);
  swarm::Machine m = swarm::project(g, role, sub);
  if (format == "dot") {
    std::cout << swarm::io::to_dot(m, role);
  } else {
    std::cout << swarm::io::dump(swarm::io::to_json(m));
  }
  return kOk;
}

int cmd_check_machine(const Inputs& in, const std::string& role, const std::string& machine,
                      const std::string& format) {
  auto g = load_protocol(in.protocol);
  auto sub = load_subscription(in.subscription);
  auto m = swarm::io::machine_from_json(swarm::io::read_json_file(machine));
  auto result = swarm::equivalent(m, swarm::project(g, role, sub));
  if (format == "json") {
    json out{{"equivalent", result.equivalent}};
    if (result.counterexample) {
      json c = json::array();
      for (const auto& t : *result.counterexample) c.push_back(t.name());
      out["counterexample"] = c;
    }
    std::cout << swarm::io::dump(out);
  } else if (result.equivalent) {
    std::cout << "equivalent to the projection of role " << role << "\n";
  } else {
    std::cout << "not equivalent to the projection of role " << role
              << "; machines differ after " << swarm::to_string(*result.counterexample) << "\n";
  }
  return result.equivalent ? kOk : kFailed;
}

struct SimulateArgs {
  std::vector<std::string> roles;
  std::size_t depth = 6;
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  std::size_t samples = 1;
  bool atomic_prop = false;
  std::vector<std::string> monitors{"coherence", "fidelity"};
  std::size_t budget = 1'000'000;
  std::string format = "text";
};

int cmd_simulate(const Inputs& in, const SimulateArgs& a) {
  auto g = load_protocol(in.protocol);
  auto sub = load_subscription(in.subscription);
  swarm::ExploreOptions o;
  o.depth = a.depth;
  o.mode = a.mode == "random" ? swarm::ExploreOptions::Mode::kRandom
                              : swarm::ExploreOptions::Mode::kExhaustive;
  o.seed = a.seed;
  o.samples = a.samples;
  o.atomic_prop = a.atomic_prop;
  o.node_budget = a.budget;
  o.monitors.clear();
  for (const auto& m : a.monitors) {
    if (m == "coherence") o.monitors.insert(swarm::Monitor::kCoherence);
    if (m == "fidelity") o.monitors.insert(swarm::Monitor::kFidelity);
    if (m == "deadlock") o.monitors.insert(swarm::Monitor::kDeadlock);
  }
  auto r = swarm::new_realisation(g, sub, a.roles);
  auto report = swarm::explore(r, o);
  if (a.format == "json") {
    json out = swarm::io::to_json(r, report);
    out["complete"] = r.complete;
    std::cout << swarm::io::dump(out);
  } else {
    std::cout << "realisation: " << (r.complete ? "complete" : "partial") << "\n"
              << "states visited: " << report.states_visited << "\n"
              << "transitions: " << report.transitions << "\n"
              << "max depth: " << report.max_depth << "\n"
              << "budget exhausted: " << (report.budget_exhausted ? "yes" : "no") << "\n"
              << "violations: " << report.violation_count << "\n";
    for (const auto& v : report.violations) {
      std::cout << "\n" << swarm::to_string(v.monitor) << ": " << v.detail << "\n";
      for (const auto& s : v.trace.steps) std::cout << "  " << swarm::to_string(s) << "\n";
      std::cout << "  global " << v.trace.global << "\n";
    }
  }
  return report.violation_count == 0 && !report.budget_exhausted ? kOk : kFailed;
}

int cmd_fidelity(const Inputs& in, const std::string& log_file, const std::string& trace_file,
                 const std::string& format) {
  auto g = load_protocol(in.protocol);
  auto sub = load_subscription(in.subscription);
  swarm::Log log;
  if (!trace_file.empty()) {
    auto doc = swarm::io::trace_from_json(swarm::io::read_json_file(trace_file));
    auto r = swarm::new_realisation(doc.protocol, doc.subscription, doc.roles);
    log = swarm::replay(r, doc.trace).global;
  } else {
    swarm::EventTypeSet known = swarm::event_types(g);
    for (const auto& [role, types] : sub.entries()) known.insert(types.begin(), types.end());
    log = swarm::Log(swarm::io::parse_events(read_text(log_file), known));
  }
  auto v = swarm::check_fidelity(log, g, sub);
  if (format == "json") {
    std::cout << swarm::io::dump(swarm::io::to_json(g, v));
  } else if (v.faithful()) {
    std::cout << "Faithful, effective type " << swarm::to_string(v.etype) << "\n";
    for (auto i : v.witness) {
      const auto& t = g.transition(i);
      std::cout << "  " << g.state_name(t.from) << " --" << t.command.name << "@" << t.role
                << swarm::to_string(t.command.emits) << "--> " << g.state_name(t.to) << "\n";
    }
  } else {
    std::cout << "Pending, effective type " << swarm::to_string(v.etype) << ", awaiting "
              << swarm::to_string(v.remainder) << "\n";
  }
  return v.faithful() ? kOk : kFailed;
}

int cmd_graph(const std::string& file, const std::string& kind) {
  auto doc = swarm::io::read_json_file(file);
  if (kind == "machine") {
    std::cout << swarm::io::to_dot(swarm::io::machine_from_json(doc));
  } else {
    std::cout << swarm::io::to_dot(swarm::io::protocol_from_json(doc));
  }
  return kOk;
}

bool is_input_error(swarm::ErrorKind k) {
  using swarm::ErrorKind;
  switch (k) {
    case ErrorKind::kNotProjectable:
    case ErrorKind::kNondeterministicProjection:
      return false;
    default:
      return true;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swarm protocol workbench"};
  app.require_subcommand(1);

  Inputs in;
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("protocol", in.protocol, "Protocol JSON file")->required();
    sub->add_option("subscription", in.subscription, "Subscription JSON file")->required();
  };
  std::string format = "text";
  std::string role;

  auto* check = app.add_subcommand("check", "Check well-formedness");
  add_inputs(check);
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string project_format = "json";
  auto* project = app.add_subcommand("project", "Project the protocol onto a role");
  add_inputs(project);
  project->add_option("role", role, "Role name")->required();
  project->add_option("--format", project_format)->check(CLI::IsMember({"json", "dot"}));

  std::string machine_file;
  auto* check_machine =
      app.add_subcommand("check-machine", "Compare a machine with the projection of a role");
  add_inputs(check_machine);
  check_machine->add_option("role", role, "Role name")->required();
  check_machine->add_option("machine", machine_file, "Machine JSON file")->required();
  check_machine->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Explore the swarm semantics");
  add_inputs(simulate);
  simulate->add_option("--roles", sim.roles, "Role of each member")->required()->delimiter(',');
  simulate->add_option("--depth", sim.depth, "Maximum number of steps");
  simulate->add_option("--mode", sim.mode)->check(CLI::IsMember({"exhaustive", "random"}));
  simulate->add_option("--seed", sim.seed, "Random mode seed");
  simulate->add_option("--samples", sim.samples, "Random mode trace count");
  simulate->add_flag("--atomic-prop", sim.atomic_prop, "Propagate whole blocks only");
  simulate->add_option("--monitor", sim.monitors, "coherence, fidelity, deadlock")
      ->delimiter(',')
      ->check(CLI::IsMember({"coherence", "fidelity", "deadlock"}));
  simulate->add_option("--budget", sim.budget, "Maximum number of distinct states");
  simulate->add_option("--format", sim.format)->check(CLI::IsMember({"text", "json"}));

  std::string log_file, trace_file;
  auto* fidelity = app.add_subcommand("fidelity", "Check eventual fidelity of a log");
  add_inputs(fidelity);
  auto* log_opt = fidelity->add_option("--log", log_file, "Log file, one source:seq:Type per line");
  auto* trace_opt = fidelity->add_option("--trace", trace_file, "Trace JSON file");
  log_opt->excludes(trace_opt);
  fidelity->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string graph_file, graph_kind = "protocol";
  auto* graph = app.add_subcommand("graph", "Render a protocol or machine as DOT");
  graph->add_option("file", graph_file, "Protocol or machine JSON file")->required();
  graph->add_option("--kind", graph_kind)->check(CLI::IsMember({"protocol", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(in, format);
    if (*project) return cmd_project(in, role, project_format);
    if (*check_machine) return cmd_check_machine(in, role, machine_file, format);
    if (*simulate) return cmd_simulate(in, sim);
    if (*fidelity) {
      if (log_file.empty() && trace_file.empty()) {
        std::cerr << "fidelity: one of --log or --trace is required\n";
        return kUsage;
      }
      return cmd_fidelity(in, log_file, trace_file, format);
    }
    if (*graph) return cmd_graph(graph_file, graph_kind);
  } catch (const swarm::Error& e) {
    std::cerr << swarm::to_string(e.kind()) << ": " << e.what() << "\n";
    return is_input_error(e.kind()) ? kUsage : kFailed;
  }
  return kUsage;
}
