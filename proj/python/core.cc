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

// Python bindings. Documents travel as JSON strings and logs as
// `source:seq:Type` lines, the same formats the command-line tool reads.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swarm/effective_type.hh"
#include "swarm/io.hh"
#include "swarm/projection.hh"
#include "swarm/simulator.hh"
#include "swarm/well_formed.hh"

namespace py = pybind11;
using swarm::io::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw swarm::Error(swarm::ErrorKind::kParse, e.what());
  }
}

swarm::SwarmProtocol protocol(const std::string& text) {
  return swarm::io::protocol_from_json(parse(text));
}

swarm::Subscription subscription(const std::string& text) {
  return swarm::io::subscription_from_json(parse(text));
}

swarm::Machine machine(const std::string& text) {
  return swarm::io::machine_from_json(parse(text));
}

swarm::Log log(const std::string& text) { return swarm::Log(swarm::io::parse_events(text)); }

std::vector<std::string> names(const swarm::LogType& type) {
  std::vector<std::string> out;
  for (const auto& t : type) out.push_back(t.name());
  return out;
}

std::string check(const std::string& g_text, const std::string& sub_text) {
  auto g = protocol(g_text);
  auto report = swarm::check_well_formed(g, subscription(sub_text));
  json diags = json::array();
  for (const auto& d : report.diagnostics) diags.push_back(swarm::io::to_json(g, d));
  return json{{"wellFormed", report.well_formed}, {"diagnostics", diags}}.dump();
}

std::string project(const std::string& g, const std::string& sub, const std::string& role) {
  return swarm::io::to_json(swarm::project(protocol(g), role, subscription(sub))).dump();
}

py::tuple equivalent(const std::string& a, const std::string& b) {
  auto r = swarm::equivalent(machine(a), machine(b));
  py::object cex = py::none();
  if (r.counterexample) cex = py::cast(names(*r.counterexample));
  return py::make_tuple(r.equivalent, cex);
}

std::string fidelity(const std::string& g_text, const std::string& sub, const std::string& l) {
  auto g = protocol(g_text);
  return swarm::io::to_json(g, swarm::check_fidelity(log(l), g, subscription(sub))).dump();
}

bool admissible(const std::string& g, const std::string& sub, const std::string& l,
                std::size_t bound) {
  auto events = swarm::io::parse_events(l);
  return swarm::admissibility_oracle(events, protocol(g), subscription(sub), bound);
}

std::string simulate(const std::string& g, const std::string& sub, const std::vector<std::string>& roles,
                     std::size_t depth, const std::string& mode, std::uint64_t seed,
                     std::size_t samples, bool atomic_prop, const std::vector<std::string>& monitors,
                     std::size_t budget) {
  auto r = swarm::new_realisation(protocol(g), subscription(sub), roles);
  swarm::ExploreOptions o;
  o.depth = depth;
  if (mode == "random") {
    o.mode = swarm::ExploreOptions::Mode::kRandom;
  } else if (mode != "exhaustive") {
    throw py::value_error("mode must be exhaustive or random");
  }
  o.seed = seed;
  o.samples = samples;
  o.atomic_prop = atomic_prop;
  o.node_budget = budget;
  o.monitors.clear();
  for (const auto& m : monitors) {
    if (m == "coherence") {
      o.monitors.insert(swarm::Monitor::kCoherence);
    } else if (m == "fidelity") {
      o.monitors.insert(swarm::Monitor::kFidelity);
    } else if (m == "deadlock") {
      o.monitors.insert(swarm::Monitor::kDeadlock);
    } else {
      throw py::value_error("unknown monitor " + m);
    }
  }
  auto doc = swarm::io::to_json(r, swarm::explore(r, o));
  doc["complete"] = r.complete;
  return doc.dump();
}

std::string replay(const std::string& trace) {
  auto t = swarm::io::trace_from_json(parse(trace));
  auto r = swarm::new_realisation(t.protocol, t.subscription, t.roles);
  return swarm::io::format_log(swarm::replay(r, t.trace).global);
}

std::vector<std::string> merge(const std::string& a, const std::string& b) {
  std::vector<std::string> out;
  for (const auto& l : swarm::merge(log(a), log(b))) out.push_back(swarm::io::format_log(l));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "swarm protocol checks and simulation";

  static py::exception<swarm::Error> error(m, "SwarmError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const swarm::Error& e) {
      py::tuple args = py::make_tuple(std::string(swarm::to_string(e.kind())), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("check", &check, py::arg("protocol"), py::arg("subscription"));
  m.def("project", &project, py::arg("protocol"), py::arg("subscription"), py::arg("role"));
  m.def("equivalent", &equivalent, py::arg("a"), py::arg("b"));
  m.def(
      "effective_type",
      [](const std::string& g, const std::string& sub, const std::string& l) {
        return names(swarm::effective_type(log(l), protocol(g), subscription(sub)).etype);
      },
      py::arg("protocol"), py::arg("subscription"), py::arg("log"));
  m.def("fidelity", &fidelity, py::arg("protocol"), py::arg("subscription"), py::arg("log"));
  m.def("admissible", &admissible, py::arg("protocol"), py::arg("subscription"), py::arg("log"),
        py::arg("bound"));
  m.def("simulate", &simulate, py::arg("protocol"), py::arg("subscription"), py::arg("roles"),
        py::arg("depth") = 6, py::arg("mode") = "exhaustive", py::arg("seed") = 0,
        py::arg("samples") = 1, py::arg("atomic_prop") = false,
        py::arg("monitors") = std::vector<std::string>{"coherence", "fidelity"},
        py::arg("budget") = 1'000'000);
  m.def("replay", &replay, py::arg("trace"));
  m.def(
      "is_sublog", [](const std::string& a, const std::string& b) { return swarm::is_sublog(log(a), log(b)); },
      py::arg("sub"), py::arg("log"));
  m.def("merge", &merge, py::arg("a"), py::arg("b"));
  m.def(
      "protocol_dot", [](const std::string& g) { return swarm::io::to_dot(protocol(g)); },
      py::arg("protocol"));
  m.def(
      "machine_dot",
      [](const std::string& mach, const std::string& name) { return swarm::io::to_dot(machine(mach), name); },
      py::arg("machine"), py::arg("name") = "machine");
}
