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

#ifndef SWARM_IO_HH_
#define SWARM_IO_HH_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarm/effective_type.hh"
#include "swarm/machine.hh"
#include "swarm/protocol.hh"
#include "swarm/simulator.hh"
#include "swarm/well_formed.hh"

namespace swarm::io {

using nlohmann::json;

/// Parse failures throw Error(kParse); semantic failures keep their own kind.
ProtocolGraph protocol_graph_from_json(const json& doc);
SwarmProtocol protocol_from_json(const json& doc);
json to_json(const SwarmProtocol& g);

Subscription subscription_from_json(const json& doc);
json to_json(const Subscription& sub);

MachineGraph machine_graph_from_json(const json& doc);
Machine machine_from_json(const json& doc);
json to_json(const Machine& m);

/// Reads a JSON file. Throws Error(kParse) if it is missing or malformed.
json read_json_file(const std::string& path);
/// Two-space indented, keys sorted, trailing newline.
std::string dump(const json& doc);

/// One `source:seq:Type` line per event; blank lines are skipped. Types
/// outside `known` (when nonempty) are rejected.
std::vector<Event> parse_events(const std::string& text, const EventTypeSet& known = {});
std::string format_log(const Log& log);

json to_json(const Step& step);
Step step_from_json(const json& doc);

/// Trace document with its initial configuration.
json trace_to_json(const Realisation& r, const Trace& trace);

struct TraceDocument {
  SwarmProtocol protocol;
  Subscription subscription;
  std::vector<Role> roles;
  Trace trace;
};

TraceDocument trace_from_json(const json& doc);

json to_json(const SwarmProtocol& g, const WfDiagnostic& d);
json to_json(const SwarmProtocol& g, const FidelityVerdict& v);
json to_json(const Realisation& r, const ExplorationReport& report);

std::string to_dot(const Machine& m, const std::string& name = "machine");
std::string to_dot(const SwarmProtocol& g);

}  // namespace swarm::io

#endif  // SWARM_IO_HH_
