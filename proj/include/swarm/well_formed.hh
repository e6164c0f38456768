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

#ifndef SWARM_WELL_FORMED_HH_
#define SWARM_WELL_FORMED_HH_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarm/protocol.hh"

namespace swarm {

enum class WfRule {
  kLogDeterminism,
  kCausalConsistency1,
  kCausalConsistency2,
  kDeterminacy,
  kConfusionFreeness,
};

std::string_view to_string(WfRule rule);

/// One violated condition, located at a protocol state and, where it applies,
/// a branch (transition id) and a role.
struct WfDiagnostic {
  WfRule rule = WfRule::kCausalConsistency1;
  StateId state = 0;
  std::optional<std::size_t> transition;
  std::optional<Role> role;
  std::vector<EventType> events;
  std::string detail;

  friend bool operator==(const WfDiagnostic&, const WfDiagnostic&) = default;
};

std::vector<WfDiagnostic> check_causal_consistency(const SwarmProtocol& g, const Subscription& sub);

/// Causal-consistency diagnostics followed by determinacy diagnostics.
std::vector<WfDiagnostic> check_determinacy(const SwarmProtocol& g, const Subscription& sub);

struct InvarianceVerdict {
  bool invariant = true;
  /// States with a branch emitting the type, ascending.
  std::vector<StateId> emitting_states;
};

/**
 * An event type is invariant when it is never emitted, when all states
 * emitting it are bisimilar, or when every branch emitting it is one and the
 * same branch up to bisimilarity (same role, command and block, bisimilar
 * targets).
 */
InvarianceVerdict check_invariance(const SwarmProtocol& g, const EventType& type);

std::vector<WfDiagnostic> check_confusion_freeness(const SwarmProtocol& g);

struct WfReport {
  bool well_formed = true;
  std::vector<WfDiagnostic> diagnostics;
};

WfReport check_well_formed(const SwarmProtocol& g, const Subscription& sub);

/// One line per diagnostic, as printed by the command-line tool.
std::string describe(const SwarmProtocol& g, const WfDiagnostic& d);

}  // namespace swarm

#endif  // SWARM_WELL_FORMED_HH_
