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

#include "swarm/well_formed.hh"

#include <algorithm>
#include <iterator>
#include <set>

namespace swarm {

std::string_view to_string(WfRule rule) {
  switch (rule) {
    case WfRule::kLogDeterminism: return "LogDeterminism";
    case WfRule::kCausalConsistency1: return "CausalConsistency1";
    case WfRule::kCausalConsistency2: return "CausalConsistency2";
    case WfRule::kDeterminacy: return "Determinacy";
    case WfRule::kConfusionFreeness: return "ConfusionFreeness";
  }
  return "Unknown";
}

namespace {

EventTypeSet observed(const LogType& emits, const EventTypeSet& sub) {
  EventTypeSet out;
  for (const auto& t : emits) {
    if (sub.count(t)) out.insert(t);
  }
  return out;
}

std::string branch_name(const ProtocolTransition& t) {
  return t.command.name + "@" + t.role + to_string(t.command.emits);
}

std::string names(const std::vector<EventType>& types) { return to_string(LogType(types)); }

}  // namespace

std::vector<WfDiagnostic> check_causal_consistency(const SwarmProtocol& g, const Subscription& sub) {
  std::vector<WfDiagnostic> out;
  for (StateId s : reachable_states(g, g.initial())) {
    for (auto i : g.outgoing(s)) {
      const auto& t = g.transition(i);
      if (observed(t.command.emits, sub.of(t.role)).empty()) {
        out.push_back({WfRule::kCausalConsistency1, s, i, t.role, t.command.emits,
                       "executing role " + t.role + " observes none of the events of " +
                           branch_name(t)});
      }
      RoleSet later = roles(g, t.to, sub);
      for (const auto& r : active_roles(g, t.to)) {
        EventTypeSet mine = observed(t.command.emits, sub.of(r));
        if (mine.empty()) {
          out.push_back({WfRule::kCausalConsistency2, s, i, r, t.command.emits,
                         "role " + r + " is active after " + branch_name(t) +
                             " but observes none of its events"});
          continue;
        }
        for (const auto& other : later) {
          EventTypeSet theirs = observed(t.command.emits, sub.of(other));
          std::vector<EventType> missing;
          std::set_difference(theirs.begin(), theirs.end(), mine.begin(), mine.end(),
                              std::back_inserter(missing));
          if (missing.empty()) continue;
          out.push_back({WfRule::kCausalConsistency2, s, i, r, missing,
                         "role " + other + " observes " + names(missing) + " of " +
                             branch_name(t) + " but active role " + r + " does not"});
        }
      }
    }
  }
  return out;
}

std::vector<WfDiagnostic> check_determinacy(const SwarmProtocol& g, const Subscription& sub) {
  std::vector<WfDiagnostic> out = check_causal_consistency(g, sub);
  for (StateId s : reachable_states(g, g.initial())) {
    for (auto i : g.outgoing(s)) {
      const auto& t = g.transition(i);
      for (const auto& r : roles(g, t.to, sub)) {
        if (sub.of(r).count(t.head())) continue;
        out.push_back({WfRule::kDeterminacy, s, i, r, {t.head()},
                       "role " + r + " is involved after " + branch_name(t) +
                           " but does not observe its first event " + t.head().name()});
      }
    }
  }
  return out;
}

InvarianceVerdict check_invariance(const SwarmProtocol& g, const EventType& type) {
  InvarianceVerdict v;
  std::vector<std::size_t> emitting;
  std::set<StateId> states;
  for (std::size_t i = 0; i < g.transitions().size(); ++i) {
    const auto& e = g.transition(i).command.emits;
    if (std::find(e.begin(), e.end(), type) != e.end()) {
      emitting.push_back(i);
      states.insert(g.transition(i).from);
    }
  }
  v.emitting_states.assign(states.begin(), states.end());
  if (emitting.empty()) return v;
  auto cls = bisimilarity_classes(g);
  std::set<std::size_t> source_classes;
  for (StateId s : states) source_classes.insert(cls[s]);
  if (source_classes.size() == 1) return v;
  const auto& first = g.transition(emitting.front());
  v.invariant = std::all_of(emitting.begin(), emitting.end(), [&](std::size_t i) {
    const auto& t = g.transition(i);
    return t.role == first.role && t.command == first.command && cls[t.to] == cls[first.to];
  });
  return v;
}

std::vector<WfDiagnostic> check_confusion_freeness(const SwarmProtocol& g) {
  std::vector<WfDiagnostic> out;
  for (const auto& t : guards(g)) {
    auto v = check_invariance(g, t);
    if (v.invariant) continue;
    std::string where;
    for (StateId s : v.emitting_states) where += (where.empty() ? "" : ", ") + g.state_name(s);
    out.push_back({WfRule::kConfusionFreeness, v.emitting_states.front(), std::nullopt,
                   std::nullopt, {t},
                   "guard " + t.name() + " is emitted by unrelated branches at states " + where});
  }
  return out;
}

WfReport check_well_formed(const SwarmProtocol& g, const Subscription& sub) {
  WfReport report;
  if (auto v = check_log_determinism(g.graph())) {
    report.diagnostics.push_back({WfRule::kLogDeterminism, v->state, std::nullopt, std::nullopt,
                                  {v->head},
                                  "two branches start with " + v->head.name()});
  }
  for (auto& d : check_determinacy(g, sub)) report.diagnostics.push_back(std::move(d));
  for (auto& d : check_confusion_freeness(g)) report.diagnostics.push_back(std::move(d));
  report.well_formed = report.diagnostics.empty();
  return report;
}

std::string describe(const SwarmProtocol& g, const WfDiagnostic& d) {
  std::string out = "[" + std::string(to_string(d.rule)) + "] state " + g.state_name(d.state);
  if (d.transition) out += " branch " + branch_name(g.transition(*d.transition));
  if (d.role) out += " role " + *d.role;
  out += " events " + names(d.events) + ": " + d.detail;
  return out;
}

}  // namespace swarm
