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

#include "swarm/simulator.hh"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "swarm/projection.hh"

namespace swarm {

Realisation new_realisation(const SwarmProtocol& g, const Subscription& sub,
                            const std::vector<Role>& roles) {
  Realisation r{g, sub, roles, {}, false};
  std::map<Role, std::shared_ptr<const Machine>> cache;
  for (const auto& role : roles) {
    auto& m = cache[role];
    if (!m) m = std::make_shared<const Machine>(project(g, role, sub));
    r.machines.push_back(m);
  }
  RoleSet present(roles.begin(), roles.end());
  RoleSet needed = protocol_roles(g);
  r.complete = std::includes(present.begin(), present.end(), needed.begin(), needed.end());
  return r;
}

bool SwarmState::saturated() const {
  return std::all_of(locals.begin(), locals.end(), [&](const Log& l) { return l == global; });
}

SwarmState initial_state(const Realisation& r) {
  SwarmState s;
  s.locals.assign(r.roles.size(), Log{});
  return s;
}

std::string to_string(const Step& step) {
  if (const auto* l = std::get_if<LocalStep>(&step)) {
    return "local member=" + std::to_string(l->member) + " command=" + l->command +
           " interleaving=" + std::to_string(l->interleaving);
  }
  const auto& p = std::get<PropStep>(step);
  return "prop member=" + std::to_string(p.member) + " vector=" + to_string(p.target);
}

namespace {

void check_member(const Realisation& r, std::size_t member) {
  if (member >= r.roles.size()) {
    throw Error(ErrorKind::kUnknownMember, "no member " + std::to_string(member));
  }
}

Log invoked(const Realisation& r, const SwarmState& s, std::size_t member,
            const std::string& command) {
  check_member(r, member);
  const Log& local = s.locals[member];
  SourceId src = source_of(member);
  FreshIdAllocator alloc(src, prefix_vector(local).get(src) + 1);
  return invoke(*r.machines[member], local, command, alloc);
}

SwarmState with_local(const SwarmState& s, std::size_t member, Log local, Log global) {
  SwarmState next = s;
  next.block_ends.insert(local.events().back().id);
  next.locals[member] = std::move(local);
  next.global = std::move(global);
  return next;
}

}  // namespace

StateId member_state(const Realisation& r, const SwarmState& s, std::size_t member) {
  check_member(r, member);
  return delta(*r.machines[member], s.locals[member]);
}

std::size_t interleavings(const Realisation& r, const SwarmState& s, std::size_t member,
                          const std::string& command) {
  return merge(s.global, invoked(r, s, member, command)).size();
}

SwarmState step_local(const Realisation& r, const SwarmState& s, std::size_t member,
                      const std::string& command, std::size_t interleaving) {
  Log local = invoked(r, s, member, command);
  auto merged = merge(s.global, local);
  if (interleaving >= merged.size()) {
    throw Error(ErrorKind::kInterleavingOutOfRange,
                "interleaving " + std::to_string(interleaving) + " of " +
                    std::to_string(merged.size()));
  }
  return with_local(s, member, std::move(local), std::move(merged[interleaving]));
}

SwarmState step_prop(const Realisation& r, const SwarmState& s, std::size_t member,
                     const PrefixVector& target) {
  check_member(r, member);
  PrefixVector cur = s.vector_of(member);
  if (target == cur) {
    throw Error(ErrorKind::kNoProgress, "member " + std::to_string(member) + " already has " +
                                            to_string(target));
  }
  if (!cur.dominated_by(target) || !target.dominated_by(prefix_vector(s.global))) {
    throw Error(ErrorKind::kVectorOutOfRange,
                "vector " + to_string(target) + " is not between " + to_string(cur) + " and " +
                    to_string(prefix_vector(s.global)));
  }
  SwarmState next = s;
  next.locals[member] = restrict_to_vector(s.global, target);
  return next;
}

SwarmState apply(const Realisation& r, const SwarmState& s, const Step& step) {
  if (const auto* l = std::get_if<LocalStep>(&step)) {
    return step_local(r, s, l->member, l->command, l->interleaving);
  }
  const auto& p = std::get<PropStep>(step);
  return step_prop(r, s, p.member, p.target);
}

SwarmState saturate(const SwarmState& s) {
  SwarmState next = s;
  for (auto& l : next.locals) l = s.global;
  return next;
}

bool is_coherent(const SwarmState& s) {
  std::set<EventId> covered;
  for (std::size_t i = 0; i < s.locals.size(); ++i) {
    const Log& l = s.locals[i];
    if (!is_sublog(l, s.global)) return false;
    for (const auto& e : l) covered.insert(e.id);
    SourceId own = source_of(i);
    for (const auto& e : s.global) {
      if (e.id.source == own && !l.contains(e.id)) return false;
    }
  }
  return covered.size() == s.global.size();
}

std::vector<Successor> enumerate_successors(const Realisation& r, const SwarmState& s,
                                            bool atomic_prop) {
  std::vector<Successor> out;
  for (std::size_t i = 0; i < r.roles.size(); ++i) {
    for (const auto& cmd : r.machines[i]->commands(member_state(r, s, i))) {
      Log local = invoked(r, s, i, cmd.name);
      auto merged = merge(s.global, local);
      for (std::size_t k = 0; k < merged.size(); ++k) {
        out.push_back({LocalStep{i, cmd.name, k}, with_local(s, i, local, std::move(merged[k]))});
      }
    }
  }
  PrefixVector full = prefix_vector(s.global);
  for (std::size_t i = 0; i < r.roles.size(); ++i) {
    PrefixVector cur = s.vector_of(i);
    if (cur == full) continue;
    std::vector<std::pair<SourceId, std::vector<SeqNo>>> axes;
    for (const auto& [src, top] : full.entries()) {
      std::vector<SeqNo> values{cur.get(src)};
      for (SeqNo q = cur.get(src) + 1; q <= top; ++q) {
        if (!atomic_prop || s.block_ends.count(EventId{src, q})) values.push_back(q);
      }
      axes.emplace_back(src, std::move(values));
    }
    std::vector<std::size_t> pick(axes.size(), 0);
    for (bool done = axes.empty(); !done;) {
      PrefixVector v;
      for (std::size_t a = 0; a < axes.size(); ++a) v.set(axes[a].first, axes[a].second[pick[a]]);
      if (v != cur) {
        SwarmState next = s;
        next.locals[i] = restrict_to_vector(s.global, v);
        out.push_back({PropStep{i, v}, std::move(next)});
      }
      for (std::size_t a = axes.size();;) {
        if (a == 0) {
          done = true;
          break;
        }
        --a;
        if (++pick[a] < axes[a].second.size()) break;
        pick[a] = 0;
      }
    }
  }
  return out;
}

std::string_view to_string(Monitor m) {
  switch (m) {
    case Monitor::kCoherence: return "coherence";
    case Monitor::kFidelity: return "fidelity";
    case Monitor::kDeadlock: return "deadlock";
  }
  return "unknown";
}

std::optional<std::string> deadlock(const Realisation& r, const SwarmState& s) {
  if (!s.saturated()) return std::nullopt;
  std::vector<std::size_t> stuck;
  for (std::size_t i = 0; i < r.roles.size(); ++i) {
    StateId st = member_state(r, s, i);
    if (!r.machines[i]->commands(st).empty()) return std::nullopt;
    if (!r.machines[i]->is_terminal(st)) stuck.push_back(i);
  }
  if (stuck.empty()) return std::nullopt;
  std::string out;
  for (auto i : stuck) {
    if (!out.empty()) out += "; ";
    StateId st = member_state(r, s, i);
    EventTypeSet expected = ready(*r.machines[i], st);
    out += "member " + std::to_string(i) + " (" + r.roles[i] + ") waits in state " +
           r.machines[i]->state_name(st) + " expecting " +
           to_string(LogType(expected.begin(), expected.end()));
  }
  return out;
}

namespace {

std::string state_key(const SwarmState& s) {
  std::string k;
  for (const auto& e : s.global) k += to_string(e) + ";";
  for (std::size_t i = 0; i < s.locals.size(); ++i) k += "|" + to_string(s.vector_of(i));
  k += "|";
  for (const auto& id : s.block_ends) k += std::to_string(id.source) + "." + std::to_string(id.seq) + ",";
  return k;
}

class Explorer {
 public:
  Explorer(const Realisation& r, const ExploreOptions& o)
      : r_(r), o_(o), folder_(r.protocol, r.subscription) {}

  ExplorationReport run() {
    if (o_.mode == ExploreOptions::Mode::kExhaustive) {
      exhaustive();
    } else {
      random();
    }
    return std::move(report_);
  }

 private:
  struct Node {
    SwarmState state;
    std::optional<std::size_t> parent;
    std::optional<Step> step;
    std::size_t depth = 0;
  };

  Trace trace_to(std::size_t n) const {
    Trace t;
    t.global = nodes_[n].state.global;
    for (std::optional<std::size_t> cur = n; nodes_[*cur].parent; cur = nodes_[*cur].parent) {
      t.steps.push_back(*nodes_[*cur].step);
    }
    std::reverse(t.steps.begin(), t.steps.end());
    return t;
  }

  void record(Monitor m, std::size_t n, std::string detail) {
    ++report_.violation_count;
    if (report_.violations.size() < o_.max_violations) {
      report_.violations.push_back({m, trace_to(n), std::move(detail)});
    }
  }

  void check(std::size_t n) {
    const SwarmState& s = nodes_[n].state;
    if (o_.on_state) o_.on_state(s);
    if (o_.monitors.count(Monitor::kCoherence) && !is_coherent(s)) {
      record(Monitor::kCoherence, n, "state is not coherent");
    }
    if (o_.monitors.count(Monitor::kFidelity)) {
      auto eff = folder_.fold(log_type_of(s.global));
      if (!eff.final_config.pending.empty()) {
        record(Monitor::kFidelity, n,
               "global log leaves " + to_string(eff.final_config.pending) + " pending");
      }
    }
    if (o_.monitors.count(Monitor::kDeadlock)) {
      if (auto why = deadlock(r_, s)) record(Monitor::kDeadlock, n, *why);
    }
  }

  // Registers `s`; returns its node id if it was not seen before.
  std::optional<std::size_t> visit(SwarmState s, std::optional<std::size_t> parent,
                                   std::optional<Step> step, std::size_t depth) {
    auto [it, fresh] = index_.try_emplace(state_key(s), nodes_.size());
    if (!fresh) return std::nullopt;
    nodes_.push_back({std::move(s), parent, std::move(step), depth});
    report_.states_visited = nodes_.size();
    report_.max_depth = std::max(report_.max_depth, depth);
    check(nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  void exhaustive() {
    visit(initial_state(r_), std::nullopt, std::nullopt, 0);
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      if (nodes_[n].depth >= o_.depth) continue;
      auto succ = enumerate_successors(r_, nodes_[n].state, o_.atomic_prop);
      for (auto& sc : succ) {
        ++report_.transitions;
        if (nodes_.size() >= o_.node_budget) {
          report_.budget_exhausted = true;
          return;
        }
        visit(std::move(sc.state), n, std::move(sc.step), nodes_[n].depth + 1);
      }
    }
  }

  void random() {
    std::mt19937_64 gen(o_.seed);
    for (std::size_t sample = 0; sample < o_.samples; ++sample) {
      // Each sample is its own path; states are still deduplicated for counting.
      std::size_t cur = nodes_.size();
      nodes_.push_back({initial_state(r_), std::nullopt, std::nullopt, 0});
      if (index_.try_emplace(state_key(nodes_[cur].state), cur).second) {
        report_.states_visited = index_.size();
      }
      check(cur);
      for (std::size_t d = 0; d < o_.depth; ++d) {
        auto succ = enumerate_successors(r_, nodes_[cur].state, o_.atomic_prop);
        if (succ.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
        auto& sc = succ[pick(gen)];
        ++report_.transitions;
        nodes_.push_back({std::move(sc.state), cur, std::move(sc.step), d + 1});
        cur = nodes_.size() - 1;
        index_.try_emplace(state_key(nodes_[cur].state), cur);
        report_.states_visited = index_.size();
        report_.max_depth = std::max(report_.max_depth, d + 1);
        check(cur);
      }
    }
  }

  const Realisation& r_;
  const ExploreOptions& o_;
  EffectiveTypeFolder folder_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  ExplorationReport report_;
};

}  // namespace

ExplorationReport explore(const Realisation& r, const ExploreOptions& options) {
  return Explorer(r, options).run();
}

SwarmState replay(const Realisation& r, const Trace& trace) {
  SwarmState s = initial_state(r);
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    try {
      s = apply(r, s, trace.steps[k]);
    } catch (const Error& e) {
      throw Error(ErrorKind::kReplayDivergence,
                  "step " + std::to_string(k) + " (" + to_string(trace.steps[k]) + ") failed: " +
                      e.what());
    }
  }
  if (!(s.global == trace.global)) {
    std::ostringstream os;
    os << "recomputed global log " << s.global << " differs from recorded " << trace.global;
    throw Error(ErrorKind::kReplayDivergence, os.str());
  }
  return s;
}

}  // namespace swarm
