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

#include "swarm/effective_type.hh"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace swarm {

EffectiveTypeFolder::EffectiveTypeFolder(const SwarmProtocol& g, const Subscription& sub)
    : g_(g), observed_(g.size()), active_(g.size()) {
  for (StateId s = 0; s < g.size(); ++s) {
    for (const auto& r : roles(g, s, sub)) {
      const auto& types = sub.of(r);
      observed_[s].insert(types.begin(), types.end());
    }
    for (const auto& r : active_roles(g, s)) {
      const auto& types = sub.of(r);
      active_[s].insert(types.begin(), types.end());
    }
  }
}

EffTypeResult EffectiveTypeFolder::start() const {
  EffTypeResult acc;
  acc.final_config.state = g_.initial();
  return acc;
}

bool EffectiveTypeFolder::step(EffTypeResult& acc, const EventType& type) const {
  auto& cfg = acc.final_config;
  if (!cfg.pending.empty()) {
    if (cfg.pending.front() != type) return false;
    cfg.pending.erase(cfg.pending.begin());
    acc.etype.push_back(type);
    return true;
  }
  auto branch = g_.branch_with_head(cfg.state, type);
  if (!branch || !observed_[cfg.state].count(type)) return false;
  const auto& t = g_.transition(*branch);
  acc.etype.push_back(type);
  acc.path.push_back(*branch);
  cfg.state = t.to;
  cfg.pending = filter_log_type(LogType(t.command.emits.begin() + 1, t.command.emits.end()),
                                active_[t.to]);
  return true;
}

EffTypeResult EffectiveTypeFolder::fold(const LogType& types) const {
  EffTypeResult acc = start();
  for (const auto& t : types) step(acc, t);
  return acc;
}

EffTypeResult effective_type(const LogType& types, const SwarmProtocol& g, const Subscription& sub) {
  return EffectiveTypeFolder(g, sub).fold(types);
}

bool log_equivalent(const Log& a, const Log& b, const SwarmProtocol& g, const Subscription& sub) {
  EffectiveTypeFolder folder(g, sub);
  return folder.fold(log_type_of(a)).etype == folder.fold(log_type_of(b)).etype;
}

FidelityVerdict check_fidelity(const Log& log, const SwarmProtocol& g, const Subscription& sub) {
  EffTypeResult r = effective_type(log, g, sub);
  FidelityVerdict v;
  v.etype = r.etype;
  v.witness = r.path;
  v.remainder = r.final_config.pending;
  if (!v.remainder.empty()) {
    v.status = FidelityVerdict::Status::kPending;
    v.witness.pop_back();  // the last block is incomplete
  }
  return v;
}

namespace {

constexpr std::size_t kMaxEvents = 24;
constexpr std::size_t kMaxDecompositions = 4096;
constexpr std::size_t kMaxNodes = 2'000'000;

struct Block {
  std::vector<std::size_t> events;  // indices into the input, in seq order
  std::vector<std::size_t> candidates;
};

class OracleSearch {
 public:
  OracleSearch(std::span<const Event> events, const SwarmProtocol& g, const Subscription& sub,
               std::size_t bound, std::vector<Block> blocks, const LogType& target,
               std::size_t& nodes)
      : events_(events), g_(g), folder_(g, sub), bound_(bound), blocks_(std::move(blocks)),
        target_(target), nodes_(nodes), trans_(blocks_.size(), kNone),
        has_child_(blocks_.size(), false), next_(blocks_.size(), 0) {}

  bool run() { return dfs(folder_.start(), 0); }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::string key(const EffTypeResult& acc, std::size_t pos) const {
    std::string k;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      k += std::to_string(next_[b]) + "," + std::to_string(trans_[b]) + (has_child_[b] ? "+" : "-");
    }
    k += "|" + std::to_string(acc.final_config.state) + "|" + std::to_string(pos) + "|";
    for (const auto& t : acc.final_config.pending) k += t.name() + " ";
    return k;
  }

  bool place(std::size_t b, EffTypeResult acc, std::size_t pos) {
    const EventType& type = events_[blocks_[b].events[next_[b]]].type;
    if (folder_.step(acc, type)) {
      if (pos >= target_.size() || target_[pos] != type) return false;
      ++pos;
    }
    ++next_[b];
    bool ok = dfs(acc, pos);
    --next_[b];
    return ok;
  }

  bool complete(std::size_t b) const { return next_[b] == blocks_[b].events.size(); }

  bool dfs(const EffTypeResult& acc, std::size_t pos) {
    if (++nodes_ > kMaxNodes) {
      throw Error(ErrorKind::kBoundExceeded, "admissibility search exceeded its node budget");
    }
    bool all = true;
    for (std::size_t b = 0; b < blocks_.size(); ++b) all = all && complete(b);
    if (all) {
      std::size_t leaves = std::count(has_child_.begin(), has_child_.end(), false);
      return pos == target_.size() && leaves <= bound_;
    }
    std::string k = key(acc, pos);
    if (failed_.count(k)) return false;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (trans_[b] != kNone && !complete(b) && place(b, acc, pos)) return true;
    }
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (trans_[b] != kNone) continue;
      for (auto c : blocks_[b].candidates) {
        StateId from = g_.transition(c).from;
        trans_[b] = c;
        if (from == g_.initial() && place(b, acc, pos)) return true;
        for (std::size_t p = 0; p < blocks_.size(); ++p) {
          if (p == b || trans_[p] == kNone || !complete(p) || g_.transition(trans_[p]).to != from) {
            continue;
          }
          bool saved = has_child_[p];
          has_child_[p] = true;
          bool ok = place(b, acc, pos);
          has_child_[p] = saved;
          if (ok) return true;
        }
        trans_[b] = kNone;
      }
    }
    failed_.insert(std::move(k));
    return false;
  }

  std::span<const Event> events_;
  const SwarmProtocol& g_;
  EffectiveTypeFolder folder_;
  std::size_t bound_;
  std::vector<Block> blocks_;
  const LogType& target_;
  std::size_t& nodes_;
  std::vector<std::size_t> trans_;
  std::vector<bool> has_child_;
  std::vector<std::size_t> next_;
  std::unordered_set<std::string> failed_;
};

// All ways to cut one source's events into blocks typed like some branch.
void split_source(const std::vector<std::size_t>& idx, std::size_t from,
                  std::span<const Event> events, const SwarmProtocol& g,
                  std::vector<Block>& cur, std::vector<std::vector<Block>>& out) {
  if (from == idx.size()) {
    out.push_back(cur);
    if (out.size() > kMaxDecompositions) {
      throw Error(ErrorKind::kBoundExceeded, "too many block decompositions");
    }
    return;
  }
  for (std::size_t to = from + 1; to <= idx.size(); ++to) {
    if (to > from + 1 && events[idx[to - 1]].id.seq != events[idx[to - 2]].id.seq + 1) break;
    LogType types;
    for (std::size_t k = from; k < to; ++k) types.push_back(events[idx[k]].type);
    Block b;
    for (std::size_t i = 0; i < g.transitions().size(); ++i) {
      if (g.transition(i).command.emits == types) b.candidates.push_back(i);
    }
    if (b.candidates.empty()) continue;
    b.events.assign(idx.begin() + from, idx.begin() + to);
    cur.push_back(std::move(b));
    split_source(idx, to, events, g, cur, out);
    cur.pop_back();
  }
}

}  // namespace

bool admissibility_oracle(std::span<const Event> events, const SwarmProtocol& g,
                          const Subscription& sub, std::size_t bound) {
  if (events.size() > kMaxEvents) {
    throw Error(ErrorKind::kBoundExceeded,
                "admissibility oracle limited to " + std::to_string(kMaxEvents) + " events");
  }
  std::map<SourceId, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < events.size(); ++i) by_source[events[i].id.source].push_back(i);
  for (auto& [s, idx] : by_source) {
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return events[a].id.seq < events[b].id.seq; });
    for (std::size_t k = 1; k < idx.size(); ++k) {
      if (events[idx[k]].id.seq == events[idx[k - 1]].id.seq) return false;
    }
  }

  std::vector<std::vector<Block>> decompositions{{}};
  for (const auto& [s, idx] : by_source) {
    std::vector<std::vector<Block>> options;
    std::vector<Block> cur;
    split_source(idx, 0, events, g, cur, options);
    std::vector<std::vector<Block>> next;
    for (const auto& d : decompositions) {
      for (const auto& o : options) {
        auto merged = d;
        merged.insert(merged.end(), o.begin(), o.end());
        next.push_back(std::move(merged));
        if (next.size() > kMaxDecompositions) {
          throw Error(ErrorKind::kBoundExceeded, "too many block decompositions");
        }
      }
    }
    decompositions = std::move(next);
  }

  LogType target = EffectiveTypeFolder(g, sub).fold(log_type_of(events)).etype;
  std::size_t nodes = 0;
  for (auto& blocks : decompositions) {
    bool in_order = std::all_of(blocks.begin(), blocks.end(), [](const Block& b) {
      return std::is_sorted(b.events.begin(), b.events.end());
    });
    if (!in_order) continue;
    if (OracleSearch(events, g, sub, bound, std::move(blocks), target, nodes).run()) return true;
  }
  return false;
}

}  // namespace swarm
