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

#include "swarm/event_log.hh"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace swarm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidEventType: return "InvalidEventType";
    case ErrorKind::kInvalidLog: return "InvalidLog";
    case ErrorKind::kConflictingOrders: return "ConflictingOrders";
    case ErrorKind::kVectorOutOfRange: return "VectorOutOfRange";
    case ErrorKind::kUnknownState: return "UnknownState";
    case ErrorKind::kInvalidMachine: return "InvalidMachine";
    case ErrorKind::kInvalidProtocol: return "InvalidProtocol";
    case ErrorKind::kCommandNotEnabled: return "CommandNotEnabled";
    case ErrorKind::kAmbiguousCommand: return "AmbiguousCommand";
    case ErrorKind::kNotProjectable: return "NotProjectable";
    case ErrorKind::kNondeterministicProjection: return "NondeterministicProjection";
    case ErrorKind::kBoundExceeded: return "BoundExceeded";
    case ErrorKind::kInterleavingOutOfRange: return "InterleavingOutOfRange";
    case ErrorKind::kNoProgress: return "NoProgress";
    case ErrorKind::kUnknownMember: return "UnknownMember";
    case ErrorKind::kReplayDivergence: return "ReplayDivergence";
    case ErrorKind::kParse: return "ParseError";
  }
  return "Unknown";
}

EventType::EventType(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error(ErrorKind::kInvalidEventType, "event type name must not be empty");
}

std::ostream& operator<<(std::ostream& os, const EventType& type) { return os << type.name(); }

LogType make_log_type(std::initializer_list<std::string_view> names) {
  LogType out;
  for (auto n : names) out.emplace_back(std::string(n));
  return out;
}

EventTypeSet make_type_set(std::initializer_list<std::string_view> names) {
  EventTypeSet out;
  for (auto n : names) out.emplace(std::string(n));
  return out;
}

std::string to_string(const LogType& type) {
  std::string out = "[";
  for (std::size_t i = 0; i < type.size(); ++i) {
    if (i) out += ", ";
    out += type[i].name();
  }
  return out + "]";
}

std::string to_string(const Event& event) {
  return std::to_string(event.id.source) + ":" + std::to_string(event.id.seq) + ":" +
         event.type.name();
}

namespace {

struct EventIdHash {
  std::size_t operator()(const EventId& id) const noexcept {
    return (static_cast<std::size_t>(id.source) << 32) ^ id.seq;
  }
};

}  // namespace

Log::Log(std::vector<Event> events) : events_(std::move(events)) {
  std::unordered_map<SourceId, SeqNo> last;
  for (const auto& e : events_) {
    if (e.id.source == 0 || e.id.seq == 0) {
      throw Error(ErrorKind::kInvalidLog, "event ids are 1-based: " + to_string(e));
    }
    auto [it, fresh] = last.try_emplace(e.id.source, e.id.seq);
    if (!fresh) {
      if (e.id.seq <= it->second) {
        throw Error(ErrorKind::kInvalidLog,
                    "source " + std::to_string(e.id.source) +
                        " is not strictly increasing at " + to_string(e));
      }
      it->second = e.id.seq;
    }
  }
}

std::optional<std::size_t> Log::position(const EventId& id) const {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].id == id) return i;
  }
  return std::nullopt;
}

Log Log::appended(std::span<const Event> suffix) const {
  std::vector<Event> out = events_;
  out.insert(out.end(), suffix.begin(), suffix.end());
  return Log(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const Log& log) {
  os << "<";
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (i) os << ", ";
    os << to_string(log[i]);
  }
  return os << ">";
}

PrefixVector::PrefixVector(std::initializer_list<std::pair<const SourceId, SeqNo>> entries) {
  for (const auto& [s, n] : entries) set(s, n);
}

SeqNo PrefixVector::get(SourceId source) const {
  auto it = latest_.find(source);
  return it == latest_.end() ? 0 : it->second;
}

void PrefixVector::set(SourceId source, SeqNo seq) {
  if (seq == 0) {
    latest_.erase(source);
  } else {
    latest_[source] = seq;
  }
}

bool PrefixVector::dominated_by(const PrefixVector& other) const {
  return std::all_of(latest_.begin(), latest_.end(),
                     [&](const auto& kv) { return kv.second <= other.get(kv.first); });
}

std::string to_string(const PrefixVector& vector) {
  std::string out = "{";
  bool first = true;
  for (const auto& [s, n] : vector.entries()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(s) + ":" + std::to_string(n);
  }
  return out + "}";
}

LogType log_type_of(std::span<const Event> events) {
  LogType out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(e.type);
  return out;
}

bool is_sublog(const Log& sub, const Log& log) {
  std::unordered_map<EventId, std::size_t, EventIdHash> pos;
  for (std::size_t i = 0; i < log.size(); ++i) pos.emplace(log[i].id, i);

  std::optional<std::size_t> prev;
  std::unordered_map<SourceId, std::size_t> taken;  // sub events per source
  for (const auto& e : sub) {
    auto it = pos.find(e.id);
    if (it == pos.end() || log[it->second].type != e.type) return false;
    if (prev && it->second <= *prev) return false;
    prev = it->second;
    ++taken[e.id.source];
  }
  // Per source, the sub events must be the first ones of that source in log.
  std::unordered_map<SourceId, std::size_t> seen;
  for (const auto& e : log) {
    auto t = taken.find(e.id.source);
    std::size_t limit = t == taken.end() ? 0 : t->second;
    std::size_t& n = seen[e.id.source];
    if (n < limit && !sub.contains(e.id)) return false;
    ++n;
  }
  return true;
}

namespace {

class Merger {
 public:
  Merger(const Log& a, const Log& b) : a_(a), b_(b) {
    std::unordered_map<EventId, const Event*, EventIdHash> in_b;
    for (const auto& e : b_) in_b.emplace(e.id, &e);
    for (const auto& e : a_) {
      auto it = in_b.find(e.id);
      if (it == in_b.end()) continue;
      if (it->second->type != e.type) {
        throw Error(ErrorKind::kConflictingOrders,
                    "event " + to_string(e) + " has type " + it->second->type.name() +
                        " in the other log");
      }
      shared_.insert(e.id);
    }
  }

  std::vector<Log> run() {
    step(0, 0);
    return std::move(out_);
  }

 private:
  bool is_shared(const Event& e) const { return shared_.count(e.id) != 0; }

  // True if `log` still holds an unplaced event of `source` from index `from`.
  static bool pending_source(const Log& log, std::size_t from, SourceId source) {
    for (std::size_t k = from; k < log.size(); ++k) {
      if (log[k].id.source == source) return true;
    }
    return false;
  }

  bool fits(const Event& e) const {
    auto it = last_.find(e.id.source);
    return it == last_.end() || it->second < e.id.seq;
  }

  void place(const Event& e, std::size_t i, std::size_t j) {
    auto it = last_.find(e.id.source);
    std::optional<SeqNo> saved;
    if (it != last_.end()) saved = it->second;
    last_[e.id.source] = e.id.seq;
    cur_.push_back(e);
    step(i, j);
    cur_.pop_back();
    if (saved) {
      last_[e.id.source] = *saved;
    } else {
      last_.erase(e.id.source);
    }
  }

  void step(std::size_t i, std::size_t j) {
    if (i == a_.size() && j == b_.size()) {
      out_.emplace_back(cur_);
      return;
    }
    if (i < a_.size()) {
      const Event& e = a_[i];
      if (is_shared(e)) {
        if (j < b_.size() && b_[j].id == e.id && fits(e)) place(e, i + 1, j + 1);
      } else if (fits(e) && !pending_source(b_, j, e.id.source)) {
        place(e, i + 1, j);
      }
    }
    if (j < b_.size()) {
      const Event& e = b_[j];
      if (!is_shared(e) && fits(e) && !pending_source(a_, i, e.id.source)) place(e, i, j + 1);
    }
  }

  const Log& a_;
  const Log& b_;
  std::set<EventId> shared_;
  std::unordered_map<SourceId, SeqNo> last_;
  std::vector<Event> cur_;
  std::vector<Log> out_;
};

}  // namespace

std::vector<Log> merge(const Log& first, const Log& second) { return Merger(first, second).run(); }

PrefixVector prefix_vector(const Log& log) {
  PrefixVector v;
  for (const auto& e : log) {
    if (e.id.seq > v.get(e.id.source)) v.set(e.id.source, e.id.seq);
  }
  return v;
}

Log restrict_to_vector(const Log& global, const PrefixVector& vector) {
  for (const auto& [s, n] : vector.entries()) {
    if (!global.contains(EventId{s, n})) {
      throw Error(ErrorKind::kVectorOutOfRange,
                  "no event " + std::to_string(s) + ":" + std::to_string(n) + " in global log");
    }
  }
  std::vector<Event> out;
  for (const auto& e : global) {
    if (e.id.seq <= vector.get(e.id.source)) out.push_back(e);
  }
  return Log(std::move(out));
}

LogType filter_log_type(const LogType& type, const EventTypeSet& allowed) {
  LogType out;
  for (const auto& t : type) {
    if (allowed.count(t)) out.push_back(t);
  }
  return out;
}

}  // namespace swarm
