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

#ifndef SWARM_EVENT_LOG_HH_
#define SWARM_EVENT_LOG_HH_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swarm/error.hh"

namespace swarm {

/// Name of an event type. Case-sensitive, never empty.
class EventType {
 public:
  explicit EventType(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const EventType&, const EventType&) = default;
  friend auto operator<=>(const EventType&, const EventType&) = default;

 private:
  std::string name_;
};

std::ostream& operator<<(std::ostream& os, const EventType& type);

using LogType = std::vector<EventType>;
using EventTypeSet = std::set<EventType>;

LogType make_log_type(std::initializer_list<std::string_view> names);
EventTypeSet make_type_set(std::initializer_list<std::string_view> names);

/// Renders as `[a, b, c]`.
std::string to_string(const LogType& type);

using SourceId = std::uint32_t;
using SeqNo = std::uint32_t;

/// Sources are 1-based machine indices, seq numbers are 1-based per source.
struct EventId {
  SourceId source = 0;
  SeqNo seq = 0;

  friend bool operator==(const EventId&, const EventId&) = default;
  friend auto operator<=>(const EventId&, const EventId&) = default;
};

/**
 * An event occurrence. The metadata string is opaque: it never takes part in
 * equality or in any semantic operation.
 */
struct Event {
  EventId id;
  EventType type;
  std::string metadata;

  friend bool operator==(const Event& a, const Event& b) {
    return a.id == b.id && a.type == b.type;
  }
};

/// `source:seq:Type`, the line format of log files.
std::string to_string(const Event& event);

/**
 * A duplicate-free sequence of events whose restriction to any one source is
 * ordered by strictly increasing seq.
 */
class Log {
 public:
  Log() = default;
  /// Throws Error(kInvalidLog) if the invariants do not hold.
  explicit Log(std::vector<Event> events);

  std::span<const Event> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }
  auto begin() const noexcept { return events_.begin(); }
  auto end() const noexcept { return events_.end(); }

  std::optional<std::size_t> position(const EventId& id) const;
  bool contains(const EventId& id) const { return position(id).has_value(); }

  /// This log followed by `suffix`; validated like the constructor.
  Log appended(std::span<const Event> suffix) const;

  friend bool operator==(const Log&, const Log&) = default;

 private:
  std::vector<Event> events_;
};

std::ostream& operator<<(std::ostream& os, const Log& log);

/**
 * For each source, the highest seq number present. Together with a global log
 * it determines exactly one sublog of that log.
 */
class PrefixVector {
 public:
  PrefixVector() = default;
  PrefixVector(std::initializer_list<std::pair<const SourceId, SeqNo>> entries);

  SeqNo get(SourceId source) const;
  void set(SourceId source, SeqNo seq);

  const std::map<SourceId, SeqNo>& entries() const noexcept { return latest_; }

  /// Componentwise `<=`.
  bool dominated_by(const PrefixVector& other) const;

  friend bool operator==(const PrefixVector&, const PrefixVector&) = default;
  friend auto operator<=>(const PrefixVector&, const PrefixVector&) = default;

 private:
  std::map<SourceId, SeqNo> latest_;  // zero entries are never stored
};

std::string to_string(const PrefixVector& vector);

LogType log_type_of(std::span<const Event> events);
inline LogType log_type_of(const Log& log) { return log_type_of(log.events()); }

/**
 * The sublog relation: every event of `sub` occurs in `log` in the same
 * relative order, and for each source the events of `sub` are a prefix of that
 * source's events in `log`.
 */
bool is_sublog(const Log& sub, const Log& log);

/**
 * All logs over the union of both event sets that have both arguments as
 * sublogs, in canonical order (at each position the first log's next event is
 * preferred). An empty result signals that the arguments order their shared
 * events inconsistently and cannot come from one execution. Throws
 * Error(kConflictingOrders) only when an event id is shared with two
 * different types.
 */
std::vector<Log> merge(const Log& first, const Log& second);

PrefixVector prefix_vector(const Log& log);

/// Throws Error(kVectorOutOfRange) if `vector` names an event absent from `global`.
Log restrict_to_vector(const Log& global, const PrefixVector& vector);

LogType filter_log_type(const LogType& type, const EventTypeSet& allowed);

}  // namespace swarm

#endif  // SWARM_EVENT_LOG_HH_
