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

#include <random>

#include "support.hh"
#include "swarm/effective_type.hh"
#include "swarm/machine.hh"
#include "swarm/projection.hh"

using namespace swarm;
using swarm::test::ev;

namespace {

EventTypeSet union_of(const Subscription& sub, const RoleSet& rs) {
  EventTypeSet out;
  for (const auto& r : rs) out.insert(sub.of(r).begin(), sub.of(r).end());
  return out;
}

// Cases (1) to (4) of the definition, evaluated recursively on the rest of
// the log.
LogType literal(const SwarmProtocol& g, const Subscription& sub, StateId s, LogType pending,
                const LogType& types, std::size_t i) {
  if (i == types.size()) return {};
  const auto& t = types[i];
  if (!pending.empty()) {
    if (pending.front() == t) {
      pending.erase(pending.begin());
      LogType out{t};
      auto rest = literal(g, sub, s, pending, types, i + 1);
      out.insert(out.end(), rest.begin(), rest.end());
      return out;
    }
    return literal(g, sub, s, pending, types, i + 1);
  }
  for (const auto& tr : g.transitions()) {
    if (tr.from != s || tr.head() != t) continue;
    if (!union_of(sub, roles(g, s, sub)).count(t)) continue;
    LogType tail(tr.command.emits.begin() + 1, tr.command.emits.end());
    LogType out{t};
    auto rest = literal(g, sub, tr.to, filter_log_type(tail, union_of(sub, active_roles(g, tr.to))),
                        types, i + 1);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  return literal(g, sub, s, pending, types, i + 1);
}

LogType literal(const SwarmProtocol& g, const Subscription& sub, const LogType& types) {
  return literal(g, sub, g.initial(), {}, types, 0);
}

LogType types_of(std::initializer_list<std::string_view> names) { return make_log_type(names); }

}  // namespace

TEST_CASE("effective types of the log-equivalence example") {
  auto g = test::protocol("log_equivalence");
  auto sub = test::subscription("log_equivalence_sub");
  auto a = test::log({ev(1, 1, "a")});
  auto ab = test::log({ev(1, 1, "a"), ev(1, 2, "b")});
  CHECK(effective_type(a, g, sub).etype == types_of({"a"}));
  CHECK(effective_type(ab, g, sub).etype == types_of({"a"}));
  CHECK(log_equivalent(a, ab, g, sub));
  CHECK(log_equivalent(ab, ab, g, sub));
  auto acb = test::log({ev(1, 1, "a"), ev(2, 1, "c"), ev(1, 2, "b")});
  CHECK(effective_type(acb, g, sub).etype == types_of({"a", "c"}));
  CHECK(effective_type(Log{}, g, sub).etype.empty());
}

TEST_CASE("racing choice keeps only the winning head") {
  auto g = test::protocol("racing_choice");
  auto sub = Subscription::universal(g);
  auto events = io::parse_events(test::read_text(test::fixture("racing_choice.log")));
  auto r = effective_type(Log(events), g, sub);
  CHECK(r.etype == types_of({"b"}));
  CHECK(r.final_config.pending.empty());
  CHECK(check_fidelity(Log(events), g, sub).faithful());
}

TEST_CASE("admissibility oracle on reordered blocks") {
  auto g = test::protocol("log_equivalence");
  auto sub = test::subscription("log_equivalence_sub");
  const Event a = ev(1, 1, "a");
  const Event b = ev(1, 2, "b");
  const Event c = ev(2, 1, "c");
  std::vector<Event> acb{a, c, b};
  std::vector<Event> bac{b, a, c};
  std::vector<Event> abc{a, b, c};
  CHECK(admissibility_oracle(acb, g, sub, 1));
  CHECK(admissibility_oracle(abc, g, sub, 1));
  CHECK_FALSE(admissibility_oracle(bac, g, sub, 3));
  std::vector<Event> empty;
  CHECK(admissibility_oracle(empty, g, sub, 1));
}

TEST_CASE("admissibility oracle needs enough runs for a racing choice") {
  auto g = test::protocol("racing_choice");
  auto sub = Subscription::universal(g);
  auto events = io::parse_events(test::read_text(test::fixture("racing_choice.log")));
  CHECK_FALSE(admissibility_oracle(events, g, sub, 1));
  CHECK(admissibility_oracle(events, g, sub, 2));
}

TEST_CASE("admissibility oracle refuses oversized instances") {
  auto g = test::protocol("loop");
  std::vector<Event> events;
  for (SeqNo q = 1; q <= 30; ++q) events.push_back(ev(1, q, "Bid"));
  CHECK_THROWS_AS(admissibility_oracle(events, g, test::subscription("loop_sub"), 1), Error);
}

TEST_CASE("fold agrees with the literal definition") {
  std::mt19937_64 rng(11);
  for (const char* name : {"taxi", "loop", "propagation", "racing_choice", "log_equivalence",
                           "divergent", "double_invocation"}) {
    auto g = test::protocol(name);
    for (const auto& sub : {Subscription::universal(g), Subscription{}}) {
      const EventTypeSet types_of_g = event_types(g);
      std::vector<EventType> alphabet(types_of_g.begin(), types_of_g.end());
      EffectiveTypeFolder folder(g, sub);
      for (int k = 0; k < 300; ++k) {
        LogType types;
        auto n = rng() % 10;
        for (std::size_t i = 0; i < n; ++i) types.push_back(alphabet[rng() % alphabet.size()]);
        CHECK(folder.fold(types).etype == literal(g, sub, types));
        CHECK(folder.fold(types).etype.size() <= types.size());
      }
    }
    auto sub = Subscription::universal(g);
    for (const auto& run : enumerate_runs(g, 5)) {
      CHECK(effective_type(run, g, sub).etype == literal(g, sub, run));
    }
  }
}

TEST_CASE("sequential runs are faithful with the expected type") {
  for (auto [name, subname] : std::vector<std::pair<std::string, std::string>>{
           {"taxi", "taxi_sub"}, {"loop", "loop_sub"}, {"propagation", "propagation_sub_fixed"},
           {"log_equivalence", "log_equivalence_sub"}, {"divergent", "two_branch_sub"}}) {
    auto g = test::protocol(name);
    auto sub = test::subscription(subname);
    for (const auto& path : enumerate_run_paths(g, 5)) {
      Log l;
      FreshIdAllocator alloc(1);
      LogType expected;
      for (auto id : path) {
        const auto& t = g.transition(id);
        l = protocol_step(g, l, t.command.name, alloc, t.head());
        expected.push_back(t.head());
        LogType tail(t.command.emits.begin() + 1, t.command.emits.end());
        for (const auto& e : filter_log_type(tail, union_of(sub, active_roles(g, t.to)))) {
          expected.push_back(e);
        }
      }
      auto v = check_fidelity(l, g, sub);
      CHECK(v.faithful());
      CHECK(v.remainder.empty());
      CHECK(v.etype == expected);
      CHECK(v.witness == path);
      if (l.size() <= 8) CHECK(admissibility_oracle(l.events(), g, sub, 1));
    }
  }
}

TEST_CASE("block compositionality") {
  std::mt19937_64 rng(5);
  auto g = test::protocol("taxi");
  auto sub = test::subscription("taxi_sub");
  const EventTypeSet types_of_g = event_types(g);
  std::vector<EventType> alphabet(types_of_g.begin(), types_of_g.end());
  for (int k = 0; k < 500; ++k) {
    LogType l1, l2;
    for (auto n = rng() % 8; n > 0; --n) l1.push_back(alphabet[rng() % alphabet.size()]);
    for (auto n = rng() % 8; n > 0; --n) l2.push_back(alphabet[rng() % alphabet.size()]);
    auto r1 = effective_type(l1, g, sub);
    if (!r1.final_config.pending.empty()) continue;
    LogType both = l1;
    both.insert(both.end(), l2.begin(), l2.end());
    auto r = effective_type(both, g, sub).etype;
    REQUIRE(r.size() >= r1.etype.size());
    CHECK(LogType(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(r1.etype.size())) == r1.etype);
  }
}

TEST_CASE("fidelity verdicts") {
  auto g = test::protocol("double_invocation");
  auto sub = test::subscription("double_invocation_sub");
  auto v = check_fidelity(test::log({ev(1, 1, "t"), ev(2, 1, "t")}), g, sub);
  CHECK(v.faithful());
  CHECK(v.witness == std::vector<std::size_t>{0, 1});
  CHECK(v.etype == types_of({"t", "t"}));
  CHECK(check_fidelity(Log{}, g, sub).faithful());
  CHECK(check_fidelity(Log{}, g, sub).witness.empty());

  auto prop = test::protocol("propagation");
  auto cut = test::log({ev(1, 1, "Selected")});
  auto p = check_fidelity(cut, prop, test::subscription("propagation_sub_fixed"));
  CHECK_FALSE(p.faithful());
  CHECK(p.remainder == types_of({"PassengerID"}));
  CHECK(p.witness.empty());
}

TEST_CASE("a late bid is ignored") {
  auto g = test::protocol("taxi");
  auto sub = test::subscription("taxi_sub");
  // P = 1, taxis A = 2, B = 3, O = 4, C = 5.
  std::vector<Event> auc{ev(1, 1, "Requested"), ev(3, 1, "Bid"), ev(3, 2, "BidderID"),
                         ev(2, 1, "Bid"),       ev(2, 2, "BidderID"), ev(1, 2, "Selected"),
                         ev(5, 1, "Bid"),       ev(5, 2, "BidderID"), ev(1, 3, "PassengerID")};
  std::vector<Event> two;
  for (const auto& e : auc) {
    if (e.id.source != 5) two.push_back(e);
  }
  Log l_auc(auc), l_two(two);
  CHECK(log_equivalent(l_auc, l_two, g, sub));
  CHECK(effective_type(l_auc, g, sub).etype ==
        types_of({"Requested", "Bid", "BidderID", "Bid", "BidderID", "Selected", "PassengerID"}));
  for (const char* role : {"P", "T", "O"}) {
    auto m = project(g, role, sub);
    CHECK(delta(m, l_auc) == delta(m, l_two));
  }
}
