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

#ifndef SWARM_DETAIL_PARTITION_HH_
#define SWARM_DETAIL_PARTITION_HH_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace swarm::detail {

/// Outgoing (label, target) pairs of one node of a labelled transition system.
using Edges = std::vector<std::pair<int, std::size_t>>;

/**
 * Coarsest bisimulation refining `seed`: nodes end up in one class iff they
 * have equal seeds and, for every label, their successor sets meet the same
 * classes. Class ids are numbered by first occurrence in node order, so the
 * result is deterministic.
 */
inline std::vector<std::size_t> coarsest_partition(const std::vector<int>& seed,
                                                   const std::vector<Edges>& edges) {
  const std::size_t n = seed.size();
  std::vector<std::size_t> cls(n);
  {
    std::map<int, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i) cls[i] = ids.try_emplace(seed[i], ids.size()).first->second;
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count = std::max(count, cls[i] + 1);
  for (;;) {
    using Signature = std::pair<std::size_t, std::set<std::pair<int, std::size_t>>>;
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      Signature sig{cls[i], {}};
      for (const auto& [label, target] : edges[i]) sig.second.emplace(label, cls[target]);
      next[i] = ids.try_emplace(std::move(sig), ids.size()).first->second;
    }
    if (ids.size() == count) return cls;
    count = ids.size();
    cls = std::move(next);
  }
}

}  // namespace swarm::detail

#endif  // SWARM_DETAIL_PARTITION_HH_
