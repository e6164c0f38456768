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

#ifndef SWARM_PROJECTION_HH_
#define SWARM_PROJECTION_HH_

#include "swarm/machine.hh"
#include "swarm/protocol.hh"

namespace swarm {

/**
 * The machine of `role` under `sub`: each protocol state where the role is
 * still involved offers the role's own branches as commands and reads each
 * branch's block filtered to the role's subscription. States where the role is
 * no longer involved collapse to one terminal state. The result is minimized.
 *
 * Throws Error(kNotProjectable) when a branch leaves the role with nothing to
 * observe but something left to do, and Error(kNondeterministicProjection)
 * when two branches start with the same observed event type.
 */
Machine project(const SwarmProtocol& g, const Role& role, const Subscription& sub);

}  // namespace swarm

#endif  // SWARM_PROJECTION_HH_
