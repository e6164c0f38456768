# Copyright (c) 2026, The swarmbench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Swarm protocol checks and simulation.

Protocols, subscriptions and machines are passed as JSON-compatible dicts
(or JSON text); logs as ``source:seq:Type`` lines.
"""

import json
import os

from . import _core
from ._core import SwarmError

__all__ = [
    "SwarmError",
    "admissible",
    "check",
    "cli_path",
    "effective_type",
    "equivalent",
    "fidelity",
    "is_sublog",
    "machine_dot",
    "merge",
    "project",
    "protocol_dot",
    "replay",
    "simulate",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def check(protocol, subscription):
    return json.loads(_core.check(_text(protocol), _text(subscription)))


def project(protocol, subscription, role):
    return json.loads(_core.project(_text(protocol), _text(subscription), role))


def equivalent(a, b):
    """Returns (equivalent, shortest distinguishing event-type sequence or None)."""
    return _core.equivalent(_text(a), _text(b))


def effective_type(protocol, subscription, log):
    return _core.effective_type(_text(protocol), _text(subscription), log)


def fidelity(protocol, subscription, log):
    return json.loads(_core.fidelity(_text(protocol), _text(subscription), log))


def admissible(protocol, subscription, log, bound):
    return _core.admissible(_text(protocol), _text(subscription), log, bound)


def simulate(protocol, subscription, roles, **options):
    return json.loads(_core.simulate(_text(protocol), _text(subscription), list(roles), **options))


def replay(trace):
    return _core.replay(_text(trace))


def is_sublog(sub, log):
    return _core.is_sublog(sub, log)


def merge(a, b):
    return _core.merge(a, b)


def protocol_dot(protocol):
    return _core.protocol_dot(_text(protocol))


def machine_dot(machine, name="machine"):
    return _core.machine_dot(_text(machine), name)


def cli_path():
    """Path of the bundled command-line tool, or None if it is not installed."""
    path = os.path.join(os.path.dirname(__file__), "bin", "swarmbench")
    return path if os.access(path, os.X_OK) else None
