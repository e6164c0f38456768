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


import json
import os
import pathlib
import subprocess

import pytest

import swarmbench

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def load(name):
    return json.loads((FIXTURES / name).read_text())


def text(name):
    return (FIXTURES / name).read_text()


def test_check_verdicts():
    ok = swarmbench.check(load("propagation.json"), load("propagation_sub_fixed.json"))
    assert ok == {"wellFormed": True, "diagnostics": []}
    bad = swarmbench.check(load("propagation.json"), load("propagation_sub.json"))
    assert not bad["wellFormed"]
    first = bad["diagnostics"][0]
    assert first["role"] == "T"
    assert first["events"] == ["PassengerID"]


def test_projection_matches_listed_office():
    g, sub = load("taxi.json"), load("taxi_sub.json")
    office = swarmbench.project(g, sub, "O")
    assert swarmbench.equivalent(office, load("office_machine.json")) == (True, None)
    same, cex = swarmbench.equivalent(swarmbench.project(g, sub, "T"), load("taxi_machine_listed.json"))
    assert not same
    assert cex == ["Requested"]


def test_effective_type_and_admissibility():
    g, sub = load("log_equivalence.json"), load("log_equivalence_sub.json")
    assert swarmbench.effective_type(g, sub, "1:1:a\n") == ["a"]
    assert swarmbench.effective_type(g, sub, "1:1:a\n1:2:b\n") == ["a"]
    assert swarmbench.admissible(g, sub, "1:1:a\n2:1:c\n1:2:b\n", 1)
    assert not swarmbench.admissible(g, sub, "1:2:b\n1:1:a\n2:1:c\n", 3)


def test_fidelity():
    verdict = swarmbench.fidelity(load("racing_choice.json"), load("racing_choice_sub.json"),
                                  text("racing_choice.log"))
    assert verdict["status"] == "Faithful"
    assert verdict["effectiveType"] == ["b"]
    cut = swarmbench.fidelity(load("propagation.json"), load("propagation_sub_fixed.json"),
                              text("propagation_cut.log"))
    assert cut["status"] == "Pending"
    assert cut["remainder"] == ["PassengerID"]


def test_sublog_and_merge():
    log = "1:1:a\n2:1:b\n2:2:d\n3:1:c\n2:3:e\n"
    assert swarmbench.is_sublog("2:1:b\n3:1:c\n", log)
    assert not swarmbench.is_sublog("2:1:b\n1:1:a\n", log)
    assert not swarmbench.is_sublog("2:2:d\n3:1:c\n", log)
    merged = swarmbench.merge("1:1:a\n2:1:b\n3:1:c\n", "2:1:b\n2:2:d\n2:3:e\n")
    types = ["".join(line.split(":")[2] for line in m.splitlines()) for m in merged]
    assert types == ["abcde", "abdce", "abdec"]


def test_simulation_and_replay():
    g, sub = load("propagation.json"), load("propagation_sub_fixed.json")
    report = swarmbench.simulate(g, sub, ["P", "T", "O"], depth=5)
    assert report["violationCount"] == 0
    assert report["complete"]
    blocked = swarmbench.simulate(g, load("propagation_sub.json"), ["P", "T", "O"],
                                  monitors=["deadlock"])
    assert blocked["violationCount"] > 0
    violation = blocked["violations"][0]
    assert violation["monitor"] == "deadlock"
    trace = violation["trace"]
    assert swarmbench.replay(trace) == "".join(line + "\n" for line in trace["global"])
    a = swarmbench.simulate(g, sub, ["P", "T", "O"], mode="random", seed=7, samples=3, depth=8)
    b = swarmbench.simulate(g, sub, ["P", "T", "O"], mode="random", seed=7, samples=3, depth=8)
    assert a == b


def test_errors_carry_their_kind():
    with pytest.raises(swarmbench.SwarmError) as info:
        swarmbench.fidelity(load("propagation.json"), load("propagation_sub.json"), "1:1")
    assert info.value.args[0] == "ParseError"
    with pytest.raises(swarmbench.SwarmError) as info:
        swarmbench.project(load("divergent.json"), load("divergent_sub.json"), "O")
    assert info.value.args[0] == "NotProjectable"
    with pytest.raises(ValueError):
        swarmbench.simulate(load("loop.json"), load("loop_sub.json"), ["P"], mode="sideways")


def test_dot():
    dot = swarmbench.protocol_dot(load("taxi.json"))
    assert dot.startswith('digraph "')
    assert dot.count("->") == len(load("taxi.json")["transitions"])
    assert "Receipt?" in swarmbench.machine_dot(load("office_machine.json"), "O")


def cli():
    path = os.environ.get("SWARMBENCH_CLI") or swarmbench.cli_path()
    if not path:
        pytest.skip("command-line tool not available")
    return path


def run(*args):
    return subprocess.run([cli(), *map(str, args)], capture_output=True, text=True)


def test_cli_exit_codes():
    prop = FIXTURES / "propagation.json"
    fixed = FIXTURES / "propagation_sub_fixed.json"
    orig = FIXTURES / "propagation_sub.json"
    assert run("check", prop, fixed).returncode == 0
    bad = run("check", prop, orig)
    assert bad.returncode == 1
    assert "PassengerID" in bad.stdout
    assert run("check", prop, FIXTURES / "missing.json").returncode == 2
    assert run("project", FIXTURES / "divergent.json", FIXTURES / "divergent_sub.json", "O").returncode == 1
    assert run("simulate", prop, fixed, "--roles", "P,T,O", "--depth", "5").returncode == 0
    assert run("simulate", prop, fixed, "--depth", "5").returncode == 2
    assert run("fidelity", FIXTURES / "racing_choice.json", FIXTURES / "racing_choice_sub.json",
               "--log", FIXTURES / "racing_choice.log").returncode == 0
    assert run("fidelity", prop, fixed, "--log", FIXTURES / "propagation_cut.log").returncode == 1
    assert run("check-machine", FIXTURES / "taxi.json", FIXTURES / "taxi_sub.json", "O",
               FIXTURES / "office_machine.json").returncode == 0
    assert run("check-machine", FIXTURES / "taxi.json", FIXTURES / "taxi_sub.json", "T",
               FIXTURES / "taxi_machine_listed.json").returncode == 1


def test_cli_project_round_trips(tmp_path):
    out = run("project", FIXTURES / "taxi.json", FIXTURES / "taxi_sub.json", "P")
    assert out.returncode == 0
    machine = tmp_path / "p.json"
    machine.write_text(out.stdout)
    assert run("check-machine", FIXTURES / "taxi.json", FIXTURES / "taxi_sub.json", "P",
               machine).returncode == 0
    doc = json.loads(out.stdout)
    codes = set()
    for state, body in doc["states"].items():
        for event_type in body["transitions"]:
            broken = json.loads(out.stdout)
            del broken["states"][state]["transitions"][event_type]
            machine.write_text(json.dumps(broken))
            result = run("check-machine", FIXTURES / "taxi.json", FIXTURES / "taxi_sub.json", "P", machine)
            codes.add(result.returncode)
            if result.returncode == 1:
                assert "[" in result.stdout
    # Dropping an edge either leaves states unreachable (a malformed machine)
    # or yields a distinguishing sequence.
    assert 1 in codes
    assert codes <= {1, 2}
