"""Bundled example automata and instance generators.

The subset-sum instance family encodes "does some subset of the given
positive integers sum to the target?" as a strong-detectability question:
a silent chain either adds each weight or skips it for free, then a
weight-1 observable step enters the first sink, while a direct observable
step of weight target+1 enters the second sink; both sinks loop with
weight 1.  The two sinks stay indistinguishable forever exactly when a
subset hits the target.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .model import WeightedAutomaton, validate
from .verdict import FAILS, HOLDS, SD, SPD, WD, WPD


@dataclass(frozen=True)
class Fixture:
    name: str
    automaton: WeightedAutomaton
    expected: dict[str, str]  # property -> expected status
    provenance: str


def subset_sum_automaton(weights: Sequence[int], target: int) -> WeightedAutomaton:
    """The subset-sum reduction instance for the given positive weights."""
    weights = [int(n) for n in weights]
    target = int(target)
    if not weights or any(n < 1 for n in weights) or target < 1:
        raise ValueError("weights and target must be positive")
    m = len(weights)
    states = [f"q{i}" for i in range(m + 1)] + ["f1", "f2"]
    transitions = []
    for i, n in enumerate(weights):
        transitions.append((f"q{i}", "u1", f"q{i+1}", (n,)))
        transitions.append((f"q{i}", "u2", f"q{i+1}", (0,)))
    transitions += [
        (f"q{m}", "e", "f1", (1,)),
        ("q0", "e", "f2", (target + 1,)),
        ("f1", "e", "f1", (1,)),
        ("f2", "e", "f2", (1,)),
    ]
    return validate({
        "k": 1,
        "states": states,
        "initial": {"q0": (0,)},
        "events": {"u1": None, "u2": None, "e": "e"},
        "transitions": transitions,
    })


def robot_description() -> dict:
    """A patrolling robot on four positions with quantized energy 0..10.

    Position deviations are encoded as differences of standard basis
    vectors of Z^4; moving right costs one energy unit (silently between
    positions 2 and 3, sometimes for free), moving left regains one, and
    the energy saturates at 10.  The start is position 1 at energy 5,
    announced by an initial weight equal to that position's basis vector.
    """
    def basis(j):
        return tuple(1 if i == j - 1 else 0 for i in range(4))

    def diff(j_to, j_from):
        return tuple(a - b for a, b in zip(basis(j_to), basis(j_from)))

    states = [f"e{i}p{j}" for i in range(11) for j in range(1, 5)]
    transitions = []
    for i in range(1, 11):
        for k in (1, 3):  # announced right moves cost one energy unit
            transitions.append((f"e{i}p{k}", "a", f"e{i-1}p{k+1}", diff(k + 1, k)))
        # silent right move between positions 2 and 3, costing 0 or 1
        transitions.append((f"e{i}p2", "u", f"e{i-1}p3", diff(3, 2)))
        transitions.append((f"e{i}p2", "u", f"e{i}p3", diff(3, 2)))
    for l in (2, 3, 4):  # announced left moves regain one energy unit
        for j in range(0, 10):
            transitions.append((f"e{j}p{l}", "b", f"e{j+1}p{l-1}", diff(l - 1, l)))
        transitions.append((f"e10p{l}", "b", f"e10p{l-1}", diff(l - 1, l)))
    return {
        "k": 4,
        "states": states,
        "initial": {"e5p1": basis(1)},
        "events": {"a": "a", "u": None, "b": "b"},
        "transitions": transitions,
    }


_EXPECTED = {
    "A0": {SD: FAILS, SPD: FAILS, WD: HOLDS, WPD: HOLDS},
    "A1": {SD: HOLDS, SPD: FAILS, WD: HOLDS, WPD: HOLDS},
    "robot": {SD: FAILS, WD: HOLDS},
}

_PROVENANCE = {
    "A0": "bundled corpus: silent fan into two looping observable branches",
    "A1": "bundled corpus: two indistinguishable branches merging on one label",
    "robot": "bundled corpus: patrolling robot with vector-encoded positions",
}


def load_fixture(name: str) -> Fixture:
    if name not in _EXPECTED:
        raise KeyError(f"unknown fixture {name!r}; have {sorted(_EXPECTED)}")
    from .io import parse  # deferred import; io depends on model only
    doc = json.loads(resources.files("wadet.fixtures").joinpath(f"{name}.json").read_text())
    return Fixture(name, parse(doc), dict(_EXPECTED[name]), _PROVENANCE[name])


def fixture_names() -> list[str]:
    return sorted(_EXPECTED)


def random_automaton(seed: int, max_states: int = 5, max_events: int = 3,
                     weight_range: tuple[int, int] = (-2, 2), k: int = 1,
                     unobs_fraction: float = 0.35,
                     arc_factor: float = 2.0) -> WeightedAutomaton:
    """Reproducible random instance; always has at least one initial state."""
    rng = random.Random(seed)
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    labels = ["x", "y"]
    events: dict[str, str | None] = {}
    for i in range(rng.randint(1, max_events)):
        name = f"e{i}"
        events[name] = None if rng.random() < unobs_fraction else rng.choice(labels)
    by_key = {}
    for _ in range(rng.randint(1, max(1, int(arc_factor * n)) + 2)):
        key = (rng.choice(states), rng.choice(sorted(events)), rng.choice(states))
        weight = tuple(rng.randint(*weight_range) for _ in range(k))
        by_key.setdefault(key, key + (weight,))
    initial = rng.sample(states, rng.randint(1, n))
    return validate({
        "k": k,
        "states": states,
        "initial": {q: (0,) * k for q in initial},
        "events": events,
        "transitions": list(by_key.values()),
    })
