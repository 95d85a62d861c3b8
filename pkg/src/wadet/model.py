"""Labeled weighted automata over the monoid (Q^k, +).

States and events are opaque strings, transition weights are tuples of
exact rationals in lowest terms, labels are output symbols or None for
the silent label.  All operations treat automata as immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Mapping

from .graphutil import reachable, states_on_cycles

Weight = tuple[Fraction, ...]
Transition = tuple[str, str, str, Weight]  # (source, event, target, weight)


def zero_weight(k: int) -> Weight:
    return (Fraction(0),) * k


def make_weight(entries: Iterable, k: int | None = None) -> Weight:
    w = tuple(Fraction(e) for e in entries)
    if k is not None and len(w) != k:
        raise ValueError(f"weight {w} has dimension {len(w)}, expected {k}")
    return w


class ValidationError(ValueError):
    """Raised with the full list of problems found in a description."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class WeightedAutomaton:
    k: int
    states: frozenset[str]
    initial: Mapping[str, Weight]
    events: Mapping[str, str | None]  # event -> label, None = unobservable
    transitions: frozenset[Transition]

    def label(self, event: str) -> str | None:
        return self.events[event]

    def is_observable(self, event: str) -> bool:
        return self.events[event] is not None

    @cached_property
    def sigma(self) -> frozenset[str]:
        """Output alphabet: the non-silent labels actually used."""
        return frozenset(l for l in self.events.values() if l is not None)

    @cached_property
    def arcs_from(self) -> Mapping[str, tuple[Transition, ...]]:
        out: dict[str, list[Transition]] = {q: [] for q in self.states}
        for t in sorted(self.transitions):
            out[t[0]].append(t)
        return {q: tuple(v) for q, v in out.items()}

    @cached_property
    def unobs_transitions(self) -> tuple[Transition, ...]:
        return tuple(t for t in sorted(self.transitions) if not self.is_observable(t[1]))

    @cached_property
    def obs_transitions(self) -> tuple[Transition, ...]:
        return tuple(t for t in sorted(self.transitions) if self.is_observable(t[1]))

    @cached_property
    def reachable_states(self) -> frozenset[str]:
        return frozenset(reachable(
            self.initial.keys(),
            lambda q: (t[2] for t in self.arcs_from[q]),
        ))

    def is_integral(self) -> bool:
        if any(w.denominator != 1 for wt in self.initial.values() for w in wt):
            return False
        return all(w.denominator == 1 for t in self.transitions for w in t[3])

    def is_normalized(self) -> bool:
        z = zero_weight(self.k)
        return all(w == z for w in self.initial.values())


# ---------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------


def validate(raw: Mapping) -> WeightedAutomaton:
    """Check a parsed description and build the canonical automaton.

    Collects every violation before failing so callers see all problems
    at once.
    """
    problems: list[str] = []

    k = raw.get("k")
    if not isinstance(k, int) or k < 1:
        problems.append(f"dimension k must be a positive integer, got {k!r}")
        k = 1

    states = [str(s) for s in raw.get("states", [])]
    state_set = frozenset(states)
    if not state_set:
        problems.append("no states declared")

    events: dict[str, str | None] = {}
    for name, label in dict(raw.get("events", {})).items():
        events[str(name)] = None if label is None else str(label)

    def weight_of(entries, where: str) -> Weight:
        try:
            w = make_weight(entries)
        except (TypeError, ValueError, ZeroDivisionError):
            problems.append(f"{where}: not a rational vector: {entries!r}")
            return zero_weight(k)
        if len(w) != k:
            problems.append(f"{where}: weight has dimension {len(w)}, expected {k}")
            return zero_weight(k)
        return w

    initial: dict[str, Weight] = {}
    for q, entries in dict(raw.get("initial", {})).items():
        q = str(q)
        if q not in state_set:
            problems.append(f"initial state {q!r} not declared")
        initial[q] = weight_of(entries, f"initial weight of {q!r}")
    if not initial:
        problems.append("no initial state")

    seen: dict[tuple[str, str, str], Weight] = {}
    transitions: set[Transition] = set()
    for item in raw.get("transitions", []):
        src, event, dst, entries = item
        src, event, dst = str(src), str(event), str(dst)
        if src not in state_set:
            problems.append(f"transition source {src!r} not declared")
        if dst not in state_set:
            problems.append(f"transition target {dst!r} not declared")
        if event not in events:
            problems.append(f"transition event {event!r} not declared")
        w = weight_of(entries, f"transition {src}-{event}->{dst}")
        key = (src, event, dst)
        if key in seen and seen[key] != w:
            problems.append(f"conflicting weights for transition {key}")
        seen[key] = w
        transitions.add((src, event, dst, w))

    if problems:
        raise ValidationError(problems)
    return WeightedAutomaton(k, state_set, initial, events, frozenset(transitions))


# ---------------------------------------------------------------------
# normalization and scaling
# ---------------------------------------------------------------------


def _fresh(taken: Iterable[str], base: str) -> str:
    name = base
    taken = set(taken)
    while name in taken:
        name += "_"
    return name


def normalize(a: WeightedAutomaton) -> WeightedAutomaton:
    """Rewrite initial weights into a fresh silent transition so that all
    initial weights become the zero vector.  Already-normalized automata
    are returned unchanged."""
    z = zero_weight(a.k)
    weighted = {q: w for q, w in a.initial.items() if w != z}
    if not weighted:
        return a
    q_new = _fresh(a.states, "init")
    e_new = _fresh(a.events, "alpha")
    states = a.states | {q_new}
    events = dict(a.events)
    events[e_new] = None
    transitions = set(a.transitions)
    for q, w in weighted.items():
        transitions.add((q_new, e_new, q, w))
    initial = {q: z for q in a.initial if q not in weighted}
    initial[q_new] = z
    return WeightedAutomaton(a.k, states, initial, events, frozenset(transitions))


def scale_weights(a: WeightedAutomaton, factor: Fraction | int) -> WeightedAutomaton:
    factor = Fraction(factor)
    scale = lambda w: tuple(x * factor for x in w)
    return WeightedAutomaton(
        a.k,
        a.states,
        {q: scale(w) for q, w in a.initial.items()},
        a.events,
        frozenset((s, e, d, scale(w)) for (s, e, d, w) in a.transitions),
    )


def scale_to_integers(a: WeightedAutomaton) -> tuple[WeightedAutomaton, int]:
    """Multiply all weights by the least common multiple of their
    denominators.  Detectability is preserved (and tested, not assumed)."""
    denoms = [x.denominator for w in a.initial.values() for x in w]
    denoms += [x.denominator for t in a.transitions for x in t[3]]
    m = lcm(*denoms) if denoms else 1
    if m == 1:
        return a, 1
    return scale_weights(a, m), m


# ---------------------------------------------------------------------
# closures and structural analysis
# ---------------------------------------------------------------------


def instantaneous_closure(a: WeightedAutomaton, x: Iterable[str]) -> frozenset[str]:
    """x plus everything reachable through silent zero-weight transitions."""
    z = zero_weight(a.k)
    adj: dict[str, list[str]] = {q: [] for q in a.states}
    for (s, e, d, w) in a.unobs_transitions:
        if w == z:
            adj[s].append(d)
    return frozenset(reachable(x, lambda q: adj[q]))


@dataclass(frozen=True)
class StructureReport:
    deadlock_free: bool
    divergence_free: bool
    deterministic: bool
    unambiguous_checked_to_bound: bool  # exact twin-run check; name kept for format stability
    all_observable: bool
    reachable_states: frozenset[str]


def states_reaching_unobs_cycle(a: WeightedAutomaton) -> frozenset[str]:
    """States with an unobservable path (any weights) to an unobservable cycle."""
    adj: dict[str, list[str]] = {q: [] for q in a.states}
    for (s, e, d, w) in a.unobs_transitions:
        adj[s].append(d)
    on_cyc = states_on_cycles(a.states, lambda q: adj[q])
    preds: dict[str, list[str]] = {q: [] for q in a.states}
    for (s, e, d, w) in a.unobs_transitions:
        preds[d].append(s)
    return frozenset(reachable(on_cyc, lambda q: preds[q]))


def _unambiguous(a: WeightedAutomaton) -> bool:
    """Twin-run product: ambiguous iff two distinct runs of one event
    sequence meet in the same state."""
    arcs_by_event: dict[tuple[str, str], list[str]] = {}
    for (s, e, d, w) in a.transitions:
        arcs_by_event.setdefault((s, e), []).append(d)

    starts = set()
    inits = sorted(a.initial)
    for q1 in inits:
        for q2 in inits:
            starts.add((q1, q2, q1 != q2))
    seen = set(starts)
    stack = list(starts)
    while stack:
        p, q, diverged = stack.pop()
        if p == q and diverged:
            return False
        events = {e for (s, e) in arcs_by_event if s == p}
        for e in events:
            for p2 in arcs_by_event.get((p, e), []):
                for q2 in arcs_by_event.get((q, e), []):
                    nxt = (p2, q2, diverged or p2 != q2)
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
    return True


def structure_report(a: WeightedAutomaton) -> StructureReport:
    reach = a.reachable_states
    deadlock_free = all(a.arcs_from[q] for q in reach)

    unobs_adj: dict[str, list[str]] = {q: [] for q in a.states}
    for (s, e, d, w) in a.unobs_transitions:
        unobs_adj[s].append(d)
    divergence_free = not (states_on_cycles(reach, lambda q: (x for x in unobs_adj[q] if x in reach)))

    targets: dict[tuple[str, str], set[str]] = {}
    for (s, e, d, w) in a.transitions:
        targets.setdefault((s, e), set()).add(d)
    deterministic = len(a.initial) == 1 and all(len(v) == 1 for v in targets.values())

    return StructureReport(
        deadlock_free=deadlock_free,
        divergence_free=divergence_free,
        deterministic=deterministic,
        unambiguous_checked_to_bound=_unambiguous(a),
        all_observable=all(l is not None for l in a.events.values()),
        reachable_states=reach,
    )
