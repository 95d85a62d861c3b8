"""Observer and detector construction.

Both structures concatenate current-state estimates along (symbol, weight)
events.  For one-dimensional integer weights the set of weights reaching
a target state q2 from the current estimate x under a symbol is an exact
eventually periodic set T(q2); the distinct boolean patterns over the
family {T(q2)} partition the achievable weights into cells, and each
nonempty cell yields exactly one transition whose target is the
instantaneous closure of the pattern.  Cells make the infinite-alphabet
pre-observer finite: any member of a cell is a valid representative
weight, and the stored witness is the member of smallest absolute value.

For k > 1 a bounded walk enumeration replaces the cell algebra.  The
construction notes whether the enumeration reached a fixed point; when it
did not, downstream verdicts degrade to UNKNOWN rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .epl import WeightSetSolver, digraph
from .epset import (
    EPSet,
    eps_complement,
    eps_intersect,
    eps_min_abs_witness,
    eps_shift,
    eps_union,
)
from .model import WeightedAutomaton, instantaneous_closure


@dataclass(frozen=True)
class EstTransition:
    source: frozenset[str]
    symbol: str
    weight: object  # int for k = 1, tuple[int, ...] otherwise
    target: frozenset[str]
    cell: EPSet | None  # all weights inducing this target; None in bounded mode


@dataclass(frozen=True)
class EstimatorAutomaton:
    kind: str  # "observer" | "detector"
    k: int
    initial: frozenset[str]
    states: frozenset[frozenset[str]]
    transitions: tuple[EstTransition, ...]
    exact: bool

    def arcs_from(self, x: frozenset[str]) -> list[EstTransition]:
        return [t for t in self.transitions if t.source == x]


def _require_ready(a: WeightedAutomaton) -> None:
    if not a.is_normalized():
        raise ValueError("automaton must be normalized first")
    if not a.is_integral():
        raise ValueError("automaton must be scaled to integer weights first")


def unobs_solver(a: WeightedAutomaton) -> WeightSetSolver:
    """Weight-set solver over the unobservable subgraph (k = 1)."""
    arcs = [(s, int(w[0]), d) for (s, e, d, w) in a.unobs_transitions]
    return WeightSetSolver(digraph(1, sorted(a.states), arcs))


def successor_target_sets(a: WeightedAutomaton, x: Iterable[str], sigma: str,
                          solver: WeightSetSolver | None = None) -> dict[str, EPSet]:
    """T(q2): all weights of paths (silent prefix + one sigma-event) from x to q2."""
    solver = solver if solver is not None else unobs_solver(a)
    tsets: dict[str, EPSet] = {}
    xs = sorted(set(x))
    for (q1, e, q2, w) in a.obs_transitions:
        if a.label(e) != sigma:
            continue
        for q in xs:
            ws = solver.weight_set(q, q1)
            if ws.is_empty():
                continue
            piece = eps_shift(ws, int(w[0]))
            tsets[q2] = eps_union(tsets[q2], piece) if q2 in tsets else piece
    return tsets


def successor_cells(a: WeightedAutomaton, x: Iterable[str], sigma: str,
                    solver: WeightSetSolver | None = None,
                    ) -> list[tuple[frozenset[str], EPSet, int]]:
    """All (target, cell, witness) triples for estimates from x under sigma.

    The cells partition the union of the T(q2); for any concrete weight t
    exactly one cell contains t, and its target is the estimate
    M(A, (sigma, t) | x).
    """
    _require_ready(a)
    if a.k != 1:
        raise ValueError("exact cells require k = 1; use the bounded builders")
    tsets = successor_target_sets(a, x, sigma, solver)
    groups: dict[EPSet, list[str]] = {}
    for q2, s in sorted(tsets.items()):
        groups.setdefault(s, []).append(q2)
    reps = sorted(groups.items(), key=lambda kv: sorted(kv[1]))
    out = []
    for pick in range(1, 1 << len(reps)):
        cell: EPSet | None = None
        for i, (s, _) in enumerate(reps):
            part = s if pick >> i & 1 else eps_complement(s)
            cell = part if cell is None else eps_intersect(cell, part)
            if cell.is_empty():
                break
        if cell is None or cell.is_empty():
            continue
        raw_target = {q2 for i, (_, qs) in enumerate(reps) if pick >> i & 1 for q2 in qs}
        target = instantaneous_closure(a, raw_target)
        out.append((target, cell, eps_min_abs_witness(cell)))
    out.sort(key=lambda c: (abs(c[2]), c[2] < 0, sorted(c[0])))
    return out


# ---------------------------------------------------------------------
# bounded successor enumeration for k > 1
# ---------------------------------------------------------------------


def _bounded_successor_groups(a: WeightedAutomaton, x: Iterable[str], sigma: str,
                              max_len: int, node_cap: int,
                              ) -> tuple[dict[tuple, set[str]], bool]:
    """Map weight vector -> raw successor set, via silent walks of bounded
    length.  The flag reports whether the enumeration closed (fixed point)."""
    zero = tuple(0 for _ in range(a.k))
    seen: set[tuple[str, tuple]] = {(q, zero) for q in x}
    frontier = set(seen)
    exact = True
    for _ in range(max_len):
        if not frontier:
            break
        nxt: set[tuple[str, tuple]] = set()
        for (q, w) in frontier:
            for (s, e, d, wt) in a.unobs_transitions:
                if s != q:
                    continue
                w2 = tuple(int(wi + ti) for wi, ti in zip(w, wt))
                if (d, w2) not in seen:
                    seen.add((d, w2))
                    nxt.add((d, w2))
                    if len(seen) > node_cap:
                        return _harvest(a, seen, sigma), False
        frontier = nxt
    if frontier:
        exact = False
    return _harvest(a, seen, sigma), exact


def _harvest(a: WeightedAutomaton, seen: set, sigma: str) -> dict[tuple, set[str]]:
    by_weight: dict[tuple, set[str]] = {}
    for (q1, w) in seen:
        for (s, e, q2, wt) in a.obs_transitions:
            if s != q1 or a.label(e) != sigma:
                continue
            total = tuple(int(wi + ti) for wi, ti in zip(w, wt))
            by_weight.setdefault(total, set()).add(q2)
    return by_weight


# ---------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------


DEFAULT_WALK_LEN = 16
DEFAULT_NODE_CAP = 20000


def _successor_menu(a: WeightedAutomaton, x: frozenset[str], sigma: str, solver,
                    max_len: int, node_cap: int):
    """Uniform view: list of (target, cell_or_None, witness_weight), exact flag."""
    if a.k == 1:
        return successor_cells(a, x, sigma, solver), True
    groups, exact = _bounded_successor_groups(a, x, sigma, max_len, node_cap)
    by_target: dict[frozenset[str], list[tuple]] = {}
    for w, qs in groups.items():
        by_target.setdefault(instantaneous_closure(a, qs), []).append(w)
    menu = [(target, None, min(ws)) for target, ws in sorted(
        by_target.items(), key=lambda kv: sorted(kv[0]))]
    return menu, exact


def _canonical_order(transitions: list[EstTransition]) -> tuple[EstTransition, ...]:
    return tuple(sorted(transitions, key=lambda t: (
        sorted(t.source), t.symbol, repr(t.weight), sorted(t.target))))


def build_observer(a: WeightedAutomaton, *, max_len: int = DEFAULT_WALK_LEN,
                   node_cap: int = DEFAULT_NODE_CAP) -> EstimatorAutomaton:
    """Deterministic estimator over (symbol, weight) events; one transition
    per nonempty cell."""
    _require_ready(a)
    solver = unobs_solver(a) if a.k == 1 else None
    x0 = instantaneous_closure(a, a.initial.keys())
    states: set[frozenset[str]] = {x0}
    transitions: list[EstTransition] = []
    exact = True
    queue = [x0]
    while queue:
        x = queue.pop(0)
        for sigma in sorted(a.sigma):
            menu, ok = _successor_menu(a, x, sigma, solver, max_len, node_cap)
            exact = exact and ok
            for target, cell, witness in menu:
                if not target:
                    continue
                transitions.append(EstTransition(x, sigma, witness, target, cell))
                if target not in states:
                    states.add(target)
                    queue.append(target)
    return EstimatorAutomaton("observer", a.k, x0, frozenset(states),
                              _canonical_order(transitions), exact)


def build_detector(a: WeightedAutomaton, *, max_len: int = DEFAULT_WALK_LEN,
                   node_cap: int = DEFAULT_NODE_CAP) -> EstimatorAutomaton:
    """Nondeterministic estimator whose states (besides the initial one)
    are the 1- and 2-element state sets; estimates of size >= 2 fan out to
    all their 2-element subsets."""
    _require_ready(a)
    solver = unobs_solver(a) if a.k == 1 else None
    x0 = instantaneous_closure(a, a.initial.keys())
    states: set[frozenset[str]] = {x0}
    transitions: list[EstTransition] = []
    exact = True
    queue = [x0]
    while queue:
        x = queue.pop(0)
        for sigma in sorted(a.sigma):
            menu, ok = _successor_menu(a, x, sigma, solver, max_len, node_cap)
            exact = exact and ok
            for target, cell, witness in menu:
                if not target:
                    continue
                if len(target) == 1:
                    subtargets = [target]
                else:
                    subtargets = [frozenset(pair) for pair in
                                  combinations(sorted(target), 2)]
                for sub in subtargets:
                    transitions.append(EstTransition(x, sigma, witness, sub, cell))
                    if sub not in states:
                        states.add(sub)
                        queue.append(sub)
    return EstimatorAutomaton("detector", a.k, x0, frozenset(states),
                              _canonical_order(transitions), exact)
