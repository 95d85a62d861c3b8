"""Definition-level brute force: bounded run enumeration, current-state
estimates, and bounded falsification of the four detectability notions.

The estimate function follows the successor-chain reading of the
current-state estimate: feed the observed (symbol, accumulated weight)
pairs one at a time, each step keeping the states reachable through a
silent prefix plus one matching observable event whose total weight is
the observed increment, and close the final set under silent zero-weight
transitions.  An independent path-enumeration variant exists for
cross-checking on small instances.

Falsification searches lasso-shaped infinite paths (bounded stem and
cycle).  Counterexamples for the strong notions are genuine proofs of
failure; for the weak notions the search is a bounded cross-check only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .epl import digraph, has_path_with_weight
from .estimator import successor_target_sets, unobs_solver
from .model import (
    Transition,
    WeightedAutomaton,
    instantaneous_closure,
    normalize,
    scale_to_integers,
    zero_weight,
)

Obs = tuple[str, tuple[Fraction, ...]]  # (symbol, accumulated weight)


class OracleUndecided(RuntimeError):
    """An exact answer was not reachable within the configured budget."""


def _as_vector(value, k: int) -> tuple[Fraction, ...]:
    if isinstance(value, (int, Fraction, str)):
        value = (value,)
    vec = tuple(Fraction(x) for x in value)
    if len(vec) != k:
        raise ValueError(f"weight {value!r} has dimension {len(vec)}, expected {k}")
    return vec


# ---------------------------------------------------------------------
# bounded runs
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class BoundedRun:
    start: str
    path: tuple[Transition, ...]

    @property
    def end(self) -> str:
        return self.path[-1][2] if self.path else self.start

    @property
    def weighted_word(self) -> tuple[tuple[str, tuple[Fraction, ...]], ...]:
        out = []
        total = None
        for (s, e, d, w) in self.path:
            total = w if total is None else tuple(a + b for a, b in zip(total, w))
            out.append((e, total))
        return tuple(out)

    def label_sequence(self, a: WeightedAutomaton) -> tuple[Obs, ...]:
        return tuple((a.label(e), t) for (e, t) in self.weighted_word
                     if a.label(e) is not None)


def oracle_runs(a: WeightedAutomaton, horizon: int = 12) -> list[BoundedRun]:
    """Every path from an initial state with at most `horizon` transitions."""
    if horizon > 16:
        raise ValueError("horizon too large for exhaustive enumeration")
    runs = [BoundedRun(q, ()) for q in sorted(a.initial)]
    frontier = list(runs)
    for _ in range(horizon):
        nxt = []
        for run in frontier:
            for t in a.arcs_from[run.end]:
                nxt.append(BoundedRun(run.start, run.path + (t,)))
        runs.extend(nxt)
        frontier = nxt
    return runs


# ---------------------------------------------------------------------
# estimates
# ---------------------------------------------------------------------


class EstimateChain:
    """Cached successor-chain estimator over a normalized integral automaton."""

    def __init__(self, a: WeightedAutomaton, budget: int = 10 ** 6):
        if not a.is_normalized() or not a.is_integral():
            raise ValueError("EstimateChain needs a normalized integral automaton")
        self.a = a
        self.budget = budget
        self.x0 = instantaneous_closure(a, a.initial.keys())
        self._tsets: dict[tuple[frozenset, str], dict] = {}
        if a.k == 1:
            self._solver = unobs_solver(a)
        else:
            arcs = [(s, tuple(int(x) for x in w), d) for (s, e, d, w) in a.unobs_transitions]
            self._graph = digraph(a.k, sorted(a.states), arcs)
            self._multi_cache: dict[tuple, frozenset] = {}

    def step(self, x: frozenset[str], sigma: str, delta: tuple[int, ...]) -> frozenset[str]:
        if not x:
            return frozenset()
        if self.a.k == 1:
            key = (x, sigma)
            if key not in self._tsets:
                self._tsets[key] = successor_target_sets(self.a, x, sigma, self._solver)
            tsets = self._tsets[key]
            raw = {q2 for q2, s in tsets.items() if delta[0] in s}
            return instantaneous_closure(self.a, raw)
        return self._step_multi(x, sigma, delta)

    def _step_multi(self, x, sigma, delta):
        key = (x, sigma, delta)
        if key in self._multi_cache:
            return self._multi_cache[key]
        raw = set()
        for (q1, e, q2, w) in self.a.obs_transitions:
            if self.a.label(e) != sigma or q2 in raw:
                continue
            need = tuple(int(d) - int(wi) for d, wi in zip(delta, w))
            for q in sorted(x):
                ans = has_path_with_weight(self._graph, q, q1, need, self.budget)
                if ans.status == "UNKNOWN":
                    raise OracleUndecided(f"estimate step undecided at {(q, q1, need)}")
                if ans.status == "YES":
                    raw.add(q2)
                    break
        result = instantaneous_closure(self.a, raw)
        self._multi_cache[key] = result
        return result

    def estimate(self, deltas: Iterable[tuple[str, tuple[int, ...]]]) -> frozenset[str]:
        x = self.x0
        for sigma, delta in deltas:
            x = self.step(x, sigma, delta)
        return x


def _deltas_of(gamma: Sequence[Obs], k: int, scale: int) -> list | None:
    """Observed increments, scaled to integers; None if unachievable."""
    prev = zero_weight(k)
    out = []
    for sigma, total in gamma:
        total = _as_vector(total, k)
        delta = tuple((t - p) * scale for t, p in zip(total, prev))
        if any(d.denominator != 1 for d in delta):
            return None
        out.append((sigma, tuple(int(d) for d in delta)))
        prev = total
    return out


def oracle_estimate(a: WeightedAutomaton, gamma: Sequence, budget: int = 10 ** 6,
                    ) -> frozenset[str]:
    """The current-state estimate for an observed weighted label sequence
    (accumulated-weight convention)."""
    norm = normalize(a)
    scaled, m = scale_to_integers(norm)
    gamma = [(sigma, _as_vector(t, a.k)) for sigma, t in gamma]
    deltas = _deltas_of(gamma, a.k, m)
    if deltas is None:
        return frozenset()
    return EstimateChain(scaled, budget).estimate(deltas)


def oracle_estimate_enum(a: WeightedAutomaton, gamma: Sequence,
                         horizon: int = 8) -> frozenset[str]:
    """Path-enumeration variant of the estimate, bounded by `horizon`."""
    norm = normalize(a)
    gamma = tuple((sigma, _as_vector(t, a.k)) for sigma, t in gamma)
    z = zero_weight(norm.k)
    out = set()
    for run in oracle_runs(norm, horizon):
        word = run.weighted_word
        last_obs = 0
        for i, (e, t) in enumerate(word):
            if norm.label(e) is not None:
                last_obs = i + 1
        suffix = run.path[last_obs:]
        labels = tuple((norm.label(e), t) for (e, t) in word[:last_obs]
                       if norm.label(e) is not None)
        if labels != gamma:
            continue
        if all(t[3] == z for t in suffix):  # silent suffix must be instantaneous
            out.add(run.end)
    if not gamma:
        out |= set(norm.initial)
    return frozenset(out)


# ---------------------------------------------------------------------
# lasso falsification
# ---------------------------------------------------------------------


def _observed_steps(a: WeightedAutomaton, arcs: Sequence[Transition],
                    carry: tuple[int, ...]):
    """Fold a concrete arc sequence into observed (symbol, increment) steps,
    returning the trailing unobserved weight as the new carry."""
    steps = []
    acc = carry
    for (s, e, d, w) in arcs:
        acc = tuple(int(x) + int(y) for x, y in zip(acc, w))
        if a.label(e) is not None:
            steps.append((a.label(e), acc))
            acc = tuple(0 for _ in acc)
    return steps, acc


@dataclass(frozen=True)
class Counterexample:
    property: str
    kind: str
    stem: tuple[Transition, ...]
    cycle: tuple[Transition, ...]
    details: dict


def _stems(a: WeightedAutomaton, horizon: int, cap: int):
    """Paths from initial states in length order, capped."""
    out = [BoundedRun(q, ()) for q in sorted(a.initial)]
    frontier = list(out)
    for _ in range(horizon):
        nxt = []
        for run in frontier:
            for t in a.arcs_from[run.end]:
                nxt.append(BoundedRun(run.start, run.path + (t,)))
                if len(out) + len(nxt) >= cap:
                    return out + nxt
        out.extend(nxt)
        frontier = nxt
    return out


def _simple_cycles_at(a: WeightedAutomaton, q: str, horizon: int,
                      cap: int = 64) -> list[tuple[Transition, ...]]:
    cycles = []
    stack = [((), q, frozenset([q]))]
    while stack and len(cycles) < cap:
        path, cur, visited = stack.pop()
        if len(path) >= horizon:
            continue
        for t in a.arcs_from[cur]:
            if t[2] == q:
                cycles.append(path + (t,))
            elif t[2] not in visited:
                stack.append((path + (t,), t[2], visited | {t[2]}))
    return cycles


def _lasso_estimates(chain: EstimateChain, a: WeightedAutomaton,
                     stem: Sequence[Transition], cycle: Sequence[Transition],
                     max_rounds: int = 40):
    """Estimates along stem . cycle^n: the list of estimates at each observed
    position of the stem, then per-round position lists until the round-entry
    estimate repeats.  Returns (stem_estimates, rounds, recurrent_slice)."""
    zero = tuple(0 for _ in range(a.k))
    stem_steps, carry = _observed_steps(a, stem, zero)
    x = chain.x0
    stem_estimates = [x]
    for sigma, delta in stem_steps:
        x = chain.step(x, sigma, delta)
        stem_estimates.append(x)
    rounds = []
    seen_entries = {}
    entry = (x, carry)
    for r in range(max_rounds):
        if entry in seen_entries:
            return stem_estimates, rounds, rounds[seen_entries[entry]:]
        seen_entries[entry] = r
        steps, carry = _observed_steps(a, cycle, entry[1])
        x = entry[0]
        positions = []
        for sigma, delta in steps:
            x = chain.step(x, sigma, delta)
            positions.append(x)
        rounds.append(positions)
        entry = (x, carry)
    return stem_estimates, rounds, rounds[-1:]


def oracle_falsify(a: WeightedAutomaton, prop: str, horizon: int = 8,
                   stem_cap: int = 20000) -> Counterexample | None:
    """Bounded search for a definition-level violation of SD/SPD/WD/WPD.

    Sound for the strong notions: a returned counterexample replays to
    recurring ambiguous estimates.  For the weak notions the result is a
    bounded exhaustion report, usable only as a cross-check.
    """
    prop = prop.upper()
    norm, _ = scale_to_integers(normalize(a))
    chain = EstimateChain(norm)
    stems = _stems(norm, horizon, stem_cap)

    found_wd_witness = False
    found_wpd_witness = False
    found_unobs_cycle = False
    any_cycle = False

    for stem in stems:
        for cycle in _simple_cycles_at(norm, stem.end, horizon):
            any_cycle = True
            observable = any(norm.label(e) is not None for (_, e, _, _) in cycle)
            if not observable:
                found_unobs_cycle = True
                stem_est, _, _ = _lasso_estimates(chain, norm, stem.path, cycle)
                final = stem_est[-1]
                if len(final) == 1:
                    found_wpd_witness = True
                if prop == "SPD" and len(final) > 1:
                    return Counterexample(prop, "silent-cycle-after-ambiguity",
                                          stem.path, cycle,
                                          {"estimate": sorted(final)})
                continue
            stem_est, rounds, recurrent = _lasso_estimates(chain, norm, stem.path, cycle)
            rec_positions = [x for rnd in recurrent for x in rnd]
            if not rec_positions:
                continue
            if prop == "SD" and any(len(x) > 1 for x in rec_positions):
                return Counterexample(prop, "recurring-ambiguity", stem.path, cycle,
                                      {"estimates": [sorted(x) for x in rec_positions]})
            if prop == "SPD" and all(len(x) > 1 for x in rec_positions):
                return Counterexample(prop, "persistent-ambiguity", stem.path, cycle,
                                      {"estimates": [sorted(x) for x in rec_positions]})
            if all(len(x) == 1 for x in rec_positions):
                found_wd_witness = True
                found_wpd_witness = True
            elif any(len(x) == 1 for x in rec_positions):
                found_wpd_witness = True

    if prop in ("SD", "SPD"):
        return None
    if prop == "WD":
        if not any_cycle or found_unobs_cycle or found_wd_witness:
            return None
        return Counterexample(prop, "bounded-exhaustion", (), (),
                              {"horizon": horizon, "stems": len(stems)})
    if prop == "WPD":
        if not any_cycle or found_wpd_witness:
            return None
        return Counterexample(prop, "bounded-exhaustion", (), (),
                              {"horizon": horizon, "stems": len(stems)})
    raise ValueError(f"unknown property {prop!r}")
