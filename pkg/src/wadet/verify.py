"""Decision procedures for the four detectability notions.

Strong periodic detectability is decided on the detector: it fails iff
some reachable estimate of size >= 2 contains a state with a silent path
to a silent cycle, or the detector has a reachable cycle visiting only
two-element estimates.  A cross-check re-evaluates the same property on
the observer (fails iff an ambiguous reachable estimate can stall
silently, or some reachable observer cycle avoids singletons) and the two
answers are asserted equal.

Weak (periodic) detectability is decided on the observer: the property
holds vacuously when no infinite run exists or when some infinite run
stops producing output (it enters a silent cycle), and otherwise requires
a reachable observer cycle consisting of singletons (all singletons for
WD, at least one for WPD on the cycle).

Verdicts carry replayable witnesses; UNKNOWN appears only when a bounded
fallback (k > 1) failed to close or an exact-path-length budget ran out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .estimator import EstimatorAutomaton, EstTransition, build_detector, build_observer
from .graphutil import find_cycle, find_path, states_on_cycles
from .model import (
    WeightedAutomaton,
    normalize,
    scale_to_integers,
    states_reaching_unobs_cycle,
)
from .selfcomp import SelfComposition, build_self_composition, check_sd
from .verdict import FAILS, HOLDS, SD, SPD, UNKNOWN, WD, WPD, Verdict


# ---------------------------------------------------------------------
# estimator graph helpers
# ---------------------------------------------------------------------


def _est_steps(est: EstimatorAutomaton):
    succ: dict[frozenset, list[EstTransition]] = {x: [] for x in est.states}
    for t in est.transitions:
        succ[t.source].append(t)
    for lst in succ.values():
        lst.sort(key=lambda t: (t.symbol, repr(t.weight), sorted(t.target)))
    return lambda x: [(t, t.target) for t in succ[x]]


def _events_of(path: list) -> list[tuple[str, object]]:
    return [(t.symbol, t.weight) for (_, t, _) in path]


def _l_omega_nonempty(a: WeightedAutomaton) -> bool:
    """Does some infinite run exist, i.e. is a cycle reachable?"""
    reach = a.reachable_states
    return bool(states_on_cycles(
        reach, lambda q: (t[2] for t in a.arcs_from[q] if t[2] in reach)))


def _silent_cycle_witness(a: WeightedAutomaton) -> dict | None:
    """A reachable silent cycle of the automaton, with an access path."""
    silent = {q: [t for t in a.arcs_from[q] if not a.is_observable(t[1])]
              for q in a.states}
    on_cycle = states_on_cycles(a.states, lambda q: (t[2] for t in silent[q]))
    on_cycle &= a.reachable_states
    if not on_cycle:
        return None
    steps = lambda q: [(t, t[2]) for t in a.arcs_from[q]]
    for q0 in sorted(a.initial):
        hit = find_path(steps, q0, on_cycle)
        if hit is not None:
            path, anchor = hit
            cycle = find_cycle(lambda q: [(t, t[2]) for t in silent[q]], anchor)
            return {"kind": "silent-cycle", "origin": q0,
                    "path": [t for (_, t, _) in path],
                    "cycle": [t for (_, t, _) in cycle]}
    return None


# ---------------------------------------------------------------------
# strong periodic detectability
# ---------------------------------------------------------------------


def _spd_fails_on(a: WeightedAutomaton, est: EstimatorAutomaton,
                  cycle_rule) -> dict | None:
    """Shared body of the detector (Thm-9 style) and observer (Thm-8 style)
    evaluations; cycle_rule picks the states allowed on an ambiguous cycle."""
    steps = _est_steps(est)
    stallers = states_reaching_unobs_cycle(a)

    for x in sorted(est.states, key=sorted):
        if len(x) > 1 and any(q in stallers for q in x):
            access, _ = find_path(steps, est.initial, {x})
            anchor = sorted(q for q in x if q in stallers)[0]
            return {"kind": "ambiguous-estimate-can-stall",
                    "access": _events_of(access), "state": sorted(x),
                    "anchor": anchor}

    allowed = {x for x in est.states if cycle_rule(x)}
    sub_steps = lambda x: [(t, y) for (t, y) in steps(x) if y in allowed]
    cyclic = states_on_cycles(allowed, lambda x: (y for (_, y) in sub_steps(x)))
    if cyclic:
        target = sorted(cyclic, key=sorted)[0]
        access, _ = find_path(steps, est.initial, {target})
        cycle = find_cycle(sub_steps, target)
        return {"kind": "ambiguous-cycle",
                "access": _events_of(access), "cycle": _events_of(cycle),
                "cycle_states": [sorted(x) for x in
                                 [target] + [y for (_, _, y) in cycle]]}
    return None


def check_spd(a: WeightedAutomaton, detector: EstimatorAutomaton | None = None,
              observer: EstimatorAutomaton | None = None,
              cross_check: bool = True) -> Verdict:
    """Strong periodic detectability, decided on the detector; when an
    observer is supplied the observer-side evaluation must agree."""
    if detector is None:
        detector = build_detector(a)
    if not detector.exact:
        # a truncated enumeration can understate estimates, so neither a
        # found violation nor its absence can be trusted
        return Verdict(SPD, UNKNOWN, None, "bounded estimator did not close")
    witness = _spd_fails_on(a, detector, lambda x: len(x) == 2)
    if cross_check and observer is not None and observer.exact:
        other = _spd_fails_on(a, observer, lambda x: len(x) > 1)
        assert (witness is None) == (other is None), \
            "detector and observer evaluations disagree"
    if witness is not None:
        return Verdict(SPD, FAILS, witness)
    return Verdict(SPD, HOLDS, None)


# ---------------------------------------------------------------------
# weak detectability and weak periodic detectability
# ---------------------------------------------------------------------


def _singleton_cycle_witness(est: EstimatorAutomaton, all_singletons: bool) -> dict | None:
    steps = _est_steps(est)
    if all_singletons:
        allowed = {x for x in est.states if len(x) == 1}
        sub = lambda x: [(t, y) for (t, y) in steps(x) if y in allowed]
        cyclic = states_on_cycles(allowed, lambda x: (y for (_, y) in sub(x)))
    else:
        sub = steps
        cyclic = {x for x in states_on_cycles(est.states,
                                              lambda x: (y for (_, y) in steps(x)))
                  if len(x) == 1}
    if not cyclic:
        return None
    target = sorted(cyclic, key=sorted)[0]
    access, _ = find_path(steps, est.initial, {target})
    cycle = find_cycle(sub, target)
    return {"kind": "singleton-cycle", "access": _events_of(access),
            "cycle": _events_of(cycle),
            "cycle_states": [sorted(x) for x in [target] + [y for (_, _, y) in cycle]]}


def check_wd(a: WeightedAutomaton, observer: EstimatorAutomaton | None = None) -> Verdict:
    """Weak detectability via the observer."""
    if not _l_omega_nonempty(a):
        return Verdict(WD, HOLDS, {"kind": "no-infinite-run"},
                       "no infinite run exists")
    silent = _silent_cycle_witness(a)
    if silent is not None:
        return Verdict(WD, HOLDS, silent, "some infinite run stops producing output")
    if observer is None:
        observer = build_observer(a)
    if not observer.exact:
        return Verdict(WD, UNKNOWN, None, "bounded estimator did not close")
    witness = _singleton_cycle_witness(observer, all_singletons=True)
    if witness is not None:
        return Verdict(WD, HOLDS, witness)
    return Verdict(WD, FAILS, {"kind": "no-detection-route",
                               "nonsingleton_cycles_only": True})


def check_wpd(a: WeightedAutomaton, observer: EstimatorAutomaton | None = None) -> Verdict:
    """Weak periodic detectability via the observer."""
    if not _l_omega_nonempty(a):
        return Verdict(WPD, HOLDS, {"kind": "no-infinite-run"},
                       "no infinite run exists")
    if observer is None:
        observer = build_observer(a)
    stallers = states_reaching_unobs_cycle(a)
    # the initial estimate is an exact closure even in bounded mode
    if len(observer.initial) == 1 and next(iter(observer.initial)) in stallers:
        return Verdict(WPD, HOLDS, {
            "kind": "singleton-estimate-can-stall",
            "access": [], "state": sorted(observer.initial)})
    if not observer.exact:
        return Verdict(WPD, UNKNOWN, None, "bounded estimator did not close")
    steps = _est_steps(observer)
    for x in sorted(observer.states, key=sorted):
        if len(x) == 1 and next(iter(x)) in stallers:
            access, _ = find_path(steps, observer.initial, {x})
            return Verdict(WPD, HOLDS, {
                "kind": "singleton-estimate-can-stall",
                "access": _events_of(access), "state": sorted(x)})
    witness = _singleton_cycle_witness(observer, all_singletons=False)
    if witness is not None:
        return Verdict(WPD, HOLDS, witness)
    return Verdict(WPD, FAILS, {"kind": "no-detection-route"})


# ---------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------


@dataclass
class AnalysisResult:
    automaton: WeightedAutomaton  # normalized, integer-scaled
    scale: int
    verdicts: dict[str, Verdict]
    self_composition: SelfComposition
    observer: EstimatorAutomaton
    detector: EstimatorAutomaton

    def statuses(self) -> dict[str, str]:
        return {p: v.status for p, v in self.verdicts.items()}


def check_all(a: WeightedAutomaton, budget: int = 10 ** 6) -> AnalysisResult:
    """Normalize, scale, build every structure, decide all four notions."""
    prepared, m = scale_to_integers(normalize(a))
    cc = build_self_composition(prepared, budget)
    observer = build_observer(prepared)
    detector = build_detector(prepared)
    verdicts = {
        SD: check_sd(prepared, cc, budget),
        SPD: check_spd(prepared, detector, observer),
        WD: check_wd(prepared, observer),
        WPD: check_wpd(prepared, observer),
    }
    return AnalysisResult(prepared, m, verdicts, cc, observer, detector)
