"""Document format, serialization, and DOT export.

Automata travel as JSON with exact rational weights written as strings
("3", "-1/2").  Serialization is canonical (sorted components, fixed key
order), so parse followed by serialize is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .estimator import EstimatorAutomaton
from .model import WeightedAutomaton, validate
from .selfcomp import SelfComposition

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, context: str = ""):
        super().__init__(f"{context}: {message}" if context else message)
        self.context = context


def rational_to_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def str_to_rational(text, context: str = "") -> Fraction:
    try:
        value = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r} ({exc})", context) from exc
    return value


def _weight_in(entries, context: str) -> list[Fraction]:
    if not isinstance(entries, (list, tuple)):
        raise ParseError(f"weight must be a list, got {entries!r}", context)
    return [str_to_rational(x, f"{context}[{i}]") for i, x in enumerate(entries)]


def parse(document: Mapping) -> WeightedAutomaton:
    """Decode an automaton document (already JSON-decoded) and validate it."""
    if not isinstance(document, Mapping):
        raise ParseError("document must be an object")
    version = document.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}")
    raw = {
        "k": document.get("k"),
        "states": document.get("states", []),
        "initial": {},
        "events": {},
        "transitions": [],
    }
    for i, entry in enumerate(document.get("initial", [])):
        ctx = f"initial[{i}]"
        raw["initial"][entry.get("state")] = _weight_in(entry.get("weight"), f"{ctx}.weight")
    for i, entry in enumerate(document.get("events", [])):
        raw["events"][entry.get("name")] = entry.get("label")
    for i, entry in enumerate(document.get("transitions", [])):
        ctx = f"transitions[{i}]"
        raw["transitions"].append((
            entry.get("from"), entry.get("event"), entry.get("to"),
            _weight_in(entry.get("weight"), f"{ctx}.weight"),
        ))
    return validate(raw)


def serialize(a: WeightedAutomaton) -> dict:
    """Canonical document for an automaton; loses nothing."""
    return {
        "format_version": FORMAT_VERSION,
        "k": a.k,
        "states": sorted(a.states),
        "initial": [
            {"state": q, "weight": [rational_to_str(x) for x in w]}
            for q, w in sorted(a.initial.items())
        ],
        "events": [
            {"name": e, "label": l} for e, l in sorted(a.events.items())
        ],
        "transitions": [
            {"from": s, "event": e, "to": d,
             "weight": [rational_to_str(x) for x in w]}
            for (s, e, d, w) in sorted(a.transitions)
        ],
    }


def dumps(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=False) + "\n"


def loads(text: str) -> WeightedAutomaton:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: line {exc.lineno}, column {exc.colno}") from exc
    return parse(document)


# ---------------------------------------------------------------------
# structure documents
# ---------------------------------------------------------------------


def _weight_label(w) -> str:
    if isinstance(w, tuple):
        return "(" + ",".join(str(x) for x in w) + ")"
    return str(w)


def estimator_to_json(est: EstimatorAutomaton, scale: int = 1) -> dict:
    def name(x):
        return sorted(x)

    return {
        "format_version": FORMAT_VERSION,
        "kind": est.kind,
        "k": est.k,
        "scale": scale,
        "exact": est.exact,
        "initial": name(est.initial),
        "states": sorted((name(x) for x in est.states)),
        "transitions": [
            {
                "from": name(t.source),
                "symbol": t.symbol,
                "weight": _weight_label(t.weight),
                "to": name(t.target),
                "cell": t.cell.to_json() if t.cell is not None else None,
            }
            for t in sorted(est.transitions,
                            key=lambda t: (name(t.source), t.symbol,
                                           repr(t.weight), name(t.target)))
        ],
    }


def selfcomp_to_json(cc: SelfComposition, scale: int = 1) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "scale": scale,
        "initial": sorted(map(list, cc.initial)),
        "states": sorted(map(list, cc.states)),
        "complete": not cc.unknown_queries,
        "transitions": [
            {"from": list(t.source), "events": list(t.events), "to": list(t.target)}
            for t in sorted(cc.transitions, key=lambda t: (t.source, t.events, t.target))
        ],
    }


# ---------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def automaton_to_dot(a: WeightedAutomaton, name: str = "automaton") -> str:
    lines = [f'digraph "{_dot_escape(name)}" {{', "  rankdir=LR;"]
    for q in sorted(a.states):
        shape = "doublecircle" if q in a.initial else "circle"
        lines.append(f'  "{_dot_escape(q)}" [shape={shape}];')
    for (s, e, d, w) in sorted(a.transitions):
        label = a.label(e)
        shown = label if label is not None else "~"
        wtxt = ",".join(rational_to_str(x) for x in w)
        lines.append(f'  "{_dot_escape(s)}" -> "{_dot_escape(d)}" '
                     f'[label="{_dot_escape(f"{e}:{shown}/{wtxt}")}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def selfcomp_to_dot(cc: SelfComposition, name: str = "selfcomp") -> str:
    def node(p):
        return f"{p[0]},{p[1]}"

    lines = [f'digraph "{_dot_escape(name)}" {{', "  rankdir=LR;"]
    for s in sorted(cc.states):
        shape = "doublecircle" if s in cc.initial else "circle"
        lines.append(f'  "{_dot_escape(node(s))}" [shape={shape}];')
    for t in sorted(cc.transitions, key=lambda t: (t.source, t.events, t.target)):
        label = f"({t.events[0]},{t.events[1]})"
        lines.append(f'  "{_dot_escape(node(t.source))}" -> "{_dot_escape(node(t.target))}" '
                     f'[label="{_dot_escape(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def estimator_to_dot(est: EstimatorAutomaton, name: str | None = None) -> str:
    def node(x):
        return "{" + ",".join(sorted(x)) + "}"

    lines = [f'digraph "{_dot_escape(name or est.kind)}" {{', "  rankdir=LR;"]
    for x in sorted(est.states, key=sorted):
        shape = "doublecircle" if x == est.initial else "circle"
        lines.append(f'  "{_dot_escape(node(x))}" [shape={shape}];')
    for t in sorted(est.transitions, key=lambda t: (sorted(t.source), t.symbol,
                                                    repr(t.weight), sorted(t.target))):
        cell = f" in {t.cell}" if t.cell is not None and not t.cell.is_finite() else ""
        label = f"({t.symbol},{_weight_label(t.weight)}){cell}"
        lines.append(f'  "{_dot_escape(node(t.source))}" -> "{_dot_escape(node(t.target))}" '
                     f'[label="{_dot_escape(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
