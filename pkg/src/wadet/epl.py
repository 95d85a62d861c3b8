"""Exact-path-length engine over integer-weighted digraphs.

For one-dimensional weights the full achievable-weight set of walks
between two vertices is computed exactly as an eventually periodic set:
every walk decomposes into a simple path plus simple cycles that attach,
transitively, to the path's vertex set.  Simple paths and simple cycles
are aggregated by (vertex set, weight), cycle insertion is explored as a
monotone growth of the visited vertex set, and the repeatable part is an
N-span of the cycle weights available inside the final vertex set.

For higher dimensions the decision question (is there a walk of exactly
weight z?) is answered by enumerating candidate arc supports and solving
the resulting flow-with-weight system by bounded depth-first search; the
search is budgeted and exhaustion surfaces as UNKNOWN, never as a silent
wrong answer.  YES always carries a walk that is replayed before being
returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, gcd
from typing import Iterable, Sequence

from .epset import EPSet, eps_shift, eps_union_many, nspan
from .graphutil import reachable

Vec = tuple[int, ...]


@dataclass(frozen=True)
class Arc:
    tail: object
    weight: Vec
    head: object
    aid: int = 0


@dataclass(frozen=True)
class WeightedDigraph:
    k: int
    vertices: tuple
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        for a in self.arcs:
            if a.tail not in vs or a.head not in vs:
                raise ValueError(f"arc endpoints not declared: {a}")
            if len(a.weight) != self.k:
                raise ValueError(f"arc weight has wrong dimension: {a}")


def digraph(k: int, vertices: Iterable, arcs: Iterable[tuple]) -> WeightedDigraph:
    """Build a graph from (tail, weight, head) triples; scalars allowed for k=1."""
    built = []
    for i, (tail, weight, head) in enumerate(arcs):
        if isinstance(weight, int):
            weight = (weight,)
        built.append(Arc(tail, tuple(int(w) for w in weight), head, i))
    return WeightedDigraph(k, tuple(vertices), tuple(built))


@dataclass(frozen=True)
class EplAnswer:
    status: str  # "YES" | "NO" | "UNKNOWN"
    walk: tuple[Arc, ...] | None = None


def walk_weight(walk: Sequence[Arc], k: int) -> Vec:
    total = [0] * k
    for a in walk:
        for i, w in enumerate(a.weight):
            total[i] += w
    return tuple(total)


def replay_walk(walk: Sequence[Arc], u, v) -> bool:
    """Check arc chaining from u to v (empty walk only when u == v)."""
    if not walk:
        return u == v
    if walk[0].tail != u or walk[-1].head != v:
        return False
    return all(a.head == b.tail for a, b in zip(walk, walk[1:]))


# ---------------------------------------------------------------------
# one-dimensional machinery
# ---------------------------------------------------------------------


class WeightSetSolver:
    """Per-graph memoizing solver for 1-dimensional achievable-weight sets."""

    def __init__(self, graph: WeightedDigraph):
        if graph.k != 1:
            raise ValueError("weight sets require dimension 1")
        for a in graph.arcs:
            if not isinstance(a.weight[0], int):
                raise ValueError("weights must be pre-scaled to integers")
        self.graph = graph
        self._succ: dict[object, list[Arc]] = {v: [] for v in graph.vertices}
        self._pred: dict[object, list[Arc]] = {v: [] for v in graph.vertices}
        for a in graph.arcs:
            self._succ[a.tail].append(a)
            self._pred[a.head].append(a)
        self._sets: dict[tuple, EPSet] = {}
        self._cycles_cache: dict[frozenset, dict] = {}

    # -- public ---------------------------------------------------------

    def weight_set(self, u, v) -> EPSet:
        key = (u, v)
        if key not in self._sets:
            self._sets[key] = self._compute(u, v, want_walk=None)[0]
        return self._sets[key]

    def witness_walk(self, u, v, z: int) -> tuple[Arc, ...] | None:
        if z not in self.weight_set(u, v):
            return None
        _, walk = self._compute(u, v, want_walk=z)
        assert walk is not None and replay_walk(walk, u, v)
        assert walk_weight(walk, 1) == (z,)
        return tuple(walk)

    # -- decomposition ----------------------------------------------------

    def _region(self, u, v) -> set:
        fwd = reachable([u], lambda x: (a.head for a in self._succ[x]))
        bwd = reachable([v], lambda x: (a.tail for a in self._pred[x]))
        region = fwd & bwd
        if u == v:
            region.add(u)
        return region

    def _simple_paths(self, u, v, region: set) -> dict[tuple[frozenset, int], list[Arc]]:
        """Simple u->v paths grouped by (vertex set, weight); one exemplar each."""
        if u == v:
            return {(frozenset([u]), 0): []}
        found: dict[tuple[frozenset, int], list[Arc]] = {}
        # DP over (current vertex, visited set) keeping one exemplar per weight
        layer: dict[tuple[object, frozenset], dict[int, list[Arc]]] = {
            (u, frozenset([u])): {0: []}
        }
        while layer:
            nxt: dict[tuple[object, frozenset], dict[int, list[Arc]]] = {}
            for (cur, visited), by_weight in layer.items():
                for a in self._succ[cur]:
                    h = a.head
                    if h not in region or h in visited:
                        continue
                    for w, arcs in by_weight.items():
                        w2 = w + a.weight[0]
                        path = arcs + [a]
                        if h == v:
                            found.setdefault((visited | {v}, w2), path)
                        else:
                            slot = nxt.setdefault((h, visited | {h}), {})
                            slot.setdefault(w2, path)
            layer = nxt
        return found

    def _simple_cycles(self, region: set) -> dict[tuple[frozenset, int], list[Arc]]:
        """Simple cycles within region grouped by (vertex set, weight)."""
        key = frozenset(region)
        if key in self._cycles_cache:
            return self._cycles_cache[key]
        order = {x: i for i, x in enumerate(sorted(region, key=repr))}
        found: dict[tuple[frozenset, int], list[Arc]] = {}
        for anchor in region:
            base = order[anchor]
            layer: dict[tuple[object, frozenset], dict[int, list[Arc]]] = {
                (anchor, frozenset([anchor])): {0: []}
            }
            while layer:
                nxt: dict[tuple[object, frozenset], dict[int, list[Arc]]] = {}
                for (cur, visited), by_weight in layer.items():
                    for a in self._succ[cur]:
                        h = a.head
                        if h == anchor:
                            for w, arcs in by_weight.items():
                                found.setdefault((visited, w + a.weight[0]), arcs + [a])
                            continue
                        if h not in region or order[h] <= base or h in visited:
                            continue
                        for w, arcs in by_weight.items():
                            slot = nxt.setdefault((h, visited | {h}), {})
                            slot.setdefault(w + a.weight[0], arcs + [a])
                layer = nxt
        self._cycles_cache[key] = found
        return found

    def _chain_states(self, start: frozenset,
                      cycles: dict[tuple[frozenset, int], list[Arc]]):
        """All (vertex set, inserted-weight) states reachable by inserting
        vertex-growing cycles, with parents for reconstruction."""
        start_state = (start, 0)
        parents: dict[tuple[frozenset, int], tuple | None] = {start_state: None}
        frontier = [start_state]
        while frontier:
            nv: list[tuple[frozenset, int]] = []
            for (vs, base) in frontier:
                for (cvs, cw), _ in cycles.items():
                    if cvs <= vs or not (cvs & vs):
                        continue
                    state = (vs | cvs, base + cw)
                    if state not in parents:
                        parents[state] = ((vs, base), (cvs, cw))
                        nv.append(state)
            frontier = nv
        return parents

    def _span_generators(self, vs: frozenset,
                         cycles: dict[tuple[frozenset, int], list[Arc]]) -> list[int]:
        return sorted({cw for (cvs, cw) in cycles if cvs <= vs})

    def _compute(self, u, v, want_walk: int | None) -> tuple[EPSet, list[Arc] | None]:
        region = self._region(u, v)
        if u not in region or v not in region:
            return (EPSet.finite([0]) if u == v else EPSet.empty()), ([] if u == v and want_walk == 0 else None)
        paths = self._simple_paths(u, v, region)
        if not paths:
            return EPSet.empty(), None
        cycles = self._simple_cycles(region)
        pieces: list[EPSet] = []
        span_cache: dict[frozenset, tuple[list[int], EPSet]] = {}
        for (pvs, pw), path_arcs in sorted(paths.items(), key=lambda kv: (sorted(map(repr, kv[0][0])), kv[0][1])):
            parents = self._chain_states(pvs, cycles)
            for (vs, base) in sorted(parents, key=lambda s: (sorted(map(repr, s[0])), s[1])):
                if vs not in span_cache:
                    gens = self._span_generators(vs, cycles)
                    span_cache[vs] = (gens, nspan(gens))
                gens, span = span_cache[vs]
                if want_walk is None:
                    pieces.append(eps_shift(span, pw + base))
                    continue
                target = want_walk - pw - base
                if target not in span:
                    continue
                counts = nspan_witness(gens, target)
                if counts is None:
                    continue
                walk = self._assemble(u, path_arcs, pvs, parents, (vs, base), counts, cycles)
                return EPSet.empty(), walk
        if want_walk is not None:
            raise AssertionError("witness requested for non-member weight")
        return eps_union_many(pieces), None

    def _assemble(self, u, path_arcs: list[Arc], path_vs: frozenset, parents,
                  chain_end, counts: dict[int, int],
                  cycles: dict[tuple[frozenset, int], list[Arc]]) -> list[Arc]:
        # chain insertions in discovery order (root to leaf)
        chain: list[tuple[frozenset, int]] = []
        state = chain_end
        while parents[state] is not None:
            prev, cyc = parents[state]
            chain.append(cyc)
            state = prev
        chain.reverse()
        walk = list(path_arcs)

        def splice(cycle_arcs: list[Arc], copies: int) -> None:
            nonlocal walk
            cyc_vertices = {a.tail for a in cycle_arcs}
            verts = [u] + [a.head for a in walk]
            pos = next(i for i, x in enumerate(verts) if x in cyc_vertices)
            at = verts[pos]
            start = next(i for i, a in enumerate(cycle_arcs) if a.tail == at)
            rotated = cycle_arcs[start:] + cycle_arcs[:start]
            walk = walk[:pos] + rotated * copies + walk[pos:]

        for (cvs, cw) in chain:
            splice(cycles[(cvs, cw)], 1)
        final_vs = chain_end[0]
        for gen_weight, count in counts.items():
            if count == 0:
                continue
            exemplar = next(arcs for (cvs, cw), arcs in sorted(
                cycles.items(), key=lambda kv: (kv[0][1], sorted(map(repr, kv[0][0]))))
                if cw == gen_weight and cvs <= final_vs)
            splice(exemplar, count)
        return walk


def weight_set(graph: WeightedDigraph, u, v) -> EPSet:
    """Exact set of walk weights from u to v (k = 1, integer weights)."""
    return WeightSetSolver(graph).weight_set(u, v)


# ---------------------------------------------------------------------
# N-span witnesses (counts for a target value)
# ---------------------------------------------------------------------


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g >= 0."""
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def nspan_witness(generators: Sequence[int], target: int) -> dict[int, int] | None:
    """Nonnegative counts per generator summing to target, or None."""
    gens = sorted({g for g in generators if g != 0})
    if not gens:
        return {} if target == 0 else None
    pos = [g for g in gens if g > 0]
    neg = [g for g in gens if g < 0]
    if pos and not neg:
        return _witness_same_sign(pos, target)
    if neg and not pos:
        flipped = _witness_same_sign([-g for g in neg], -target)
        return None if flipped is None else {-g: c for g, c in flipped.items()}
    return _witness_mixed(gens, target)


def _witness_same_sign(pos: list[int], target: int) -> dict[int, int] | None:
    if target < 0:
        return None
    d = 0
    for g in pos:
        d = gcd(d, g)
    if target % d:
        return None
    m = max(pos)
    bound = m * m + 2 * m
    counts: dict[int, int] = {}
    if target > bound:
        # peel copies of the largest generator; the remainder stays above
        # every gap of the semigroup, hence remains achievable
        extra = ceil((target - bound) / m)
        counts[m] = extra
        target -= extra * m
    parent: list[int | None] = [None] * (target + 1)
    reach = bytearray(target + 1)
    reach[0] = 1
    for n in range(1, target + 1):
        for g in pos:
            if g <= n and reach[n - g]:
                reach[n] = 1
                parent[n] = g
                break
    if not reach[target]:
        return None
    n = target
    while n > 0:
        g = parent[n]
        counts[g] = counts.get(g, 0) + 1
        n -= g
    return counts


def _witness_mixed(gens: list[int], target: int) -> dict[int, int] | None:
    d = 0
    for g in gens:
        d = gcd(d, abs(g))
    if target % d:
        return None
    # integer (possibly negative) combination via iterated extended gcd
    coeffs: dict[int, int] = {}
    g_cur = 0
    for g in gens:
        gg, x, y = _ext_gcd(g_cur, g)
        coeffs = {h: c * x for h, c in coeffs.items()}
        coeffs[g] = coeffs.get(g, 0) + y
        g_cur = gg
    scale = target // d
    coeffs = {h: c * scale for h, c in coeffs.items()}
    p = min(g for g in gens if g > 0)
    q = max(g for g in gens if g < 0)
    d2, xp, xq = _ext_gcd(p, -q)  # xp*p + xq*(-q) = d2
    coeffs.setdefault(p, 0)
    coeffs.setdefault(q, 0)
    for h in list(coeffs):
        if h in (p, q) or coeffs[h] >= 0:
            continue
        step = d2 // gcd(abs(h), d2)  # least delta with delta*h = 0 (mod d2)
        delta = ceil(-coeffs[h] / step) * step
        coeffs[h] += delta
        v = delta * h  # multiple of d2; cancel it through the (p, q) pair
        assert v % d2 == 0
        coeffs[p] += xp * (-v // d2)
        coeffs[q] += -xq * (-v // d2)
    # zero pump on (p, q): adds (-q/d2)*p + (p/d2)*q = 0
    qp, qq = (-q) // d2, p // d2
    pump = 0
    if coeffs[p] < 0:
        pump = ceil(-coeffs[p] / qp)
    if coeffs[q] < 0:
        pump = max(pump, ceil(-coeffs[q] / qq))
    coeffs[p] += pump * qp
    coeffs[q] += pump * qq
    assert all(c >= 0 for c in coeffs.values())
    assert sum(h * c for h, c in coeffs.items()) == target
    return {h: c for h, c in coeffs.items() if c > 0}


# ---------------------------------------------------------------------
# the decision operation
# ---------------------------------------------------------------------


DEFAULT_BUDGET = 10 ** 6


@dataclass
class _Budget:
    nodes: int

    def spend(self, n: int = 1) -> bool:
        self.nodes -= n
        return self.nodes >= 0


def has_path_with_weight(graph: WeightedDigraph, u, v, z: Sequence[int],
                         budget: "int | _Budget" = DEFAULT_BUDGET) -> EplAnswer:
    """Is there a walk from u to v with total weight exactly z?

    Dimension 1 is decided exactly through the weight-set machinery and
    never returns UNKNOWN.  Higher dimensions enumerate arc supports and
    solve the balance/weight system within a node budget; passing a
    _Budget instance lets callers share one budget across many queries.
    """
    z = tuple(int(x) for x in z)
    if len(z) != graph.k:
        raise ValueError(f"weight dimension mismatch: {z} vs k={graph.k}")
    if graph.k == 1:
        solver = WeightSetSolver(graph)
        if z[0] not in solver.weight_set(u, v):
            return EplAnswer("NO")
        return EplAnswer("YES", solver.witness_walk(u, v, z[0]))
    if isinstance(budget, int):
        budget = _Budget(budget)
    return _multi_dim(graph, u, v, z, budget)


def _multi_dim(graph: WeightedDigraph, u, v, z: Vec, budget: _Budget) -> EplAnswer:
    succ: dict[object, list[Arc]] = {x: [] for x in graph.vertices}
    pred: dict[object, list[Arc]] = {x: [] for x in graph.vertices}
    for a in graph.arcs:
        succ[a.tail].append(a)
        pred[a.head].append(a)
    fwd = reachable([u], lambda x: (a.head for a in succ[x]))
    bwd = reachable([v], lambda x: (a.tail for a in pred[x]))
    region = fwd & bwd
    if u == v:
        region.add(u)
    if u not in region or v not in region:
        if u == v and z == (0,) * graph.k:
            return EplAnswer("YES", ())
        return EplAnswer("NO")
    if u == v and z == (0,) * graph.k:
        return EplAnswer("YES", ())

    arcs = sorted((a for a in graph.arcs if a.tail in region and a.head in region),
                  key=lambda a: a.aid)

    probe = _bounded_walk_probe(succ, region, u, v, z,
                                _Budget(min(budget.nodes, 20000)))
    if probe is not None:
        return EplAnswer("YES", probe)

    if len(arcs) > 14:  # support enumeration is 2^|arcs|
        return EplAnswer("UNKNOWN")

    unknown = False
    for mask in range(1, 1 << len(arcs)):
        if not budget.spend():
            return EplAnswer("UNKNOWN")
        support = [a for i, a in enumerate(arcs) if mask >> i & 1]
        result = _solve_support(graph.k, support, u, v, z, budget)
        if result == "UNKNOWN":
            unknown = True
        elif result is not None:
            walk = _euler_walk(result, u, v)
            if walk is not None:
                assert walk_weight(walk, graph.k) == z and replay_walk(walk, u, v)
                return EplAnswer("YES", tuple(walk))
    return EplAnswer("UNKNOWN") if unknown else EplAnswer("NO")


def _bounded_walk_probe(succ, region, u, v, z: Vec, budget: _Budget,
                        max_len: int = 64) -> tuple[Arc, ...] | None:
    """Cheap breadth-first probe for an easy YES."""
    start = (u, (0,) * len(z))
    seen: set[tuple[object, Vec]] = {start}
    frontier: dict[tuple[object, Vec], tuple] = {start: ()}
    window = 4 * max(map(abs, z), default=1) + 64
    for _ in range(max_len):
        nxt: dict[tuple[object, Vec], tuple] = {}
        for (x, w), walk in frontier.items():
            for a in succ[x]:
                if a.head not in region:
                    continue
                if not budget.spend():
                    return None
                w2 = tuple(wi + ai for wi, ai in zip(w, a.weight))
                key = (a.head, w2)
                if key in seen:
                    continue
                walk2 = walk + (a,)
                if a.head == v and w2 == z:
                    return walk2
                if all(abs(c) <= window for c in w2):
                    seen.add(key)
                    nxt[key] = walk2
        frontier = nxt
        if not frontier:
            return None
    return None


def _solve_support(k: int, support: list[Arc], u, v, z: Vec, budget: _Budget):
    """Multiplicities y_a >= 1 on the support with flow balance u->v and
    total weight z, or None; 'UNKNOWN' when the budget runs out."""
    verts = {a.tail for a in support} | {a.head for a in support}
    if u not in verts or v not in verts:
        return None
    # connectivity: every support arc must be usable on some u->v walk
    s_succ: dict[object, list[Arc]] = {x: [] for x in verts}
    s_pred: dict[object, list[Arc]] = {x: [] for x in verts}
    for a in support:
        s_succ[a.tail].append(a)
        s_pred[a.head].append(a)
    from_u = reachable([u], lambda x: (a.head for a in s_succ[x]))
    to_v = reachable([v], lambda x: (a.tail for a in s_pred[x]))
    if verts - (from_u & to_v):
        return None

    # unknowns x_a >= 0 with y_a = 1 + x_a
    eqs: list[tuple[list[int], int]] = []  # (coeffs per arc, rhs)
    for x in verts:
        bal = (1 if x == u else 0) - (1 if x == v else 0)
        coeffs = [(1 if a.tail == x else 0) - (1 if a.head == x else 0) for a in support]
        rhs = bal - sum(coeffs)
        eqs.append((coeffs, rhs))
    for i in range(k):
        coeffs = [a.weight[i] for a in support]
        rhs = z[i] - sum(coeffs)
        eqs.append((coeffs, rhs))

    if _linear_screen(eqs) == "infeasible":
        return None

    amax = max((abs(c) for coeffs, _ in eqs for c in coeffs), default=1) or 1
    bmax = max((abs(r) for _, r in eqs), default=1) or 1
    n, m = len(support), len(eqs)
    var_bound = min(((n + m) * (amax + bmax + 1)) ** (min(m, 6) + 1), 10 ** 9)

    assignment = [0] * n
    result = _dfs_solve(eqs, assignment, 0, var_bound, budget)
    if result == "UNKNOWN":
        return "UNKNOWN"
    if result is None:
        return None
    return {a: 1 + result[i] for i, a in enumerate(support)}


def _linear_screen(eqs):
    """Gaussian elimination over Q; 'infeasible' when no rational solution
    exists or some variable is forced to a negative or fractional value."""
    from fractions import Fraction

    rows = [[Fraction(c) for c in coeffs] + [Fraction(rhs)] for coeffs, rhs in eqs]
    if not rows:
        return None
    cols = len(rows[0]) - 1
    pivot_row = 0
    for col in range(cols):
        pivot = next((r for r in range(pivot_row, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        lead = rows[pivot_row][col]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                factor = rows[r][col] / lead
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    for row in rows:
        support = [(j, c) for j, c in enumerate(row[:-1]) if c]
        if not support and row[-1] != 0:
            return "infeasible"
        if len(support) == 1:
            value = row[-1] / support[0][1]
            if value < 0 or value.denominator != 1:
                return "infeasible"
    return None


def _dfs_solve(eqs, assignment, idx, var_bound, budget: _Budget):
    if not budget.spend():
        return "UNKNOWN"
    n = len(assignment)
    if idx == n:
        return list(assignment) if all(
            sum(c * x for c, x in zip(coeffs, assignment)) == rhs for coeffs, rhs in eqs
        ) else None
    # residual feasibility: an equation whose free variables all have zero
    # coefficient must already match; gcd of free coefficients must divide
    for coeffs, rhs in eqs:
        fixed = sum(c * x for c, x in zip(coeffs[:idx], assignment[:idx]))
        free = coeffs[idx:]
        g = 0
        for c in free:
            g = gcd(g, c)
        if g == 0:
            if fixed != rhs:
                return None
        elif (rhs - fixed) % g:
            return None
    for val in range(var_bound + 1):
        assignment[idx] = val
        # prune on equations whose remaining coefficients have one sign;
        # stop scanning entirely once larger values cannot recover
        ok = True
        hopeless = False
        for coeffs, rhs in eqs:
            fixed = sum(c * x for c, x in zip(coeffs[: idx + 1], assignment[: idx + 1]))
            rest = coeffs[idx + 1:]
            if fixed > rhs and all(c >= 0 for c in rest):
                ok = False
                hopeless = coeffs[idx] >= 0
                break
            if fixed < rhs and all(c <= 0 for c in rest):
                ok = False
                hopeless = coeffs[idx] <= 0
                break
        if ok:
            sub = _dfs_solve(eqs, assignment, idx + 1, var_bound, budget)
            if sub == "UNKNOWN" or sub is not None:
                assignment[idx] = 0
                return sub
        if hopeless:
            break
        if not budget.spend():
            assignment[idx] = 0
            return "UNKNOWN"
    assignment[idx] = 0
    return None


def _euler_walk(multiplicity: dict[Arc, int], u, v) -> list[Arc] | None:
    """Walk using each arc exactly its multiplicity, smallest arc id first."""
    remaining = {a: c for a, c in multiplicity.items() if c > 0}
    out: dict[object, list[Arc]] = {}
    for a in remaining:
        out.setdefault(a.tail, []).append(a)
    for arcs in out.values():
        arcs.sort(key=lambda a: a.aid)
    total = sum(remaining.values())
    trail: list[Arc] = []
    arc_stack: list[Arc] = []
    avail = dict(remaining)

    def next_arc(x):
        for a in out.get(x, []):
            if avail.get(a, 0) > 0:
                return a
        return None

    vertex_stack = [u]
    while vertex_stack:
        x = vertex_stack[-1]
        a = next_arc(x)
        if a is None:
            vertex_stack.pop()
            if arc_stack:
                trail.append(arc_stack.pop())
        else:
            avail[a] -= 1
            arc_stack.append(a)
            vertex_stack.append(a.head)
    trail.reverse()
    if len(trail) != total or not replay_walk(trail, u, v):
        return None
    return trail
