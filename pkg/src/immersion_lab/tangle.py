"""Separations, edge-cuts, tangles and edge-tangles.

Families are either explicit (a frozenset of members) or backed by a
membership oracle.  Axiom checkers never sample: they enumerate every
separation or cut of small order and raise CapacityError when the host is
too large to enumerate.

Line-graph convention: ``line_graph`` names each vertex of L(G) by the id of
the edge of G it stands for, so a separation of L(G) is expressed in G's
edge ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import Budget, CapacityError, InputError, as_budget
from .generators import paper_wall_2r_r, wall, wall_columns, wall_row_edges, wall_rows
from .immersion import Immersion, Thorns, verify_immersion, verify_subdivision
from .multigraph import (
    EdgeCut,
    Multigraph,
    bridges,
    components,
    cut_order,
    delete_edges,
    delete_vertices,
    is_connected,
    line_graph,
)
from .verdict import Verdict

SWEEP_MAX_VERTICES = 25
_CHUNK = 1 << 20


# ------------------------------------------------------------ separations


@dataclass(frozen=True)
class Separation:
    """(A, B) with A = (a_vertices, a_edges) and B = (b_vertices, b_edges)."""

    a_vertices: frozenset
    a_edges: frozenset
    b_vertices: frozenset
    b_edges: frozenset

    @classmethod
    def of(cls, av: Iterable[int], ae: Iterable[int], bv: Iterable[int], be: Iterable[int]) -> "Separation":
        return cls(frozenset(av), frozenset(ae), frozenset(bv), frozenset(be))

    @property
    def boundary(self) -> frozenset:
        return self.a_vertices & self.b_vertices

    @property
    def order(self) -> int:
        return len(self.boundary)

    def reversed(self) -> "Separation":
        return Separation(self.b_vertices, self.b_edges, self.a_vertices, self.a_edges)

    def validate(self, g: Multigraph) -> None:
        vs, es = frozenset(g.vertices), frozenset(g.edge_ids)
        if self.a_edges & self.b_edges:
            raise InputError("separation sides share an edge")
        if (self.a_edges | self.b_edges) != es:
            raise InputError("separation sides do not cover the edge set")
        if (self.a_vertices | self.b_vertices) != vs:
            raise InputError("separation sides do not cover the vertex set")
        for side_v, side_e in ((self.a_vertices, self.a_edges), (self.b_vertices, self.b_edges)):
            for eid in side_e:
                e = g.edge(eid)
                if e.u not in side_v or e.v not in side_v:
                    raise InputError(f"edge {eid} has an end outside its side")

    def __repr__(self) -> str:
        return (
            f"({sorted(self.a_vertices)}/{sorted(self.a_edges)}, "
            f"{sorted(self.b_vertices)}/{sorted(self.b_edges)})"
        )


def _vmask(g: Multigraph, vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << g.position(v)
    return m


def _edge_pos(g: Multigraph) -> dict[int, int]:
    return {eid: i for i, eid in enumerate(g.edge_ids)}


def cut_key(g: Multigraph, c: EdgeCut) -> int:
    """Canonical order of cuts: the A-side as a bitmask over vertex positions."""
    return _vmask(g, c.a)


def separation_key(g: Multigraph, s: Separation, epos: Mapping[int, int] | None = None) -> tuple[int, int]:
    epos = epos if epos is not None else _edge_pos(g)
    em = 0
    for eid in s.a_edges:
        em |= 1 << epos[eid]
    return _vmask(g, s.a_vertices), em


def _adjacent_via(g: Multigraph, v: int, eids: frozenset) -> set[int]:
    return {e.other(v) for e in g.incident(v) if e.id in eids}


def normalize(g: Multigraph, s: Separation) -> Separation:
    """Normalization of a separation in three steps.

    1. Every non-isolated boundary vertex whose A-neighbours all lie in V(B)
       leaves A, and all of its edges move to B.
    2. B-edges with both ends on the (new) boundary move to A.
    3. Vertices isolated in B leave B and join A.
    """
    s.validate(g)
    av, ae = set(s.a_vertices), set(s.a_edges)
    bv, be = set(s.b_vertices), set(s.b_edges)
    movers = [
        v for v in g.vertices
        if v in av and v in bv and g.incident(v) and _adjacent_via(g, v, s.a_edges) <= s.b_vertices
    ]
    for v in movers:
        av.discard(v)
        for e in g.incident(v):
            ae.discard(e.id)
            be.add(e.id)
    boundary = av & bv
    for eid in list(be):
        e = g.edge(eid)
        if e.u in boundary and e.v in boundary:
            be.discard(eid)
            ae.add(eid)
    touched = {x for eid in be for x in (g.edge(eid).u, g.edge(eid).v)}
    for v in list(bv):
        if v not in touched:
            bv.discard(v)
            av.add(v)
    return Separation.of(av, ae, bv, be)


def is_normalized(g: Multigraph, s: Separation) -> bool:
    s.validate(g)
    a_only = s.a_vertices - s.b_vertices
    b_only = s.b_vertices - s.a_vertices
    for v in s.boundary:
        nb = g.neighbors(v)
        if not (nb & a_only) or not (nb & b_only):
            return False
    return True


def partner(g: Multigraph, s: Separation, line: Multigraph | None = None) -> EdgeCut:
    """Edge-cut of g attached to a normalized separation of L(g).

    B' holds the non-isolated vertices whose incident edges all lie in V(B);
    every other vertex goes to A'.
    """
    lg = line if line is not None else line_graph(g)[0]
    if not is_normalized(lg, s):
        raise InputError("partner is defined for normalized separations only")
    a, b = [], []
    for v in g.vertices:
        cl = {e.id for e in g.incident(v)}
        if cl and cl <= s.b_vertices:
            b.append(v)
        else:
            a.append(v)
    return EdgeCut.of(a, b)


# ------------------------------------------------------------ enumeration


def _cut_from_mask(g: Multigraph, mask: int) -> EdgeCut:
    vs = g.vertices
    a = [vs[i] for i in range(len(vs)) if mask >> i & 1]
    return EdgeCut(frozenset(a), frozenset(vs) - frozenset(a))


def _sweep_masks(g: Multigraph, max_order: int) -> list[int]:
    n = g.n
    if n > SWEEP_MAX_VERTICES:
        raise CapacityError(f"bipartition sweep limited to {SWEEP_MAX_VERTICES} vertices, got {n}")
    pairs = [(g.position(e.u), g.position(e.v)) for e in g.edges if not e.is_loop]
    out: list[int] = []
    total = 1 << n
    for lo in range(0, total, _CHUNK):
        masks = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        order = np.zeros(masks.shape, dtype=np.int32)
        for pu, pv in pairs:
            order += ((masks >> pu) ^ (masks >> pv)) & 1
        out.extend(int(x) for x in masks[order < max_order])
    return out


def _crossing_masks(g: Multigraph, max_order: int, budget: Budget) -> list[int]:
    """Cuts found by guessing their crossing set F, |F| < max_order."""
    found: set[int] = set()
    candidates = [e for e in g.edges if not e.is_loop]
    for k in range(max(0, max_order)):
        for F in combinations(candidates, k):
            budget.tick()
            fids = {e.id for e in F}
            rest = delete_edges(g, fids)
            comps = [_vmask(g, c) for c in components(rest)]
            if len(comps) > 24:
                raise CapacityError("too many components for crossing-set enumeration")
            for bits in range(1 << len(comps)):
                budget.tick()
                mask = 0
                for i, cm in enumerate(comps):
                    if bits >> i & 1:
                        mask |= cm
                if all((mask >> g.position(e.u) & 1) != (mask >> g.position(e.v) & 1) for e in F):
                    found.add(mask)
    return sorted(found)


def _bridge_masks(g: Multigraph, max_order: int) -> list[int]:
    if max_order > 2 or not is_connected(g):
        raise InputError("bridge enumeration needs a connected graph and max order at most 2")
    full = (1 << g.n) - 1
    out = {0, full}
    if max_order == 2:
        for eid in bridges(g):
            side = components(delete_edges(g, [eid]))[0]
            m = _vmask(g, side)
            out.update((m, full ^ m))
    return sorted(out)


def enumerate_cuts(
    g: Multigraph,
    max_order: int,
    method: str = "auto",
    budget: Budget | int | None = None,
) -> list[EdgeCut]:
    """Every edge-cut of order < max_order, sorted by A-side bitmask.

    ``method`` is "sweep" (all bipartitions, |V| <= 25), "crossing" (guess the
    crossing set), "bridges" (max_order <= 2 on connected graphs) or "auto".
    """
    budget = as_budget(budget)
    if max_order <= 0:
        return []
    if method == "auto":
        method = "sweep" if g.n <= 20 else "crossing"
    if method == "sweep":
        masks = _sweep_masks(g, max_order)
        budget.tick(len(masks))
    elif method == "crossing":
        masks = _crossing_masks(g, max_order, budget)
    elif method == "bridges":
        masks = _bridge_masks(g, max_order)
    else:
        raise InputError(f"unknown cut enumeration method {method!r}")
    return [_cut_from_mask(g, m) for m in masks]


def enumerate_separations(
    g: Multigraph, max_order: int, budget: Budget | int | None = None
) -> list[Separation]:
    """Every separation of order < max_order.

    A separation is fixed by its boundary X, the side of each component of
    G - X, and the side of each edge with both ends in X.
    """
    budget = as_budget(budget)
    out: list[Separation] = []
    vs = g.vertices
    for k in range(min(max_order, g.n + 1)):
        for X in combinations(vs, k):
            xs = frozenset(X)
            rest = delete_vertices(g, xs)
            comps = [frozenset(c) for c in components(rest)]
            comp_edges = [frozenset(e.id for e in g.edges if e.u in c or e.v in c) for c in comps]
            inner = [e.id for e in g.edges if e.u in xs and e.v in xs]
            free = len(comps) + len(inner)
            if free > 24:
                raise CapacityError("too many free choices for separation enumeration")
            for bits in range(1 << free):
                budget.tick()
                av, ae, bv, be = set(xs), set(), set(xs), set()
                for i, c in enumerate(comps):
                    if bits >> i & 1:
                        bv |= c
                        be |= comp_edges[i]
                    else:
                        av |= c
                        ae |= comp_edges[i]
                for j, eid in enumerate(inner):
                    (be if bits >> (len(comps) + j) & 1 else ae).add(eid)
                out.append(Separation.of(av, ae, bv, be))
    return out


# --------------------------------------------------------------- families


class _Family:
    host: Multigraph
    order: int | Fraction
    members: frozenset | None
    oracle: Callable | None

    def _init(self, host, order, members, oracle):
        if (members is None) == (oracle is None):
            raise InputError("give exactly one of an explicit member set or an oracle")
        if order <= 0:
            raise InputError("order must be positive")
        self.host = host
        self.order = order
        self.members = frozenset(members) if members is not None else None
        self.oracle = oracle

    @property
    def explicit(self) -> bool:
        return self.members is not None

    @property
    def bound(self) -> int:
        """Smallest integer k such that members have order < k."""
        return ceil(self.order)


class TangleFamily(_Family):
    """A candidate tangle: a set of separations of the host of order < ``order``."""

    def __init__(self, host: Multigraph, order, members: Iterable[Separation] | None = None,
                 oracle: Callable[[Separation], bool] | None = None):
        self._init(host, order, members, oracle)
        if self.members is not None:
            for s in self.members:
                s.validate(host)

    def __contains__(self, s: Separation) -> bool:
        if not s.order < self.order:
            return False
        if self.members is not None:
            return s in self.members
        return bool(self.oracle(s))

    def iter_members(self, budget: Budget | int | None = None) -> list[Separation]:
        if self.members is not None:
            epos = _edge_pos(self.host)
            return sorted((s for s in self.members if s.order < self.order),
                          key=lambda s: separation_key(self.host, s, epos))
        return [s for s in enumerate_separations(self.host, self.bound, budget) if s in self]


class EdgeTangleFamily(_Family):
    """A candidate edge-tangle: a set of edge-cuts of the host of order < ``order``."""

    def __init__(self, host: Multigraph, order: int, members: Iterable[EdgeCut] | None = None,
                 oracle: Callable[[EdgeCut], bool] | None = None):
        self._init(host, order, members, oracle)
        self._orders: dict[EdgeCut, int] = {}
        if self.members is not None:
            for c in self.members:
                c.validate(host)

    def cut_order(self, c: EdgeCut) -> int:
        k = self._orders.get(c)
        if k is None:
            k = cut_order(self.host, c)
            self._orders[c] = k
        return k

    def __contains__(self, c: EdgeCut) -> bool:
        if self.members is not None:
            return c in self.members and self.cut_order(c) < self.order
        if not self.cut_order(c) < self.order:
            return False
        return bool(self.oracle(c))

    def iter_members(self, budget: Budget | int | None = None, method: str = "auto") -> list[EdgeCut]:
        if self.members is not None:
            return sorted((c for c in self.members if self.cut_order(c) < self.order),
                          key=lambda c: cut_key(self.host, c))
        return [c for c in enumerate_cuts(self.host, self.bound, method, budget) if c in self]

    def materialize(self, budget: Budget | int | None = None, method: str = "auto") -> "EdgeTangleFamily":
        return EdgeTangleFamily(self.host, self.order, self.iter_members(budget, method))


# -------------------------------------------------------- axiom checkers


def _first_zero_triple(masks: Sequence[int]) -> tuple[int, int, int] | None:
    """Lexicographically least i <= j <= k with masks[i] & masks[j] & masks[k] == 0."""
    n = len(masks)
    if n == 0:
        return None
    wide = max(masks).bit_length() > 64
    arr = None if wide else np.array(masks, dtype=np.uint64)
    for i in range(n):
        if masks[i] == 0:
            return i, i, i
        for j in range(i, n):
            p = masks[i] & masks[j]
            if p == 0:
                return i, j, j
            if wide:
                for k in range(j, n):
                    if masks[k] & p == 0:
                        return i, j, k
            else:
                hits = np.flatnonzero((arr[j:] & np.uint64(p)) == 0)
                if hits.size:
                    return i, j, j + int(hits[0])
    return None


def _incident_count(g: Multigraph, side: frozenset) -> int:
    return sum(1 for e in g.edges if e.u in side or e.v in side)


def check_edge_tangle_axioms(
    e: EdgeTangleFamily,
    cuts: Iterable[EdgeCut] | None = None,
    budget: Budget | int | None = None,
    method: str = "auto",
) -> Verdict:
    """Check (E1)-(E3) against every cut of order < theta.

    ``cuts`` may supply the complete list of such cuts; otherwise they are
    enumerated (capacity error beyond the sweep limit).
    """
    g, theta = e.host, e.order
    if cuts is None:
        all_cuts = enumerate_cuts(g, e.bound, method, budget)
    else:
        all_cuts = []
        for c in cuts:
            c.validate(g)
            if cut_order(g, c) < theta:
                all_cuts.append(c)
        all_cuts.sort(key=lambda c: cut_key(g, c))
    if e.members is not None:
        known = set(all_cuts)
        stray = sorted((c for c in e.members if c not in known), key=lambda c: cut_key(g, c))
        if stray:
            return Verdict.failed("member is not an edge-cut of order below the tangle order", stray[0])
    # per-member (E3) first, then the orientation axiom (E1)
    inside = [c in e for c in all_cuts]
    members = [c for c, ok in zip(all_cuts, inside) if ok]
    for c in members:
        if _incident_count(g, c.b) < theta:
            return Verdict.failed("(E3) too few edges incident with the B-side", c)
    member_set = set(members)
    for c, ok in zip(all_cuts, inside):
        if not ok and c.reversed() not in member_set:
            return Verdict.failed("(E1) neither orientation of a cut is a member", c)
    triple = _first_zero_triple([_vmask(g, c.b) for c in members])
    if triple is not None:
        return Verdict.failed("(E2) three B-sides with empty intersection", [members[i] for i in triple])
    return Verdict.passed()


def _sep_mask(g: Multigraph, vs: frozenset, es: frozenset, epos: Mapping[int, int]) -> int:
    m = _vmask(g, vs)
    for eid in es:
        m |= 1 << (g.n + epos[eid])
    return m


def check_tangle_axioms(
    t: TangleFamily,
    separations: Iterable[Separation] | None = None,
    budget: Budget | int | None = None,
) -> Verdict:
    """Check (T1)-(T3) against every separation of order < theta."""
    g = t.host
    epos = _edge_pos(g)
    if separations is None:
        seps = enumerate_separations(g, t.bound, budget)
    else:
        seps = []
        for s in separations:
            s.validate(g)
            if s.order < t.order:
                seps.append(s)
        seps.sort(key=lambda s: separation_key(g, s, epos))
    if t.members is not None:
        known = set(seps)
        stray = sorted((s for s in t.members if s not in known), key=lambda s: separation_key(g, s, epos))
        if stray:
            return Verdict.failed("member is not a separation of order below the tangle order", stray[0])
    inside = [s in t for s in seps]
    members = [s for s, ok in zip(seps, inside) if ok]
    all_v = frozenset(g.vertices)
    for s in members:
        if s.a_vertices == all_v:
            return Verdict.failed("(T3) a small side contains every vertex", s)
    member_set = set(members)
    for s, ok in zip(seps, inside):
        if not ok and s.reversed() not in member_set:
            return Verdict.failed("(T1) neither orientation of a separation is a member", s)
    full = (1 << (g.n + g.m)) - 1
    comp = [full ^ _sep_mask(g, s.a_vertices, s.a_edges, epos) for s in members]
    triple = _first_zero_triple(comp)
    if triple is not None:
        return Verdict.failed("(T2) three small sides cover the graph", [members[i] for i in triple])
    return Verdict.passed()


# ------------------------------------------------------ materialization


def _orient_pairs(items, key, reverse):
    pairs: dict = {}
    for x in items:
        pairs.setdefault(frozenset((x, reverse(x))), []).append(x)
    ordered = sorted(pairs.values(), key=lambda group: min(key(x) for x in group))
    return [sorted(group, key=key) for group in ordered]


def _search_orientations(groups, masks, limit, budget) -> Iterator[list]:
    """Choose one element per group so that no triple of chosen masks ANDs to 0."""
    chosen: list = []
    chosen_masks: list[int] = []
    pair_ands: list[int] = []

    def ok(m: int) -> bool:
        if m == 0:
            return False
        for x in chosen_masks:
            if m & x == 0:
                return False
        for p in pair_ands:
            if m & p == 0:
                return False
        return True

    def rec(i: int):
        budget.tick()
        if i == len(groups):
            yield list(chosen)
            return
        for x in groups[i]:
            m = masks[x]
            if not ok(m):
                continue
            added = [m & y for y in chosen_masks] + [m]
            chosen.append(x)
            chosen_masks.append(m)
            pair_ands.extend(added)
            yield from rec(i + 1)
            del pair_ands[len(pair_ands) - len(added):]
            chosen_masks.pop()
            chosen.pop()

    count = 0
    for sol in rec(0):
        yield sol
        count += 1
        if limit is not None and count >= limit:
            return


def find_edge_tangles(
    g: Multigraph, theta: int, limit: int | None = None, budget: Budget | int | None = None
) -> list[EdgeTangleFamily]:
    """All edge-tangles of order theta in g (at most ``limit`` of them), explicitly."""
    if theta < 1:
        raise InputError("edge-tangle order must be positive")
    budget = as_budget(budget)
    all_cuts = enumerate_cuts(g, theta, budget=budget)
    cuts = [c for c in all_cuts if _incident_count(g, c.b) >= theta]
    groups = _orient_pairs(all_cuts, lambda c: cut_key(g, c), EdgeCut.reversed)
    allowed = set(cuts)
    groups = [[c for c in grp if c in allowed] for grp in groups]
    if any(not grp for grp in groups):
        return []
    masks = {c: _vmask(g, c.b) for c in cuts}
    return [EdgeTangleFamily(g, theta, sol) for sol in _search_orientations(groups, masks, limit, budget)]


def find_tangles(
    g: Multigraph, theta: int, limit: int | None = None, budget: Budget | int | None = None
) -> list[TangleFamily]:
    """All tangles of order theta in g (at most ``limit`` of them), explicitly."""
    if theta < 1:
        raise InputError("tangle order must be positive")
    budget = as_budget(budget)
    epos = _edge_pos(g)
    seps = enumerate_separations(g, theta, budget)
    all_v = frozenset(g.vertices)
    groups = _orient_pairs(seps, lambda s: separation_key(g, s, epos), Separation.reversed)
    groups = [[s for s in grp if s.a_vertices != all_v] for grp in groups]
    if any(not grp for grp in groups):
        return []
    full = (1 << (g.n + g.m)) - 1
    masks = {s: full ^ _sep_mask(g, s.a_vertices, s.a_edges, epos) for grp in groups for s in grp}
    return [TangleFamily(g, theta, sol) for sol in _search_orientations(groups, masks, limit, budget)]


# ---------------------------------------------------------- constructions


def conjugate(e: EdgeTangleFamily) -> TangleFamily:
    """Tangle on L(host): (A, B) is a member iff 3 * order < theta and the
    partner of its normalization belongs to e.  The order is kept as the
    exact fraction theta / 3."""
    g = e.host
    lg, _ = line_graph(g)
    theta = e.order

    def member(s: Separation) -> bool:
        if not 3 * s.order < theta:
            return False
        return partner(g, normalize(lg, s), lg) in e

    return TangleFamily(lg, Fraction(theta, 3), oracle=member)


def restrict(e: EdgeTangleFamily, x: Iterable[int]) -> EdgeTangleFamily:
    """E - X on host - X, of order theta - |X|; same member cuts."""
    xs = frozenset(x)
    for eid in xs:
        e.host.edge(eid)
    if len(xs) >= e.order:
        raise InputError("can only remove fewer edges than the order")
    sub = delete_edges(e.host, xs)
    order = e.order - len(xs)
    if e.members is not None:
        return EdgeTangleFamily(sub, order, [c for c in e.members if cut_order(sub, c) < order])
    return EdgeTangleFamily(sub, order, oracle=lambda c: c in e)


def _members_below(e: EdgeTangleFamily, bound: int, budget: Budget) -> Iterator[EdgeCut]:
    if bound <= 0:
        return
    if e.members is not None:
        for c in e.iter_members():
            if e.cut_order(c) < bound:
                yield c
        return
    for c in enumerate_cuts(e.host, min(bound, e.bound), budget=budget):
        if c in e:
            yield c


def free_vertices_witness(t: TangleFamily, x: Iterable[int], budget: Budget | int | None = None) -> Separation | None:
    xs = frozenset(x)
    for v in xs:
        t.host.position(v)
    k = len(xs)
    if k == 0:
        return None
    if t.members is not None:
        cands = [s for s in t.iter_members() if s.order < k]
    else:
        cands = [s for s in enumerate_separations(t.host, min(k, t.bound), budget) if s in t]
    for s in cands:
        if xs <= s.a_vertices:
            return s
    return None


def is_free_vertices(t: TangleFamily, x: Iterable[int], budget: Budget | int | None = None) -> bool:
    """No member of order < |X| has X inside V(A)."""
    return free_vertices_witness(t, x, budget) is None


def free_edges_witness(
    e: EdgeTangleFamily, y: Iterable[int], budget: Budget | int | None = None
) -> tuple[frozenset, EdgeCut] | None:
    """(Z, [A,B]) showing Y is not free, or None when Y is free."""
    budget = as_budget(budget)
    ys = sorted(set(y))
    for eid in ys:
        e.host.edge(eid)
    for r in range(len(ys) + 1):
        if r >= e.order:
            break
        for Z in combinations(ys, r):
            rest = [e.host.edge(i) for i in ys if i not in Z]
            bound = min(len(rest), e.order - r)
            if bound <= 0:
                continue
            sub = restrict(e, Z)
            for c in _members_below(sub, bound, budget):
                if all(f.u in c.a and f.v in c.a for f in rest):
                    return frozenset(Z), c
    return None


def is_free_edges(e: EdgeTangleFamily, y: Iterable[int], budget: Budget | int | None = None) -> bool:
    return free_edges_witness(e, y, budget) is None


def induced_edge_tangle(host: Multigraph, imm: Immersion, eprime: EdgeTangleFamily) -> EdgeTangleFamily:
    """Edge-tangle of the host induced by an H-immersion and an edge-tangle of H."""
    if imm.host.canonical() != host.canonical() or imm.pattern.canonical() != eprime.host.canonical():
        raise InputError("immersion does not match the host and pattern")
    v = verify_immersion(imm)
    if not v:
        raise InputError(f"invalid immersion: {v.reason}")
    h = eprime.host
    branch = dict(imm.branch)

    def member(c: EdgeCut) -> bool:
        a = [p for p in h.vertices if branch[p] in c.a]
        b = [p for p in h.vertices if branch[p] not in c.a]
        return EdgeCut.of(a, b) in eprime

    return EdgeTangleFamily(host, eprime.order, oracle=member)


def wall_edge_tangle(r: int, theta: int) -> EdgeTangleFamily:
    """Cuts of order < theta of the r-row, r-column wall whose B-side holds a whole column."""
    if r < 2 * theta:
        raise InputError(f"need r >= 2 * theta, got r={r}, theta={theta}")
    g = paper_wall_2r_r(r)
    cols = wall_columns(r, 2 * r)
    return EdgeTangleFamily(g, theta, oracle=lambda c: any(col <= c.b for col in cols))


def wall_cut_trichotomy(r: int, theta: int) -> Verdict:
    """Every cut of order < theta of the r-row, r-column wall (theta <= r) has:
    exactly one side holding a whole column, exactly one side holding a whole
    row, and A holds a column iff A holds a row.  Checked over all bipartitions."""
    if not 1 <= theta <= r:
        raise InputError("need 1 <= theta <= r")
    m, n = r, 2 * r
    g = wall(m, n)
    if g.n > SWEEP_MAX_VERTICES:
        raise CapacityError(f"bipartition sweep limited to {SWEEP_MAX_VERTICES} vertices")
    col_masks = [_vmask(g, c) for c in wall_columns(m, n)]
    row_masks = [_vmask(g, c) for c in wall_rows(m, n)]
    pairs = [(g.position(e.u), g.position(e.v)) for e in g.edges]
    total = 1 << g.n
    for lo in range(0, total, _CHUNK):
        masks = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        order = np.zeros(masks.shape, dtype=np.int32)
        for pu, pv in pairs:
            order += ((masks >> pu) ^ (masks >> pv)) & 1
        masks = masks[order < theta]

        def holds(sets):
            a = np.zeros(masks.shape, dtype=bool)
            b = np.zeros(masks.shape, dtype=bool)
            for s in sets:
                a |= (masks & s) == s
                b |= (masks & s) == 0
            return a, b

        a_col, b_col = holds(col_masks)
        a_row, b_row = holds(row_masks)
        checks = [
            ("exactly one side holds a column", a_col != b_col),
            ("exactly one side holds a row", a_row != b_row),
            ("A holds a column iff A holds a row", a_col == a_row),
        ]
        for label, good in checks:
            bad = np.flatnonzero(~good)
            if bad.size:
                return Verdict.failed(label, _cut_from_mask(g, int(masks[bad[0]])))
    return Verdict.passed()


def is_cross_free(cuts: Sequence[EdgeCut], host: Multigraph | None = None) -> bool:
    """A-sides pairwise disjoint over distinct positions of the sequence."""
    universe = None
    for c in cuts:
        if c.a & c.b:
            raise InputError("edge-cut sides intersect")
        u = c.a | c.b
        if host is not None:
            c.validate(host)
        elif universe is not None and u != universe:
            raise InputError("cuts live on different vertex sets")
        universe = u
    for i in range(len(cuts)):
        for j in range(i + 1, len(cuts)):
            if cuts[i].a & cuts[j].a:
                return False
    return True


def controls(e: EdgeTangleFamily, th: Thorns, budget: Budget | int | None = None) -> bool:
    """Every member of order < |V(H)| has a B-side meeting every branch set."""
    g = e.host
    sets = []
    for p in th.pattern.vertices:
        vs = set()
        for eid in th.branch_sets[p]:
            ed = g.edge(eid)
            vs.update((ed.u, ed.v))
        sets.append(vs)
    for c in _members_below(e, th.pattern.n, as_budget(budget)):
        if any(not (vs & c.b) for vs in sets):
            return False
    return True


def induced_by_wall_subdivision(
    t: TangleFamily, sub: Immersion, m: int, n: int, budget: Budget | int | None = None
) -> bool:
    """Every member (A, B) has E(B) meeting the image of every row of the wall."""
    if sub.pattern.canonical() != wall(m, n).canonical():
        raise InputError("subdivision pattern is not the stated wall")
    v = verify_subdivision(sub)
    if not v:
        raise InputError(f"invalid wall subdivision: {v.reason}")
    rows = []
    for i in range(1, m + 1):
        img = set()
        for eid in wall_row_edges(m, n, i):
            img.update(sub.routes[eid])
        rows.append(img)
    for s in t.iter_members(budget):
        if any(not (s.b_edges & img) for img in rows):
            return False
    return True


# ------------------------------------------------------------------ JSON


def cut_to_json(c: EdgeCut) -> dict:
    return {"sideA": sorted(c.a), "sideB": sorted(c.b)}


def separation_to_json(s: Separation) -> dict:
    return {
        "sideA": {"vertices": sorted(s.a_vertices), "edges": sorted(s.a_edges)},
        "sideB": {"vertices": sorted(s.b_vertices), "edges": sorted(s.b_edges)},
    }


def edge_tangle_to_json(e: EdgeTangleFamily, budget: Budget | int | None = None) -> dict:
    return {"order": e.order, "members": [cut_to_json(c) for c in e.iter_members(budget)]}


def tangle_to_json(t: TangleFamily, budget: Budget | int | None = None) -> dict:
    order = t.order
    if isinstance(order, Fraction):
        order = str(order) if order.denominator != 1 else order.numerator
    return {"order": order, "members": [separation_to_json(s) for s in t.iter_members(budget)]}


def _parse_order(raw):
    try:
        value = Fraction(str(raw))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad order {raw!r}") from None
    return value.numerator if value.denominator == 1 else value


def edge_tangle_from_json(obj: Mapping, g: Multigraph) -> EdgeTangleFamily:
    try:
        order = _parse_order(obj["order"])
        members = [EdgeCut.of([int(x) for x in m["sideA"]], [int(x) for x in m["sideB"]]) for m in obj["members"]]
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed edge-tangle certificate: {exc}") from None
    return EdgeTangleFamily(g, order, members)


def tangle_from_json(obj: Mapping, g: Multigraph) -> TangleFamily:
    try:
        order = _parse_order(obj["order"])
        members = []
        for m in obj["members"]:
            a, b = m["sideA"], m["sideB"]
            members.append(Separation.of(
                [int(x) for x in a["vertices"]], [int(x) for x in a["edges"]],
                [int(x) for x in b["vertices"]], [int(x) for x in b["edges"]],
            ))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed tangle certificate: {exc}") from None
    return TangleFamily(g, order, members)
