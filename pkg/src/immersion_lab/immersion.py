"""Immersions, subdivisions, thorns and minors: certificate checks and exact search.

An immersion of a pattern H in a host G is an injective branch map
V(H) -> V(G) plus, for every pattern edge, a route in G: a path between the
images of its ends, or a cycle through the image of its end when the edge is
a loop.  Routes of distinct pattern edges are edge-disjoint.  The half-integral
variant lets each host edge serve at most two routes.

The searches here are exact backtracking procedures meant for desk-scale
instances.  They distinguish "definitely absent" (``None``) from "ran out of
budget" (:class:`~immersion_lab.errors.CapacityError`).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import Budget, CapacityError, InputError, as_budget
from .multigraph import Edge, Multigraph, induced_subgraph, line_graph, to_json, from_json
from .verdict import Verdict

__all__ = [
    "Immersion",
    "HalfIntegralImmersion",
    "Thorns",
    "MinorModel",
    "SPlus",
    "verify_immersion",
    "verify_half_integral",
    "verify_subdivision",
    "verify_thorns",
    "verify_minor",
    "iter_immersions",
    "find_immersion",
    "find_minor",
    "find_thorns",
    "s_plus",
    "realizes",
    "enumerate_shells",
    "identity_immersion",
    "lift_half_integral",
    "project_to_half_integral",
]


@dataclass(frozen=True, eq=False)
class Immersion:
    pattern: Multigraph
    host: Multigraph
    branch: Mapping[int, int]
    routes: Mapping[int, tuple[int, ...]]

    def image(self) -> frozenset[int]:
        return frozenset(eid for r in self.routes.values() for eid in r)

    def usage(self) -> Counter:
        return Counter(eid for r in self.routes.values() for eid in r)

    def to_json(self) -> dict:
        return {
            "pattern": to_json(self.pattern),
            "host": to_json(self.host),
            "branch": {str(k): self.branch[k] for k in sorted(self.branch)},
            "routes": {str(k): list(self.routes[k]) for k in sorted(self.routes)},
        }

    @classmethod
    def from_json(cls, obj: Mapping, host: Multigraph | None = None) -> "Immersion":
        try:
            pattern = from_json(obj["pattern"])
            if host is None:
                host = from_json(obj["host"])
            elif "host" in obj and from_json(obj["host"]).canonical() != host.canonical():
                raise InputError("certificate host differs from the supplied graph")
            branch = {int(k): int(v) for k, v in obj["branch"].items()}
            routes = {int(k): tuple(int(x) for x in v) for k, v in obj["routes"].items()}
        except (KeyError, AttributeError, TypeError, ValueError) as exc:
            raise InputError(f"malformed immersion certificate: {exc}") from None
        return cls(pattern, host, branch, routes)


class HalfIntegralImmersion(Immersion):
    """Same data as :class:`Immersion`; routes may share host edges pairwise."""


def identity_immersion(g: Multigraph) -> Immersion:
    return Immersion(g, g, {v: v for v in g.vertices}, {e.id: (e.id,) for e in g.edges})


# ------------------------------------------------------------ verification


def _check_ids(imm: Immersion) -> None:
    h, g = imm.pattern, imm.host
    for hv, gv in imm.branch.items():
        if not h.has_vertex(hv):
            raise InputError(f"branch map names unknown pattern vertex {hv}")
        if not g.has_vertex(gv):
            raise InputError(f"branch map names unknown host vertex {gv}")
    for he, route in imm.routes.items():
        if not h.has_edge(he):
            raise InputError(f"route given for unknown pattern edge {he}")
        for eid in route:
            if not g.has_edge(eid):
                raise InputError(f"route of pattern edge {he} uses unknown host edge {eid}")


def _connected_edge_set(g: Multigraph, ids: Iterable[int]) -> bool:
    es = [g.edge(i) for i in ids]
    if not es:
        return False
    adj: dict[int, set[int]] = {}
    for e in es:
        adj.setdefault(e.u, set()).add(e.v)
        adj.setdefault(e.v, set()).add(e.u)
    start = es[0].u
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(adj)


def _route_problem(g: Multigraph, route: tuple[int, ...], s: int, t: int, loop: bool) -> str:
    """Empty string when the route is a valid s-t path (or cycle through s); else why not."""
    if not route:
        return "empty route"
    if len(set(route)) != len(route):
        return "route repeats an edge"
    deg: Counter = Counter()
    for eid in route:
        e = g.edge(eid)
        deg[e.u] += 1
        deg[e.v] += 1
    if not _connected_edge_set(g, route):
        return "route is disconnected"
    if loop:
        if any(d != 2 for d in deg.values()):
            return "loop route is not a cycle"
        if s not in deg:
            return "cycle misses the branch vertex"
        return ""
    if any(g.edge(eid).is_loop for eid in route):
        return "path route contains a loop"
    if deg.get(s) != 1 or deg.get(t) != 1:
        return "path route does not end at the branch vertices"
    if any(d != 2 for v, d in deg.items() if v not in (s, t)):
        return "path route is not a path"
    return ""


def _verify_structure(imm: Immersion) -> Verdict:
    _check_ids(imm)
    h, g = imm.pattern, imm.host
    missing = [v for v in h.vertices if v not in imm.branch]
    if missing:
        return Verdict.failed("branch map is not total", {"vertices": missing})
    images = Counter(imm.branch.values())
    clash = sorted(v for v, c in images.items() if c > 1)
    if clash:
        return Verdict.failed("branch map is not injective", {"host_vertices": clash})
    missing_e = [e.id for e in h.edges if e.id not in imm.routes]
    if missing_e:
        return Verdict.failed("some pattern edges have no route", {"edges": missing_e})
    for e in h.edges:
        route = tuple(imm.routes[e.id])
        problem = _route_problem(g, route, imm.branch[e.u], imm.branch[e.v], e.is_loop)
        if problem:
            return Verdict.failed(f"invalid route: {problem}", {"pattern_edge": e.id, "route": list(route)})
    return Verdict.passed()


def _multiplicity_violation(imm: Immersion, limit: int) -> Verdict:
    owners: dict[int, list[int]] = {}
    for e in imm.pattern.edges:
        for eid in imm.routes[e.id]:
            owners.setdefault(eid, []).append(e.id)
    for eid in sorted(owners):
        if len(owners[eid]) > limit:
            clause = "routes are not edge-disjoint" if limit == 1 else "host edge used by more than two routes"
            return Verdict.failed(clause, {"host_edge": eid, "pattern_edges": owners[eid]})
    return Verdict.passed()


def verify_immersion(imm: Immersion) -> Verdict:
    v = _verify_structure(imm)
    return v if not v else _multiplicity_violation(imm, 1)


def verify_half_integral(imm: Immersion) -> Verdict:
    v = _verify_structure(imm)
    return v if not v else _multiplicity_violation(imm, 2)


def _route_vertices(g: Multigraph, route: Iterable[int]) -> set[int]:
    out = set()
    for eid in route:
        e = g.edge(eid)
        out.update((e.u, e.v))
    return out


def verify_subdivision(imm: Immersion) -> Verdict:
    """Immersion whose routes meet only in images of common ends."""
    v = verify_immersion(imm)
    if not v:
        return v
    h, g = imm.pattern, imm.host
    verts = {e.id: _route_vertices(g, imm.routes[e.id]) for e in h.edges}
    es = list(h.edges)
    for i, e1 in enumerate(es):
        for e2 in es[i + 1:]:
            allowed = {imm.branch[x] for x in e1.ends & e2.ends}
            extra = (verts[e1.id] & verts[e2.id]) - allowed
            if extra:
                return Verdict.failed(
                    "routes share a vertex outside the images of common ends",
                    {"pattern_edges": [e1.id, e2.id], "vertices": sorted(extra)},
                )
    return Verdict.passed()


# ------------------------------------------------------------------ search


class _Router:
    """Enumerates routes in a host restricted to a mutable set of available edges.

    Routes come out shortest first.  Among parallel copies only the first
    available one (in host edge order) is tried: copies are interchangeable
    at the moment of choice, so this loses no solutions.
    """

    def __init__(self, g: Multigraph, avail: set[int], budget: Budget):
        self.g = g
        self.avail = avail
        self.budget = budget
        self.pair_ids: dict[int, dict[int, list[int]]] = {v: {} for v in g.vertices}
        self.loops: dict[int, list[int]] = {v: [] for v in g.vertices}
        for e in g.edges:
            if e.is_loop:
                self.loops[e.u].append(e.id)
            else:
                self.pair_ids[e.u].setdefault(e.v, []).append(e.id)
                self.pair_ids[e.v].setdefault(e.u, []).append(e.id)
        self.pos = {v: i for i, v in enumerate(g.vertices)}

    def _first(self, ids: list[int], skip: int = -1) -> int | None:
        for i in ids:
            if i in self.avail and i != skip:
                return i
        return None

    def _dist_from(self, t: int) -> dict[int, int]:
        dist = {t: 0}
        queue = deque([t])
        while queue:
            x = queue.popleft()
            for y, ids in self.pair_ids[x].items():
                if y not in dist and self._first(ids) is not None:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def _exact(self, x, t, r, visited, acc, dist) -> Iterator[tuple[int, ...]]:
        self.budget.tick()
        if r == 1:
            ids = self.pair_ids[x].get(t)
            c = self._first(ids) if ids else None
            if c is not None:
                yield tuple(acc) + (c,)
            return
        for y, ids in self.pair_ids[x].items():
            if y in visited or y == t:
                continue
            d = dist.get(y)
            if d is None or d > r - 1:
                continue
            c = self._first(ids)
            if c is None:
                continue
            visited.add(y)
            acc.append(c)
            yield from self._exact(y, t, r - 1, visited, acc, dist)
            acc.pop()
            visited.discard(y)

    def paths(self, s: int, t: int) -> Iterator[tuple[int, ...]]:
        dist = self._dist_from(t)
        if s not in dist:
            return
        for length in range(max(1, dist[s]), len(self.g.vertices)):
            yield from self._exact(s, t, length, {s}, [], dist)

    def cycles(self, s: int) -> Iterator[tuple[int, ...]]:
        c = self._first(self.loops[s])
        if c is not None:
            yield (c,)
        for y, ids in self.pair_ids[s].items():
            c1 = self._first(ids)
            if c1 is None:
                continue
            c2 = self._first(ids, skip=c1)
            if c2 is not None:
                yield (c1, c2)
        dist = self._dist_from(s)
        for length in range(3, len(self.g.vertices) + 1):
            for y, ids in self.pair_ids[s].items():
                c1 = self._first(ids)
                if c1 is None or dist.get(y, length) > length - 1:
                    continue
                for rest in self._exact(y, s, length - 1, {y}, [], dist):
                    last = self.g.edge(rest[-1]).other(s)
                    if self.pos[y] < self.pos[last]:
                        yield (c1,) + rest


class _ImmersionSearch:
    def __init__(
        self,
        g: Multigraph,
        h: Multigraph,
        fixed: Mapping[int, int] | None,
        forbidden: Iterable[int] | None,
        candidates: Mapping[int, Iterable[int]] | None,
        budget: Budget,
    ):
        self.g, self.h = g, h
        fixed = dict(fixed or {})
        for p, x in fixed.items():
            h.position(p)
            g.position(x)
        forbidden = set(forbidden or ())
        for eid in forbidden:
            g.edge(eid)
        self.avail = set(g.edge_ids) - forbidden
        self.budget = budget
        self.router = _Router(g, self.avail, budget)

        def avail_deg(x):
            return sum(2 if e.is_loop else 1 for e in g.incident(x) if e.id in self.avail)

        host_order = sorted(g.vertices, key=lambda x: (-avail_deg(x), x))
        self.order = sorted(h.vertices, key=lambda p: (-h.degree(p), h.position(p)))
        self.cands: dict[int, list[int]] = {}
        for p in self.order:
            pool = host_order
            if candidates is not None and p in candidates:
                allowed = set(candidates[p])
                pool = [x for x in pool if x in allowed]
            if p in fixed:
                pool = [fixed[p]] if fixed[p] in pool else []
            self.cands[p] = pool
        rank = {p: i for i, p in enumerate(self.order)}
        self.stages: list[list[Edge]] = [[] for _ in self.order]
        for e in h.edges:
            self.stages[max(rank[e.u], rank[e.v])].append(e)
        for stage in self.stages:
            stage.sort(key=lambda e: (-(h.degree(e.u) + h.degree(e.v)), h.position(e.u), e.id))
        self.branch: dict[int, int] = {}
        self.used_hosts: set[int] = set()
        self.routes: dict[int, tuple[int, ...]] = {}

    def _avail_degree(self, x: int) -> int:
        return sum(2 if e.is_loop else 1 for e in self.g.incident(x) if e.id in self.avail)

    def run(self) -> Iterator[Immersion]:
        yield from self._place(0)

    def _place(self, i: int) -> Iterator[Immersion]:
        if i == len(self.order):
            yield Immersion(self.h, self.g, dict(self.branch), dict(self.routes))
            return
        p = self.order[i]
        need = self.h.degree(p)
        for x in self.cands[p]:
            self.budget.tick()
            if x in self.used_hosts or self._avail_degree(x) < need:
                continue
            self.branch[p] = x
            self.used_hosts.add(x)
            yield from self._route(i, 0)
            self.used_hosts.discard(x)
            del self.branch[p]

    def _route(self, i: int, j: int) -> Iterator[Immersion]:
        stage = self.stages[i]
        if j == len(stage):
            yield from self._place(i + 1)
            return
        e = stage[j]
        s, t = self.branch[e.u], self.branch[e.v]
        gen = self.router.cycles(s) if e.is_loop else self.router.paths(s, t)
        for route in gen:
            self.avail.difference_update(route)
            self.routes[e.id] = route
            yield from self._route(i, j + 1)
            del self.routes[e.id]
            self.avail.update(route)


def iter_immersions(
    g: Multigraph,
    h: Multigraph,
    fixed_branch: Mapping[int, int] | None = None,
    forbidden_edges: Iterable[int] | None = None,
    candidates: Mapping[int, Iterable[int]] | None = None,
    budget: Budget | int | None = None,
) -> Iterator[Immersion]:
    """Yield H-immersions in G, one per class of interchangeable parallel copies.

    Pattern vertices are placed in order of decreasing degree; each pattern
    edge is routed as soon as both of its ends are placed, heavier edges first.
    Host candidates are tried by decreasing degree, then id.  Every usage
    pattern of parallel-edge classes is represented at least once.
    """
    search = _ImmersionSearch(g, h, fixed_branch, forbidden_edges, candidates, as_budget(budget))
    return search.run()


def find_immersion(
    g: Multigraph,
    h: Multigraph,
    fixed_branch: Mapping[int, int] | None = None,
    forbidden_edges: Iterable[int] | None = None,
    candidates: Mapping[int, Iterable[int]] | None = None,
    budget: Budget | int | None = None,
) -> Immersion | None:
    """An H-immersion in G avoiding ``forbidden_edges``, or None if none exists.

    Raises CapacityError when the budget runs out before a decision.
    """
    return next(iter_immersions(g, h, fixed_branch, forbidden_edges, candidates, budget), None)


# ----------------------------------------------- half-integral <-> doubled


def lift_half_integral(imm: Immersion, doubled: Multigraph, back: Mapping[int, int]) -> Immersion:
    """Turn a half-integral immersion in G into an immersion in G doubled.

    ``doubled`` and ``back`` come from ``duplicate_edges(G, 2)``.  The k-th
    route through an edge of G (in pattern-edge order) takes the k-th copy.
    """
    copies: dict[int, list[int]] = {}
    for nid in doubled.edge_ids:
        copies.setdefault(back[nid], []).append(nid)
    taken: Counter = Counter()
    routes = {}
    for e in imm.pattern.edges:
        new = []
        for eid in imm.routes[e.id]:
            pool = copies.get(eid, [])
            if taken[eid] >= len(pool):
                raise InputError(f"host edge {eid} used more often than it has copies")
            new.append(pool[taken[eid]])
            taken[eid] += 1
        routes[e.id] = tuple(new)
    return Immersion(imm.pattern, doubled, dict(imm.branch), routes)


def project_to_half_integral(imm: Immersion, original: Multigraph, back: Mapping[int, int]) -> HalfIntegralImmersion:
    """Map an immersion in G doubled back to G by forgetting which copy was used."""
    routes = {k: tuple(back[eid] for eid in r) for k, r in imm.routes.items()}
    return HalfIntegralImmersion(imm.pattern, original, dict(imm.branch), routes)


# -------------------------------------------------------- minors / thorns


@dataclass(frozen=True, eq=False)
class MinorModel:
    pattern: Multigraph
    host: Multigraph
    branch_sets: Mapping[int, frozenset[int]]


@dataclass(frozen=True, eq=False)
class Thorns:
    """Branch sets are sets of host edge ids."""

    pattern: Multigraph
    host: Multigraph
    branch_sets: Mapping[int, frozenset[int]]

    def to_json(self) -> dict:
        return {
            "pattern": to_json(self.pattern),
            "branchSets": {str(k): sorted(self.branch_sets[k]) for k in sorted(self.branch_sets)},
        }

    @classmethod
    def from_json(cls, obj: Mapping, host: Multigraph) -> "Thorns":
        try:
            pattern = from_json(obj["pattern"])
            sets = {int(k): frozenset(int(x) for x in v) for k, v in obj["branchSets"].items()}
        except (KeyError, AttributeError, TypeError, ValueError) as exc:
            raise InputError(f"malformed thorns certificate: {exc}") from None
        return cls(pattern, host, sets)


def _require_simple(h: Multigraph) -> None:
    if not h.is_simple():
        raise InputError("pattern must be a simple graph")


def _vertex_set_connected(g: Multigraph, vs: frozenset[int]) -> bool:
    if not vs:
        return False
    start = next(iter(vs))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for e in g.incident(x):
            y = e.other(x)
            if y in vs and y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(vs)


def verify_minor(model: MinorModel) -> Verdict:
    h, g = model.pattern, model.host
    _require_simple(h)
    for p in h.vertices:
        bs = model.branch_sets.get(p)
        if not bs:
            return Verdict.failed("empty branch set", {"pattern_vertex": p})
        for x in bs:
            if not g.has_vertex(x):
                raise InputError(f"branch set of {p} names unknown host vertex {x}")
        if not _vertex_set_connected(g, frozenset(bs)):
            return Verdict.failed("branch set is not connected", {"pattern_vertex": p})
    owner: dict[int, int] = {}
    for p in h.vertices:
        for x in model.branch_sets[p]:
            if x in owner:
                return Verdict.failed("branch sets intersect", {"pattern_vertices": [owner[x], p], "host_vertex": x})
            owner[x] = p
    for e in h.edges:
        a, b = model.branch_sets[e.u], model.branch_sets[e.v]
        if not any((f.u in a and f.v in b) or (f.u in b and f.v in a) for f in g.edges):
            return Verdict.failed("pattern edge not realised", {"pattern_edge": e.id})
    return Verdict.passed()


def verify_thorns(th: Thorns) -> Verdict:
    h, g = th.pattern, th.host
    _require_simple(h)
    for p in h.vertices:
        bs = th.branch_sets.get(p)
        if not bs:
            return Verdict.failed("branch set has no edge", {"pattern_vertex": p})
        for eid in bs:
            if not g.has_edge(eid):
                raise InputError(f"branch set of {p} names unknown host edge {eid}")
        if not _connected_edge_set(g, bs):
            return Verdict.failed("branch set is not connected", {"pattern_vertex": p})
    owner: dict[int, int] = {}
    for p in h.vertices:
        for eid in th.branch_sets[p]:
            if eid in owner:
                return Verdict.failed("branch sets share an edge", {"pattern_vertices": [owner[eid], p], "host_edge": eid})
            owner[eid] = p
    for e in h.edges:
        a = _route_vertices(g, th.branch_sets[e.u])
        b = _route_vertices(g, th.branch_sets[e.v])
        if not a & b:
            return Verdict.failed("adjacent pattern vertices have vertex-disjoint branch sets", {"pattern_edge": e.id})
    return Verdict.passed()


def _connected_sets_of_size(adj, root, size, allowed, budget) -> Iterator[frozenset[int]]:
    """Connected sets of exactly ``size`` vertices containing root, drawn from allowed.

    Each set is produced once (extension-set enumeration).
    """

    def grow(current, frontier, excluded):
        budget.tick()
        if len(current) == size:
            yield frozenset(current)
            return
        frontier = list(frontier)
        for i, c in enumerate(frontier):
            new_frontier = frontier[i + 1:] + [
                y for y in adj[c] if y in allowed and y not in current and y not in excluded and y not in frontier
            ]
            current.append(c)
            yield from grow(current, new_frontier, excluded | set(frontier[: i + 1]))
            current.pop()

    start_frontier = [y for y in adj[root] if y in allowed and y != root]
    yield from grow([root], start_frontier, {root})


def find_minor(
    g: Multigraph, h: Multigraph, budget: Budget | int | None = None
) -> MinorModel | None:
    """Exact search for an H-minor of G (H simple) by growing connected branch sets.

    Pattern vertices are processed in breadth-first order; branch sets are
    tried smallest first.  Returns None when no model exists.
    """
    _require_simple(h)
    budget = as_budget(budget)
    if h.n == 0:
        return MinorModel(h, g, {})
    adj = {v: sorted(g.neighbors(v), key=g.position) for v in g.vertices}
    order: list[int] = []
    seen: set[int] = set()
    for start in sorted(h.vertices, key=lambda p: (-h.degree(p), h.position(p))):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            p = queue.popleft()
            order.append(p)
            for q in sorted(h.neighbors(p), key=lambda q: (-h.degree(q), h.position(q))):
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
    hnbrs = {p: h.neighbors(p) for p in h.vertices}
    assigned: dict[int, frozenset[int]] = {}
    used: set[int] = set()

    def touches(a: frozenset[int], b: frozenset[int]) -> bool:
        return any(y in b for x in a for y in adj[x])

    def feasible(i: int) -> bool:
        free = [v for v in g.vertices if v not in used]
        if len(free) < len(order) - i:
            return False
        comp: dict[int, int] = {}
        for s in free:
            if s in comp:
                continue
            comp[s] = s
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in used and y not in comp:
                        comp[y] = s
                        queue.append(y)
        for q in order[i:]:
            placed = [assigned[r] for r in hnbrs[q] if r in assigned]
            if not placed:
                continue
            ok = False
            for c in set(comp.values()):
                if all(any(comp.get(y) == c for x in bs for y in adj[x]) for bs in placed):
                    ok = True
                    break
            if not ok:
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        if not feasible(i):
            return False
        p = order[i]
        placed_nbrs = [assigned[q] for q in hnbrs[p] if q in assigned]
        free = [v for v in g.vertices if v not in used]
        rank = {v: k for k, v in enumerate(free)}
        for size in range(1, len(free) - (len(order) - i - 1) + 1):
            for root in free:
                allowed = {v for v in free if rank[v] >= rank[root]}
                for bs in _connected_sets_of_size(adj, root, size, allowed, budget):
                    if not all(touches(bs, other) for other in placed_nbrs):
                        continue
                    assigned[p] = bs
                    used.update(bs)
                    if rec(i + 1):
                        return True
                    used.difference_update(bs)
                    del assigned[p]
        return False

    if rec(0):
        return MinorModel(h, g, {p: assigned[p] for p in h.vertices})
    return None


def find_thorns(g: Multigraph, h: Multigraph, budget: Budget | int | None = None) -> Thorns | None:
    """H-thorns of G via an H-minor of the line graph L(G), pulled back edge-wise."""
    _require_simple(h)
    lg, emap = line_graph(g)
    model = find_minor(lg, h, budget)
    if model is None:
        return None
    inverse = {lv: eid for eid, lv in emap.items()}
    return Thorns(h, g, {p: frozenset(inverse[x] for x in bs) for p, bs in model.branch_sets.items()})


# ------------------------------------------------------ S+, realize, shells


@dataclass(frozen=True, eq=False)
class SPlus:
    """S with one pendant leaf per incidence of G that S lacks.

    ``leaf_origin`` maps each leaf vertex to the G-edge it stands for.
    """

    graph: Multigraph
    core: frozenset[int]
    leaf_origin: Mapping[int, int] = field(default_factory=dict)

    @property
    def leaves(self) -> frozenset[int]:
        return frozenset(self.leaf_origin)


def s_plus(g: Multigraph, vertices: Iterable[int], edges: Iterable[int]) -> SPlus:
    """Build S_G^+ for the subgraph S = (vertices, edges) of g."""
    vs = set(vertices)
    es = set(edges)
    for v in vs:
        g.position(v)
    for eid in es:
        e = g.edge(eid)
        if e.u not in vs or e.v not in vs:
            raise InputError(f"edge {eid} has an end outside the subgraph's vertex set")
    core_vertices = [v for v in g.vertices if v in vs]
    core_edges = [e for e in g.edges if e.id in es]
    next_v = g.max_vertex() + 1
    next_e = g.max_edge_id() + 1
    extra_v, extra_e, origin = [], [], {}
    for e in g.edges:
        if e.id in es:
            continue
        for end in (e.u, e.v):
            if end in vs:
                extra_v.append(next_v)
                extra_e.append(Edge(next_e, end, next_v))
                origin[next_v] = e.id
                next_v += 1
                next_e += 1
    graph = Multigraph(core_vertices + extra_v, core_edges + extra_e)
    return SPlus(graph, frozenset(vs), origin)


def realizes(splus: SPlus, rplus: SPlus, budget: Budget | int | None = None) -> bool:
    """Whether S+ contains an R+-immersion sending leaves to leaves and core to core."""
    if len(rplus.leaves) > len(splus.leaves) or len(rplus.core) > len(splus.core):
        return False
    cands = {}
    for v in rplus.graph.vertices:
        cands[v] = splus.leaves if v in rplus.leaf_origin else splus.core
    return find_immersion(splus.graph, rplus.graph, candidates=cands, budget=budget) is not None


def enumerate_shells(h: Multigraph, max_vertices: int = 10) -> list[list[tuple[frozenset[int], frozenset[int]]]]:
    """All partitions of V(h) into classes inducing connected subgraphs.

    Each shell is a list of (vertex set, induced edge ids); shells are listed
    in restricted-growth-string order over the vertex order of h.
    """
    if h.n > max_vertices:
        raise CapacityError(f"shell enumeration limited to {max_vertices} vertices, got {h.n}")
    vs = list(h.vertices)
    out = []

    def rec(i: int, labels: list[int], k: int):
        if i == len(vs):
            classes = [frozenset(v for v, lab in zip(vs, labels) if lab == c) for c in range(k)]
            if all(_vertex_set_connected(h, c) for c in classes):
                out.append([
                    (c, frozenset(e.id for e in induced_subgraph(h, c).edges)) for c in classes
                ])
            return
        for lab in range(k + 1):
            labels.append(lab)
            rec(i + 1, labels, max(k, lab + 1))
            labels.pop()

    rec(0, [], 0)
    return out
