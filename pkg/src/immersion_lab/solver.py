"""Exact desk-scale packing and covering of immersions, plus the experiment harness.

Packing works on *usage vectors*: how many edges of each parallel class an
immersion uses.  Parallel copies are interchangeable, so a collection of
immersions can be made pairwise edge-disjoint iff its usage vectors sum to
at most the class sizes.  Covering is branch-and-bound on "which edge of the
current immersion's image is deleted first".
"""

from __future__ import annotations

import csv
import io
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from . import generators as gen
from .errors import Budget, CapacityError, InputError, as_budget, default_capacity
from .immersion import (
    Immersion,
    find_immersion,
    iter_immersions,
    project_to_half_integral,
)
from .multigraph import Multigraph, duplicate_edges


@dataclass(frozen=True)
class PackingResult:
    count: int
    witnesses: tuple[Immersion, ...]
    exact: bool

    def to_json(self) -> dict:
        return {"count": self.count, "exact": self.exact, "witnesses": [w.to_json() for w in self.witnesses]}


@dataclass(frozen=True)
class CoverResult:
    edges: tuple[int, ...]
    exact: bool

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {"edges": list(self.edges), "size": self.size, "exact": self.exact}


def _class_index(g: Multigraph) -> tuple[dict[int, int], list[list[int]]]:
    """Edge id -> parallel class index, and the members of each class in host order."""
    index: dict[frozenset, int] = {}
    members: list[list[int]] = []
    cls: dict[int, int] = {}
    for e in g.edges:
        k = index.setdefault(e.ends, len(members))
        if k == len(members):
            members.append([])
        members[k].append(e.id)
        cls[e.id] = k
    return cls, members


def _remap(imms: Sequence[Immersion], cls: dict[int, int], members: list[list[int]]) -> list[Immersion]:
    """Give the immersions distinct concrete copies inside each parallel class."""
    taken = Counter()
    out = []
    for imm in imms:
        routes = {}
        for pe in imm.pattern.edge_ids:
            new = []
            for eid in imm.routes[pe]:
                k = cls[eid]
                new.append(members[k][taken[k]])
                taken[k] += 1
            routes[pe] = tuple(new)
        out.append(Immersion(imm.pattern, imm.host, dict(imm.branch), routes))
    return out


def _greedy_packing(g: Multigraph, h: Multigraph, k_max: int, per_call: int) -> list[Immersion]:
    out: list[Immersion] = []
    used: set[int] = set()
    while len(out) < k_max:
        try:
            imm = find_immersion(g, h, forbidden_edges=used, budget=Budget(per_call))
        except CapacityError:
            break
        if imm is None or (not imm.routes and out):
            break
        out.append(imm)
        used |= imm.image()
    return out


def max_packing(
    g: Multigraph, h: Multigraph, k_max: int = 64, budget: Budget | int | None = None
) -> PackingResult:
    """Largest number (capped at k_max) of pairwise edge-disjoint H-immersions in G."""
    if k_max < 0:
        raise InputError("k_max must be nonnegative")
    budget = as_budget(budget)
    if h.m == 0:
        # edgeless patterns never use edges: one copy is as good as unboundedly many
        imm = find_immersion(g, h, budget=budget)
        n = 0 if imm is None else k_max
        return PackingResult(n, tuple([imm] * n) if imm else (), True)
    cls, members = _class_index(g)
    caps = tuple(len(m) for m in members)
    try:
        reps: dict[tuple, Immersion] = {}
        for imm in iter_immersions(g, h, budget=budget):
            vec = [0] * len(caps)
            for eid in imm.image():
                vec[cls[eid]] += 1
            reps.setdefault(tuple(vec), imm)
        vectors = _minimal(list(reps))
        chosen = _pack_vectors(vectors, caps, k_max, budget)
    except CapacityError:
        witnesses = _greedy_packing(g, h, k_max, max(1000, budget.limit // 10))
        return PackingResult(len(witnesses), tuple(witnesses), False)
    picked = [reps[v] for v in chosen]
    return PackingResult(len(picked), tuple(_remap(picked, cls, members)), True)


def _minimal(vectors: list[tuple]) -> list[tuple]:
    """Drop vectors that dominate another one; keeps a deterministic order."""
    vectors = sorted(set(vectors), key=lambda v: (sum(v), v))
    keep: list[tuple] = []
    for v in vectors:
        if not any(all(a <= b for a, b in zip(w, v)) for w in keep):
            keep.append(v)
    return keep


def _pack_vectors(vectors: list[tuple], caps: tuple, k_max: int, budget: Budget) -> list[tuple]:
    """Max multiset of vectors with coordinate sum <= caps (capped at k_max)."""
    memo: dict[tuple, tuple] = {}
    n = len(vectors)

    def best(i: int, cap: tuple, need: int) -> tuple:
        # returns the best selection from vectors[i:], as a tuple of indices
        if need <= 0 or i == n:
            return ()
        key = (i, cap, need)
        if key in memo:
            return memo[key]
        budget.tick()
        v = vectors[i]
        limit = min((c // x for c, x in zip(cap, v) if x), default=need)
        limit = min(limit, need)
        top: tuple = ()
        for t in range(limit, -1, -1):
            newcap = tuple(c - t * x for c, x in zip(cap, v))
            rest = best(i + 1, newcap, need - t)
            cand = (i,) * t + rest
            if len(cand) > len(top):
                top = cand
            if len(top) == need:
                break
        memo[key] = top
        return top

    return [vectors[i] for i in best(0, caps, k_max)]


def _greedy_cover(g: Multigraph, h: Multigraph, budget: Budget) -> list[int]:
    z: list[int] = []
    while True:
        imm = find_immersion(g, h, forbidden_edges=z, budget=budget)
        if imm is None:
            return sorted(z)
        z.extend(sorted(imm.image()))


def min_cover(g: Multigraph, h: Multigraph, budget: Budget | int | None = None) -> CoverResult:
    """Smallest edge set Z such that G - Z has no H-immersion; ties go to the
    lexicographically least sorted Z."""
    budget = as_budget(budget)
    if h.m == 0:
        if find_immersion(g, h, budget=budget) is None:
            return CoverResult((), True)
        raise InputError("an edgeless pattern cannot be destroyed by deleting edges")
    try:
        best = _greedy_cover(g, h, budget)
    except CapacityError:
        return CoverResult(tuple(sorted(g.edge_ids)), False)

    def lower_bound(z: list[int]) -> int:
        used = set(z)
        count = 0
        while True:
            imm = find_immersion(g, h, forbidden_edges=used, budget=budget)
            if imm is None:
                return count
            count += 1
            used |= imm.image()

    def rec(z: list[int], protected: set[int]) -> None:
        nonlocal best
        imm = find_immersion(g, h, forbidden_edges=z, budget=budget)
        if imm is None:
            cand = sorted(z)
            if len(cand) < len(best) or (len(cand) == len(best) and cand < best):
                best = cand
            return
        if len(z) + 1 > len(best):
            return
        if len(z) + lower_bound(z) > len(best):
            return
        image = [eid for eid in sorted(imm.image()) if eid not in protected]
        for i, eid in enumerate(image):
            rec(z + [eid], protected | set(image[:i]))

    try:
        rec([], set())
    except CapacityError:
        return CoverResult(tuple(best), False)
    return CoverResult(tuple(best), True)


def half_integral_packing(
    g: Multigraph, h: Multigraph, k_max: int = 64, budget: Budget | int | None = None
) -> PackingResult:
    """Half-integral packing via packing in G with every edge doubled."""
    if any(e.is_loop for e in h.edges):
        raise InputError("half-integral packing is not supported for patterns with loops")
    doubled, back = duplicate_edges(g, 2)
    res = max_packing(doubled, h, k_max, budget)
    mapped = tuple(project_to_half_integral(w, g, back) for w in res.witnesses)
    return PackingResult(res.count, mapped, res.exact)


def joint_multiplicity_ok(witnesses: Sequence[Immersion], limit: int = 2) -> bool:
    """Every host edge is used at most ``limit`` times across all routes of all witnesses."""
    total = Counter()
    for w in witnesses:
        for r in w.routes.values():
            total.update(r)
    return all(c <= limit for c in total.values())


# ----------------------------------------------------------- tree linkage


def tree_linkage(
    g: Multigraph,
    x: Iterable[int],
    parts: Sequence[Iterable[int]],
    budget: Budget | int | None = None,
) -> list[frozenset[int]] | None:
    """Edge-disjoint connected subgraphs T_i with E(T_i) meeting X exactly in parts[i].

    Each part is grown by attaching its edge components one path at a time;
    paths avoid X, edges of earlier trees, and have interiors off the part.
    """
    budget = as_budget(budget)
    xs = frozenset(x)
    ps = [frozenset(p) for p in parts]
    for eid in xs:
        g.edge(eid)
    if any(not p for p in ps):
        raise InputError("parts must be nonempty")
    if sum(len(p) for p in ps) != len(xs) or frozenset().union(*ps) != xs:
        raise InputError("parts must partition X")
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for e in g.edges:
        if e.id in xs or e.is_loop:
            continue
        adj[e.u].append((e.v, e.id))
        adj[e.v].append((e.u, e.id))

    def part_components(p: frozenset) -> list[frozenset[int]]:
        es = [g.edge(i) for i in sorted(p, key=lambda i: g.edge_ids.index(i))]
        parent: dict[int, int] = {}

        def find(a):
            while parent.setdefault(a, a) != a:
                a = parent[a]
            return a

        for e in es:
            parent[find(e.u)] = find(e.v)
        groups: dict[int, set[int]] = {}
        for e in es:
            for v in (e.u, e.v):
                groups.setdefault(find(v), set()).add(v)
        return sorted((frozenset(s) for s in groups.values()), key=lambda s: min(g.position(v) for v in s))

    used: set[int] = set()
    trees: list[set[int]] = [set(p) for p in ps]

    def paths(src: frozenset, targets: frozenset) -> Iterator[tuple[list[int], int]]:
        blocked = src | targets
        for length in range(1, g.n):
            for s in sorted(src, key=g.position):
                yield from dfs(s, length, [], {s}, blocked, targets)

    def dfs(x0, r, acc, visited, blocked, targets):
        budget.tick()
        seen_nb = set()
        for y, eid in adj[x0]:
            if eid in used or y in seen_nb:
                continue
            seen_nb.add(y)
            if r == 1:
                if y in targets:
                    yield acc + [eid], y
                continue
            if y in blocked or y in visited:
                continue
            visited.add(y)
            yield from dfs(y, r - 1, acc + [eid], visited, blocked, targets)
            visited.discard(y)

    def grow(i: int, reached: frozenset, pending: list[frozenset]) -> bool:
        if not pending:
            return solve(i + 1)
        targets = frozenset().union(*pending)
        for path, hit in paths(reached, targets):
            comp = next(c for c in pending if hit in c)
            ends = {g.edge(eid).u for eid in path} | {g.edge(eid).v for eid in path}
            used.update(path)
            trees[i].update(path)
            if grow(i, reached | comp | frozenset(ends), [c for c in pending if c is not comp]):
                return True
            used.difference_update(path)
            trees[i].difference_update(path)
        return False

    def solve(i: int) -> bool:
        if i == len(ps):
            return True
        comps = part_components(ps[i])
        return grow(i, comps[0], comps[1:])

    if solve(0):
        return [frozenset(t) for t in trees]
    return None


def verify_linkage(g: Multigraph, x: Iterable[int], parts: Sequence[Iterable[int]], trees: Sequence[Iterable[int]]) -> bool:
    xs = frozenset(x)
    if len(trees) != len(parts):
        return False
    seen: set[int] = set()
    for p, t in zip(parts, trees):
        t = frozenset(t)
        if t & seen or (t & xs) != frozenset(p) or not t:
            return False
        seen |= t
        verts: dict[int, set[int]] = {}
        for eid in t:
            e = g.edge(eid)
            verts.setdefault(e.u, set()).add(e.v)
            verts.setdefault(e.v, set()).add(e.u)
        start = next(iter(verts))
        stack, reach = [start], {start}
        while stack:
            a = stack.pop()
            for b in verts[a]:
                if b not in reach:
                    reach.add(b)
                    stack.append(b)
        if len(reach) != len(verts):
            return False
    return True


# ---------------------------------------------------------------- harness


FAMILIES: dict[str, Callable[[int], Multigraph]] = {
    "doubled-cycle": gen.doubled_cycle,
    "doubled-complete": gen.doubled_complete,
    "cycle": gen.cycle,
    "complete": gen.complete,
    "path": gen.path,
    "star": gen.star,
    "theta": gen.theta_graph,
    "wall": lambda k: gen.paper_wall_2r_r(k),
    "grid": lambda k: gen.grid(k, k),
}

CSV_COLUMNS = ["graph_id", "n_vertices", "n_edges", "pattern", "nu", "nu_exact", "tau", "tau_exact", "runtime_ms"]


@dataclass(frozen=True)
class ExperimentRow:
    graph_id: str
    n_vertices: int
    n_edges: int
    pattern: str
    nu: int
    nu_exact: bool
    tau: int
    tau_exact: bool
    runtime_ms: float

    def as_list(self, timing: bool = True) -> list:
        return [
            self.graph_id, self.n_vertices, self.n_edges, self.pattern, self.nu,
            str(self.nu_exact).lower(), self.tau, str(self.tau_exact).lower(),
            f"{self.runtime_ms:.1f}" if timing else "",
        ]


def family_instances(family: str, sizes: Iterable[int]) -> list[tuple[str, Multigraph]]:
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    return [(f"{family}-{k}", FAMILIES[family](k)) for k in sizes]


def ep_experiment(
    instances: Iterable[tuple[str, Multigraph]],
    h: Multigraph,
    pattern_name: str = "H",
    k_max: int = 64,
    capacity: int | None = None,
) -> list[ExperimentRow]:
    """nu (max packing) and tau (min cover) per instance; asserts tau >= nu."""
    capacity = default_capacity() if capacity is None else capacity
    rows = []
    for gid, g in instances:
        t0 = time.perf_counter()
        pack = max_packing(g, h, k_max, Budget(capacity))
        cover = min_cover(g, h, Budget(capacity))
        ms = (time.perf_counter() - t0) * 1000.0
        if cover.size < pack.count:
            raise AssertionError(f"{gid}: cover of size {cover.size} below packing of size {pack.count}")
        rows.append(ExperimentRow(gid, g.n, g.m, pattern_name, pack.count, pack.exact, cover.size, cover.exact, ms))
    return rows


def rows_to_csv(rows: Iterable[ExperimentRow], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.as_list(timing))
    return buf.getvalue()
