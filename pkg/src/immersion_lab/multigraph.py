"""Finite multigraphs with loops and parallel edges.

Vertices and edges are identified by nonnegative integers.  Parallel edges
differ only by id, which is what lets routes and covers name individual
copies.  Graph values are immutable; every transform returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import InputError


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def ends(self) -> frozenset[int]:
        return frozenset((self.u, self.v))

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise InputError(f"vertex {x} is not an end of edge {self.id}")


@dataclass(frozen=True)
class EdgeCut:
    """Ordered bipartition [A, B] of the vertex set; either side may be empty."""

    a: frozenset
    b: frozenset

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int]) -> "EdgeCut":
        return cls(frozenset(a), frozenset(b))

    def reversed(self) -> "EdgeCut":
        return EdgeCut(self.b, self.a)

    def validate(self, g: "Multigraph") -> None:
        if self.a & self.b:
            raise InputError("edge-cut sides intersect")
        if (self.a | self.b) != frozenset(g.vertices):
            raise InputError("edge-cut sides do not cover the vertex set")

    def __repr__(self) -> str:
        return f"[{sorted(self.a)}, {sorted(self.b)}]"


def _coerce_edge(item) -> Edge:
    if isinstance(item, Edge):
        return item
    eid, u, v = item
    return Edge(int(eid), int(u), int(v))


class Multigraph:
    """Immutable multigraph; iteration order is insertion order."""

    __slots__ = ("_vertices", "_edges", "_by_id", "_incident", "_vpos", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable = ()):
        vs: list[int] = []
        seen: set[int] = set()
        for v in vertices:
            v = int(v)
            if v in seen:
                raise InputError(f"duplicate vertex id {v}")
            seen.add(v)
            vs.append(v)
        es = tuple(_coerce_edge(e) for e in edges)
        by_id: dict[int, Edge] = {}
        incident: dict[int, list[Edge]] = {v: [] for v in vs}
        for e in es:
            if e.id in by_id:
                raise InputError(f"duplicate edge id {e.id}")
            if e.u not in incident or e.v not in incident:
                raise InputError(f"edge {e.id} has an end outside the vertex set")
            by_id[e.id] = e
            incident[e.u].append(e)
            if not e.is_loop:
                incident[e.v].append(e)
        self._vertices = tuple(vs)
        self._edges = es
        self._by_id = by_id
        self._incident = {v: tuple(lst) for v, lst in incident.items()}
        self._vpos = {v: i for i, v in enumerate(vs)}
        self._hash = None

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None) -> "Multigraph":
        """Build a graph whose edge ids are 0, 1, ... in the order given."""
        pairs = [(int(u), int(v)) for u, v in pairs]
        if vertices is None:
            vs: list[int] = []
            seen: set[int] = set()
            for u, v in pairs:
                for x in (u, v):
                    if x not in seen:
                        seen.add(x)
                        vs.append(x)
            vertices = sorted(vs)
        return cls(vertices, [Edge(i, u, v) for i, (u, v) in enumerate(pairs)])

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self._edges)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._vpos

    def has_edge(self, eid: int) -> bool:
        return eid in self._by_id

    def edge(self, eid: int) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid}") from None

    def position(self, v: int) -> int:
        try:
            return self._vpos[v]
        except KeyError:
            raise InputError(f"unknown vertex id {v}") from None

    def incident(self, v: int) -> tuple[Edge, ...]:
        """Edges incident with v; a loop is listed once."""
        try:
            return self._incident[v]
        except KeyError:
            raise InputError(f"unknown vertex id {v}") from None

    def degree(self, v: int) -> int:
        return sum(2 if e.is_loop else 1 for e in self.incident(v))

    def neighbors(self, v: int) -> set[int]:
        return {e.other(v) for e in self.incident(v) if not e.is_loop}

    def max_vertex(self) -> int:
        return max(self._vertices, default=-1)

    def max_edge_id(self) -> int:
        return max(self._by_id, default=-1)

    def is_simple(self) -> bool:
        seen = set()
        for e in self._edges:
            if e.is_loop or e.ends in seen:
                return False
            seen.add(e.ends)
        return True

    def canonical(self) -> "Multigraph":
        return Multigraph(sorted(self._vertices), sorted(self._edges, key=lambda e: e.id))

    def _key(self):
        return (self._vertices, self._edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Multigraph) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------- basic ops


def degree(g: Multigraph, v: int) -> int:
    """Number of incidences at v; a loop counts twice."""
    return g.degree(v)


def crossing_edges(g: Multigraph, cut: EdgeCut) -> list[Edge]:
    cut.validate(g)
    a = cut.a
    return [e for e in g.edges if (e.u in a) != (e.v in a)]


def cut_order(g: Multigraph, cut: EdgeCut) -> int:
    return len(crossing_edges(g, cut))


def delete_edges(g: Multigraph, ids: Iterable[int]) -> Multigraph:
    drop = set(ids)
    for eid in drop:
        g.edge(eid)
    return Multigraph(g.vertices, [e for e in g.edges if e.id not in drop])


def delete_vertices(g: Multigraph, vs: Iterable[int]) -> Multigraph:
    drop = set(vs)
    for v in drop:
        g.position(v)
    return Multigraph(
        [v for v in g.vertices if v not in drop],
        [e for e in g.edges if e.u not in drop and e.v not in drop],
    )


def induced_subgraph(g: Multigraph, vs: Iterable[int]) -> Multigraph:
    keep = set(vs)
    for v in keep:
        g.position(v)
    return Multigraph(
        [v for v in g.vertices if v in keep],
        [e for e in g.edges if e.u in keep and e.v in keep],
    )


def edge_subgraph(g: Multigraph, ids: Iterable[int]) -> Multigraph:
    """Subgraph formed by the given edges and their ends."""
    ids = set(ids)
    for eid in ids:
        g.edge(eid)
    es = [e for e in g.edges if e.id in ids]
    ends = {x for e in es for x in (e.u, e.v)}
    return Multigraph([v for v in g.vertices if v in ends], es)


def components(g: Multigraph) -> list[list[int]]:
    """Vertex sets of the components, in order of their first vertex."""
    seen: set[int] = set()
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for e in g.incident(x):
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(comp)
    return out


def is_connected(g: Multigraph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def parallel_classes(g: Multigraph) -> dict[frozenset, list[int]]:
    """Edge ids grouped by their set of ends (loops at v keyed by {v})."""
    classes: dict[frozenset, list[int]] = {}
    for e in g.edges:
        classes.setdefault(e.ends, []).append(e.id)
    return classes


# ---------------------------------------------------------- connectivity


def local_edge_connectivity(g: Multigraph, s: int, t: int, cutoff: int | None = None) -> int:
    """Maximum number of edge-disjoint s-t paths (unit-capacity augmenting paths).

    Stops early once ``cutoff`` paths are found.
    """
    g.position(s)
    g.position(t)
    if s == t:
        raise InputError("source and sink must differ")
    # flow[eid] is +1 for u->v, -1 for v->u, 0 unused
    flow = {e.id: 0 for e in g.edges if not e.is_loop}
    value = 0
    while cutoff is None or value < cutoff:
        pred: dict[int, tuple[int, Edge]] = {s: (s, None)}
        queue = deque([s])
        while queue and t not in pred:
            x = queue.popleft()
            for e in g.incident(x):
                if e.is_loop:
                    continue
                y = e.other(x)
                if y in pred:
                    continue
                f = flow[e.id]
                forward = x == e.u
                if (forward and f < 1) or (not forward and f > -1):
                    pred[y] = (x, e)
                    queue.append(y)
        if t not in pred:
            break
        y = t
        while y != s:
            x, e = pred[y]
            flow[e.id] += 1 if x == e.u else -1
            y = x
        value += 1
    return value


def is_k_edge_connected(g: Multigraph, k: int) -> bool:
    """At least two vertices and no fewer than k edges separate the graph."""
    if k < 1:
        raise InputError("k must be positive")
    if g.n < 2:
        return False
    root = g.vertices[0]
    return all(local_edge_connectivity(g, root, v, cutoff=k) >= k for v in g.vertices[1:])


def bridges(g: Multigraph) -> list[int]:
    """Ids of the bridges (cut edges), in edge order.

    Iterative lowpoint DFS keyed on edge ids, so parallel edges are never
    mistaken for bridges.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    found: set[int] = set()
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(g.incident(root)))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for e in it:
                if e.is_loop or e.id == via:
                    continue
                y = e.other(x)
                if y in disc:
                    low[x] = min(low[x], disc[y])
                else:
                    disc[y] = low[y] = counter
                    counter += 1
                    stack.append((y, e.id, iter(g.incident(y))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[x])
                    if low[x] > disc[parent]:
                        found.add(via)
    return [e.id for e in g.edges if e.id in found]


# ------------------------------------------------------------- transforms


def line_graph(g: Multigraph) -> tuple[Multigraph, dict[int, int]]:
    """L(g): one vertex per edge of g (same id); distinct edges sharing an end are adjacent.

    The result is simple.  Returns the graph and the edge-id -> vertex-id map
    (the identity on ids).
    """
    pairs = []
    for (i, e), (j, f) in combinations(enumerate(g.edges), 2):
        if e.ends & f.ends:
            pairs.append((e.id, f.id))
    lg = Multigraph([e.id for e in g.edges], [Edge(k, a, b) for k, (a, b) in enumerate(pairs)])
    return lg, {e.id: e.id for e in g.edges}


def clique_of(g: Multigraph, v: int) -> frozenset[int]:
    """cl(v): the edges incident with v, as line-graph vertex ids."""
    return frozenset(e.id for e in g.incident(v))


def duplicate_edges(g: Multigraph, k: int) -> tuple[Multigraph, dict[int, int]]:
    """Replace each edge by k parallel copies.

    Copy c of edge e gets id ``e.id * k + c``.  Returns the graph and the
    copy-id -> original-id map.
    """
    if k < 1:
        raise InputError("k must be positive")
    edges = []
    back = {}
    for e in g.edges:
        for c in range(k):
            nid = e.id * k + c
            edges.append(Edge(nid, e.u, e.v))
            back[nid] = e.id
    return Multigraph(g.vertices, edges), back


def subdivide_all(g: Multigraph) -> Multigraph:
    """Subdivide every edge once.

    The i-th edge (in edge order) gets the fresh vertex ``max_vertex + 1 + i``
    and is replaced by edges ``2i`` (u to the new vertex) and ``2i + 1``
    (new vertex to v).  A loop becomes a 2-cycle.
    """
    base = g.max_vertex() + 1
    vertices = list(g.vertices)
    edges = []
    for i, e in enumerate(g.edges):
        x = base + i
        vertices.append(x)
        edges.append(Edge(2 * i, e.u, x))
        edges.append(Edge(2 * i + 1, x, e.v))
    return Multigraph(vertices, edges)


def immersion_expansion(g: Multigraph) -> tuple[Multigraph, dict[int, int]]:
    """L(g') plus an apex u_v on cl(v) for each original vertex v, where g' subdivides g.

    Line-graph vertices keep the ids of the edges of ``subdivide_all(g)``
    (0 .. 2m-1); apex vertices follow.  Returns the graph and v -> u_v.
    """
    sub = subdivide_all(g)
    lg, _ = line_graph(sub)
    base = max(lg.max_vertex(), -1) + 1
    vertices = list(lg.vertices)
    edges = list(lg.edges)
    next_id = len(edges)
    apex = {}
    for i, v in enumerate(g.vertices):
        u = base + i
        apex[v] = u
        vertices.append(u)
        for eid in sorted(clique_of(sub, v)):
            edges.append(Edge(next_id, u, eid))
            next_id += 1
    return Multigraph(vertices, edges), apex


# ------------------------------------------------------------ text format


def parse(text: str) -> Multigraph:
    """Read the line format: ``v <id>``, ``e <id> <u> <v>``, ``#`` comments.

    Edge ends must be declared vertices.
    """
    vertices: list[int] = []
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 2:
                vertices.append(_nonneg(parts[1]))
            elif parts[0] == "e" and len(parts) == 4:
                edges.append(Edge(_nonneg(parts[1]), _nonneg(parts[2]), _nonneg(parts[3])))
            else:
                raise InputError(f"unrecognised record {line!r}")
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    return Multigraph(vertices, edges)


def _nonneg(tok: str) -> int:
    if not tok.isdigit():
        raise InputError(f"ids must be nonnegative decimal integers, got {tok!r}")
    return int(tok)


def serialize(g: Multigraph) -> str:
    """Canonical text form: vertices then edges, each ascending by id."""
    lines = [f"v {v}" for v in sorted(g.vertices)]
    lines += [f"e {e.id} {e.u} {e.v}" for e in sorted(g.edges, key=lambda e: e.id)]
    return "\n".join(lines) + ("\n" if lines else "")


def to_json(g: Multigraph) -> dict:
    c = g.canonical()
    return {"vertices": list(c.vertices), "edges": [[e.id, e.u, e.v] for e in c.edges]}


def from_json(obj: Mapping) -> Multigraph:
    try:
        return Multigraph(obj["vertices"], [tuple(x) for x in obj["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph object: {exc}") from None


def iter_vertex_subsets(g: Multigraph) -> Iterator[frozenset]:
    """All 2^n vertex subsets, by increasing bitmask over vertex positions."""
    vs = g.vertices
    for mask in range(1 << len(vs)):
        yield frozenset(v for i, v in enumerate(vs) if mask >> i & 1)
