"""Tree decompositions along small edge-cuts.

* ``bridge_block_tree``: bags are the 2-edge-connected blocks (or single
  vertices); every tree edge is one bridge.
* ``decompose_nearly_4ec``: for a nearly 4-edge-connected graph, bags are
  single vertices or 4-edge-connected, and each tree edge carries at most
  three parallel host edges with the same ends.

``validate_decomposition`` re-checks either kind from scratch with its own
Stoer-Wagner minimum cut and shares no code with the builders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .errors import InputError
from .multigraph import Edge, Multigraph, bridges, components, delete_edges, induced_subgraph, is_connected
from .verdict import Verdict

TWO_EC = "two-ec"
NEARLY_FOUR_EC = "nearly-four-ec"


@dataclass(frozen=True, eq=False)
class TreeDecomposition:
    """``tree`` is a Multigraph on bag ids; ``links`` maps a tree edge id to the
    host edges it stands for."""

    tree: Multigraph
    bags: Mapping[int, frozenset[int]]
    kind: str
    links: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def bag_of(self) -> dict[int, int]:
        return {v: b for b, vs in self.bags.items() for v in vs}

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "bags": {str(b): sorted(self.bags[b]) for b in sorted(self.bags)},
            "treeEdges": [[e.u, e.v] for e in self.tree.edges],
            "links": [list(self.links.get(e.id, ())) for e in self.tree.edges],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "TreeDecomposition":
        try:
            kind = str(obj["kind"])
            bags = {int(k): frozenset(int(x) for x in v) for k, v in obj["bags"].items()}
            pairs = [(int(a), int(b)) for a, b in obj["treeEdges"]]
            links_raw = obj.get("links", [[] for _ in pairs])
            links = {i: tuple(int(x) for x in links_raw[i]) for i in range(len(pairs))}
        except (KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
            raise InputError(f"malformed decomposition: {exc}") from None
        if kind not in (TWO_EC, NEARLY_FOUR_EC):
            raise InputError(f"unknown decomposition kind {kind!r}")
        tree = Multigraph(sorted(bags), [Edge(i, a, b) for i, (a, b) in enumerate(pairs)])
        return cls(tree, bags, kind, links)


def bridge_block_tree(g: Multigraph) -> TreeDecomposition:
    if not is_connected(g):
        raise InputError("bridge block tree needs a connected graph")
    bs = bridges(g)
    blocks = components(delete_edges(g, bs))
    bag = {v: i for i, comp in enumerate(blocks) for v in comp}
    tree = Multigraph(range(len(blocks)), [Edge(eid, bag[g.edge(eid).u], bag[g.edge(eid).v]) for eid in bs])
    return TreeDecomposition(tree, {i: frozenset(c) for i, c in enumerate(blocks)}, TWO_EC, {eid: (eid,) for eid in bs})


def _exact_crossing_exists(g: Multigraph, F: tuple[Edge, ...]) -> bool:
    """Whether some edge-cut has crossing set exactly F.

    Contract the components of G - F; such a cut exists iff no edge of F
    lies inside one component and the F-edges between components form a
    bipartite graph.
    """
    rest = delete_edges(g, [e.id for e in F])
    comp = {v: i for i, c in enumerate(components(rest)) for v in c}
    adj: dict[int, list[int]] = {}
    for e in F:
        a, b = comp[e.u], comp[e.v]
        if a == b:
            return False
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    colour: dict[int, int] = {}
    for s in adj:
        if s in colour:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
                elif colour[y] == colour[x]:
                    return False
    return True


def small_bad_cut(g: Multigraph) -> tuple[int, ...] | None:
    """Crossing set of a cut of order < 4 whose edges are not all parallel with
    the same ends, or None.  Loops never cross and are skipped."""
    cand = [e for e in g.edges if not e.is_loop]
    for k in (2, 3):
        for F in combinations(cand, k):
            if len({e.ends for e in F}) == 1:
                continue
            if _exact_crossing_exists(g, F):
                return tuple(e.id for e in F)
    return None


def is_nearly_4ec(g: Multigraph) -> bool:
    """Connected, and every cut of order < 4 consists of parallel edges with the same ends."""
    return is_connected(g) and small_bad_cut(g) is None


def decompose_nearly_4ec(g: Multigraph) -> TreeDecomposition:
    """Split along the smallest parallel class that disconnects the graph, recurse
    on both sides, and join the bags of the class ends."""
    if not is_nearly_4ec(g):
        raise InputError("graph is not nearly 4-edge-connected")
    bags: dict[int, frozenset[int]] = {}
    tree_edges: list[Edge] = []
    links: dict[int, tuple[int, ...]] = {}

    def rec(sub: Multigraph) -> dict[int, int]:
        classes: dict[tuple[int, int], list[int]] = {}
        for e in sub.edges:
            if not e.is_loop:
                classes.setdefault((min(e.u, e.v), max(e.u, e.v)), []).append(e.id)
        ordered = sorted((ids for ids in classes.values() if len(ids) <= 3),
                         key=lambda ids: (len(ids), min(sub.edge(ids[0]).ends), max(sub.edge(ids[0]).ends)))
        for ids in ordered:
            rest = delete_edges(sub, ids)
            comps = components(rest)
            if len(comps) == 1:
                continue
            e0 = sub.edge(ids[0])
            u, v = min(e0.u, e0.v), max(e0.u, e0.v)
            side_a = next(c for c in comps if u in c)
            side_b = [x for x in sub.vertices if x not in set(side_a)]
            where_a = rec(induced_subgraph(sub, side_a))
            where_b = rec(induced_subgraph(sub, side_b))
            tid = len(tree_edges)
            tree_edges.append(Edge(tid, where_a[u], where_b[v]))
            links[tid] = tuple(sorted(ids))
            return {**where_a, **where_b}
        bid = len(bags)
        bags[bid] = frozenset(sub.vertices)
        return {x: bid for x in sub.vertices}

    rec(g)
    tree = Multigraph(sorted(bags), tree_edges)
    return TreeDecomposition(tree, bags, NEARLY_FOUR_EC, links)


def contract_bags(g: Multigraph, dec: TreeDecomposition) -> Multigraph:
    """Quotient of g by the bags, intra-bag edges dropped."""
    where = dec.bag_of()
    out = [Edge(e.id, where[e.u], where[e.v]) for e in g.edges if where[e.u] != where[e.v]]
    return Multigraph(sorted(dec.bags), out)


# ---------------------------------------------------------------- validator


def _stoer_wagner(vertices: list[int], weighted: dict[tuple[int, int], int]) -> int:
    """Global minimum cut weight of a weighted undirected graph (>= 2 vertices)."""
    w: dict[int, dict[int, int]] = {v: {} for v in vertices}
    for (a, b), c in weighted.items():
        w[a][b] = w[a].get(b, 0) + c
        w[b][a] = w[b].get(a, 0) + c
    alive = list(vertices)
    best = None
    while len(alive) > 1:
        added = [alive[0]]
        conn = {v: w[alive[0]].get(v, 0) for v in alive[1:]}
        prev, last = alive[0], alive[0]
        while conn:
            nxt = max(conn, key=lambda v: (conn[v], -alive.index(v)))
            cut_of_phase = conn.pop(nxt)
            prev, last = added[-1], nxt
            added.append(nxt)
            for y, c in w[nxt].items():
                if y in conn:
                    conn[y] += c
        best = cut_of_phase if best is None else min(best, cut_of_phase)
        # merge last into prev
        for y, c in list(w[last].items()):
            if y == prev:
                continue
            w[prev][y] = w[prev].get(y, 0) + c
            w[y][prev] = w[y].get(prev, 0) + c
            del w[y][last]
        w[prev].pop(last, None)
        del w[last]
        alive.remove(last)
    return best


def _min_cut_of(g: Multigraph, vs: frozenset[int]) -> int:
    weighted: dict[tuple[int, int], int] = {}
    for e in g.edges:
        if e.u in vs and e.v in vs and e.u != e.v:
            key = (min(e.u, e.v), max(e.u, e.v))
            weighted[key] = weighted.get(key, 0) + 1
    return _stoer_wagner(sorted(vs), weighted)


def validate_decomposition(g: Multigraph, dec: TreeDecomposition) -> Verdict:
    """Re-check every structural property of a decomposition of g."""
    t = dec.tree
    # tree shape
    if set(t.vertices) != set(dec.bags):
        return Verdict.failed("tree vertices differ from bag ids")
    if t.m != t.n - 1:
        return Verdict.failed("tree has the wrong number of edges")
    seen, stack = set(), [t.vertices[0]] if t.n else []
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(e.v if e.u == x else e.u for e in t.edges if x in (e.u, e.v))
    if len(seen) != t.n or any(e.u == e.v for e in t.edges):
        return Verdict.failed("bag graph is not a tree")
    # partition
    owner: dict[int, int] = {}
    for b, vs in dec.bags.items():
        if not vs:
            return Verdict.failed("empty bag", b)
        for v in vs:
            if v in owner:
                return Verdict.failed("bags overlap", v)
            owner[v] = b
    if set(owner) != set(g.vertices):
        return Verdict.failed("bags do not cover the vertex set")
    # bag connectivity
    need = 2 if dec.kind == TWO_EC else 4
    for b, vs in dec.bags.items():
        if len(vs) > 1 and _min_cut_of(g, vs) < need:
            return Verdict.failed(f"bag is not {need}-edge-connected", b)
    # cross edges
    tree_pairs = {}
    for e in t.edges:
        tree_pairs[frozenset((e.u, e.v))] = e.id
    crossing: dict[int, list[Edge]] = {e.id: [] for e in t.edges}
    for e in g.edges:
        a, b = owner[e.u], owner[e.v]
        if a == b:
            continue
        tid = tree_pairs.get(frozenset((a, b)))
        if tid is None:
            return Verdict.failed("host edge joins bags that are not adjacent in the tree", e.id)
        crossing[tid].append(e)
    for tid, es in crossing.items():
        if dec.kind == TWO_EC:
            if len(es) != 1:
                return Verdict.failed("tree edge does not carry exactly one host edge", tid)
        else:
            if not 1 <= len(es) <= 3:
                return Verdict.failed("tree edge carries no host edge or more than three", tid)
            if len({e.ends for e in es}) != 1:
                return Verdict.failed("host edges along a tree edge are not parallel", tid)
        if dec.links and tuple(sorted(e.id for e in es)) != tuple(sorted(dec.links.get(tid, ()))):
            return Verdict.failed("tree edge links disagree with the host", tid)
    return Verdict.passed()
