"""Random multigraph builders shared by property tests and the acceptance suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from immersion_lab.multigraph import Edge, Multigraph


def random_multigraph(rng: random.Random, n: int, m: int, connected: bool = False, loops: bool = True) -> Multigraph:
    """n vertices, m edges; with ``connected`` a random spanning tree comes first."""
    edges = []
    if connected:
        for v in range(1, n):
            edges.append((rng.randrange(v), v))
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and not loops:
            continue
        edges.append((u, v))
    return Multigraph(range(n), [Edge(i, u, v) for i, (u, v) in enumerate(edges)])


def random_connected(rng: random.Random, max_edges: int, loops: bool = True) -> Multigraph:
    m = rng.randint(1, max_edges)
    n = rng.randint(2, m + 1)
    return random_multigraph(rng, n, m, connected=True, loops=loops)


@st.composite
def multigraphs(draw, max_vertices: int = 5, max_edges: int = 7, loops: bool = True, connected: bool = False,
                min_vertices: int = 1):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    if not loops:
        pairs = [(u, v) for u, v in pairs if u != v]
    if connected:
        tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
        pairs = (tree + pairs)[: max(max_edges, n - 1)]
    return Multigraph(range(n), [Edge(i, u, v) for i, (u, v) in enumerate(pairs)])
