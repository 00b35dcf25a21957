"""Named graph families: walls, grids, thetas, cycles, cliques.

Walls and grids use coordinates (x, y) with 1 <= x <= n (position inside a
row) and 1 <= y <= m (row index).  The vertex (x, y) gets id
``(y - 1) * n + (x - 1)``, so ids are row-major and portable between runs.
"""

from __future__ import annotations

from itertools import combinations
from math import ceil

from .errors import InputError
from .multigraph import Edge, Multigraph, duplicate_edges


def _positive(**kw) -> None:
    for name, value in kw.items():
        if int(value) < 1:
            raise InputError(f"{name} must be a positive integer, got {value}")


def coord_id(n: int, x: int, y: int) -> int:
    return (y - 1) * n + (x - 1)


def id_coord(n: int, vid: int) -> tuple[int, int]:
    return vid % n + 1, vid // n + 1


def wall(m: int, n: int) -> Multigraph:
    """The m x n wall: m rows of n vertices, maximum degree 3."""
    _positive(m=m, n=n)
    pairs = []
    for y in range(1, m + 1):
        for x in range(1, n):
            pairs.append(((x, y), (x + 1, y)))
    for a in range(1, ceil(n / 2) + 1):
        for b in range(1, m // 2 + 1):
            pairs.append(((2 * a - 1, 2 * b - 1), (2 * a - 1, 2 * b)))
    for a in range(1, n // 2 + 1):
        for b in range(1, (m - 1) // 2 + 1):
            pairs.append(((2 * a, 2 * b), (2 * a, 2 * b + 1)))
    vertices = [coord_id(n, x, y) for y in range(1, m + 1) for x in range(1, n + 1)]
    edges = [Edge(i, coord_id(n, *p), coord_id(n, *q)) for i, (p, q) in enumerate(pairs)]
    return Multigraph(vertices, edges)


def paper_wall_2r_r(r: int) -> Multigraph:
    """The "2r x r wall" with r rows and r columns, i.e. ``wall(m=r, n=2r)``."""
    _positive(r=r)
    return wall(r, 2 * r)


def wall_row(m: int, n: int, i: int) -> frozenset[int]:
    if not 1 <= i <= m:
        raise InputError(f"row index {i} outside 1..{m}")
    return frozenset(coord_id(n, x, i) for x in range(1, n + 1))


def wall_column(m: int, n: int, k: int) -> frozenset[int]:
    if not 1 <= k <= ceil(n / 2):
        raise InputError(f"column index {k} outside 1..{ceil(n / 2)}")
    return frozenset(
        coord_id(n, x, y) for x in range(2 * k - 1, min(2 * k, n) + 1) for y in range(1, m + 1)
    )


def wall_rows(m: int, n: int) -> list[frozenset[int]]:
    return [wall_row(m, n, i) for i in range(1, m + 1)]


def wall_columns(m: int, n: int) -> list[frozenset[int]]:
    return [wall_column(m, n, k) for k in range(1, ceil(n / 2) + 1)]


def wall_row_edges(m: int, n: int, i: int) -> list[int]:
    """Ids of the edges of the i-th row of ``wall(m, n)``."""
    if not 1 <= i <= m:
        raise InputError(f"row index {i} outside 1..{m}")
    # horizontal edges come first, row by row, n - 1 per row
    start = (i - 1) * (n - 1)
    return list(range(start, start + n - 1))


def grid(m: int, n: int) -> Multigraph:
    """The m x n grid on {1..n} x {1..m}; horizontal edges first, then vertical."""
    _positive(m=m, n=n)
    pairs = []
    for y in range(1, m + 1):
        for x in range(1, n):
            pairs.append(((x, y), (x + 1, y)))
    for y in range(1, m):
        for x in range(1, n + 1):
            pairs.append(((x, y), (x, y + 1)))
    vertices = [coord_id(n, x, y) for y in range(1, m + 1) for x in range(1, n + 1)]
    edges = [Edge(i, coord_id(n, *p), coord_id(n, *q)) for i, (p, q) in enumerate(pairs)]
    return Multigraph(vertices, edges)


def diagonal_vertices(r: int) -> list[tuple[int, int]]:
    """Coordinates (2i - 1, i), i = 1..r, of the diagonal of ``paper_wall_2r_r(r)``."""
    _positive(r=r)
    return [(2 * i - 1, i) for i in range(1, r + 1)]


def diagonal_vertex_ids(r: int) -> list[int]:
    return [coord_id(2 * r, x, y) for x, y in diagonal_vertices(r)]


def theta_graph(r: int) -> Multigraph:
    """Two vertices joined by r parallel edges."""
    _positive(r=r)
    return Multigraph([0, 1], [Edge(i, 0, 1) for i in range(r)])


def cycle(n: int) -> Multigraph:
    """Cycle on vertices 0..n-1 (n = 1 is a loop, n = 2 a digon)."""
    _positive(n=n)
    return Multigraph(range(n), [Edge(i, i, (i + 1) % n) for i in range(n)])


def doubled_cycle(n: int) -> Multigraph:
    return duplicate_edges(cycle(n), 2)[0]


def path(n: int) -> Multigraph:
    """Path on n vertices."""
    _positive(n=n)
    return Multigraph(range(n), [Edge(i, i, i + 1) for i in range(n - 1)])


def star(d: int) -> Multigraph:
    """K_{1,d} with centre 0."""
    if d < 0:
        raise InputError("d must be nonnegative")
    return Multigraph(range(d + 1), [Edge(i, 0, i + 1) for i in range(d)])


def complete(n: int) -> Multigraph:
    _positive(n=n)
    return Multigraph(range(n), [Edge(i, a, b) for i, (a, b) in enumerate(combinations(range(n), 2))])


def doubled_complete(n: int) -> Multigraph:
    return duplicate_edges(complete(n), 2)[0]


def loop_graph() -> Multigraph:
    return cycle(1)
