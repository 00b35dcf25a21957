import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import has_immersion
from strategies import multigraphs, random_multigraph

from immersion_lab import generators as gen
from immersion_lab.errors import Budget, CapacityError, InputError
from immersion_lab.immersion import (
    HalfIntegralImmersion,
    Immersion,
    MinorModel,
    Thorns,
    enumerate_shells,
    find_immersion,
    find_minor,
    find_thorns,
    identity_immersion,
    iter_immersions,
    lift_half_integral,
    project_to_half_integral,
    realizes,
    s_plus,
    verify_half_integral,
    verify_immersion,
    verify_minor,
    verify_subdivision,
    verify_thorns,
)
from immersion_lab.multigraph import Edge, Multigraph, duplicate_edges, line_graph

K2, K3 = gen.complete(2), gen.complete(3)


def test_identity_and_arcs():
    g = gen.complete(4)
    assert verify_immersion(identity_immersion(g)).ok
    c4 = gen.cycle(4)  # edges i: (i, i+1 mod 4)
    imm = Immersion(K3, c4, {0: 0, 1: 1, 2: 2}, {0: (0,), 1: (3, 2), 2: (1,)})
    assert verify_immersion(imm).ok and verify_subdivision(imm).ok


def test_verifier_failures():
    c4 = gen.cycle(4)
    shared = Immersion(K3, c4, {0: 0, 1: 1, 2: 2}, {0: (0,), 1: (0, 1), 2: (1,)})
    v = verify_immersion(shared)
    assert not v.ok
    assert verify_half_integral(shared).ok  # each host edge used twice
    not_injective = Immersion(K2, c4, {0: 1, 1: 1}, {0: (0,)})
    assert "injective" in verify_immersion(not_injective).reason
    overlap = Immersion(K3, c4, {0: 0, 1: 1, 2: 2}, {0: (0,), 1: (3, 2), 2: (2,)})
    v = verify_immersion(overlap)
    assert not v.ok and "path" in v.reason
    with pytest.raises(InputError):
        verify_immersion(Immersion(K2, c4, {0: 0, 1: 9}, {0: (0,)}))
    with pytest.raises(InputError):
        verify_immersion(Immersion(K2, c4, {0: 0, 1: 1}, {0: (42,)}))


def test_shared_host_edge_is_reported():
    g = gen.theta_graph(2)
    two = Multigraph([0, 1], [Edge(0, 0, 1), Edge(1, 0, 1)])
    imm = Immersion(two, g, {0: 0, 1: 1}, {0: (0,), 1: (0,)})
    v = verify_immersion(imm)
    assert not v.ok and "edge-disjoint" in v.reason
    assert verify_half_integral(imm).ok


def test_half_integral_theta4_in_c4():
    c4 = gen.cycle(4)
    imm = HalfIntegralImmersion(gen.theta_graph(4), c4, {0: 0, 1: 2},
                                {0: (0, 1), 1: (0, 1), 2: (3, 2), 3: (3, 2)})
    assert verify_half_integral(imm).ok
    assert not verify_immersion(imm).ok
    triple = HalfIntegralImmersion(gen.theta_graph(3), c4, {0: 0, 1: 2}, {0: (0, 1), 1: (0, 1), 2: (0, 1)})
    assert not verify_half_integral(triple).ok


def test_subdivision_crossing_detected():
    # K2 + K2 (two disjoint edges) routed through a common middle vertex
    h = Multigraph([0, 1, 2, 3], [Edge(0, 0, 1), Edge(1, 2, 3)])
    g = Multigraph([0, 1, 2, 3, 4], [Edge(0, 0, 4), Edge(1, 4, 1), Edge(2, 2, 4), Edge(3, 4, 3)])
    imm = Immersion(h, g, {0: 0, 1: 1, 2: 2, 3: 3}, {0: (0, 1), 1: (2, 3)})
    assert verify_immersion(imm).ok
    assert not verify_subdivision(imm).ok
    single = Immersion(K2, gen.path(3), {0: 0, 1: 2}, {0: (0, 1)})
    assert verify_subdivision(single).ok


def test_find_examples():
    assert find_immersion(gen.path(2), K2) is not None
    assert find_immersion(gen.loop_graph(), K2) is None
    assert find_immersion(gen.star(3), K3) is None
    g = Multigraph([1, 2, 3], [Edge(0, 1, 2), Edge(1, 1, 2), Edge(2, 1, 3), Edge(3, 1, 3)])
    imm = find_immersion(g, K3)
    assert imm is not None and verify_immersion(imm).ok
    assert has_immersion(g, K3)


def test_loops_route_to_cycles():
    loop = gen.loop_graph()
    imm = find_immersion(gen.loop_graph(), loop)
    assert imm.routes[0] == (0,)
    imm = find_immersion(gen.cycle(3), loop)
    assert sorted(imm.routes[0]) == [0, 1, 2] and verify_immersion(imm).ok
    assert find_immersion(gen.path(4), loop) is None
    imm = find_immersion(gen.theta_graph(2), loop)
    assert sorted(imm.routes[0]) == [0, 1]


def test_fixed_branch_forbidden_and_isolated():
    c4 = gen.cycle(4)
    imm = find_immersion(c4, K2, fixed_branch={0: 3, 1: 1})
    assert imm.branch == {0: 3, 1: 1} and verify_immersion(imm).ok
    assert find_immersion(c4, K3, forbidden_edges=[0]) is None
    iso = Multigraph([0, 1, 2], [])
    assert find_immersion(gen.path(3), iso) is not None
    assert find_immersion(gen.path(2), iso) is None


def test_capacity_is_not_absence():
    g = gen.doubled_complete(5)
    with pytest.raises(CapacityError):
        find_immersion(g, gen.complete(5), forbidden_edges=list(g.edge_ids)[:4], budget=Budget(5))


@settings(max_examples=200)
@given(multigraphs(max_vertices=5, max_edges=7), st.sampled_from(["k2", "k3", "theta2", "loop", "p3"]))
def test_search_matches_oracle(g, name):
    h = {"k2": K2, "k3": K3, "theta2": gen.theta_graph(2), "loop": gen.loop_graph(), "p3": gen.path(3)}[name]
    got = find_immersion(g, h)
    assert (got is not None) == has_immersion(g, h)
    if got is not None:
        v = verify_immersion(got)
        assert v.ok, v.reason
        assert verify_half_integral(got).ok


@settings(max_examples=100)
@given(multigraphs(max_vertices=5, max_edges=6), st.integers(0, 4), st.integers(0, 4))
def test_monotone_under_edge_addition(g, u, v):
    if u >= g.n or v >= g.n:
        return
    bigger = Multigraph(g.vertices, list(g.edges) + [Edge(g.max_edge_id() + 1, u, v)])
    for h in (K3, gen.theta_graph(2)):
        if find_immersion(g, h) is not None:
            assert find_immersion(bigger, h) is not None


@settings(max_examples=100)
@given(multigraphs(max_vertices=5, max_edges=6, loops=False))
def test_subdivision_ok_implies_immersion_ok(g):
    for imm in itertools.islice(iter_immersions(g, K3), 20):
        if verify_subdivision(imm).ok:
            assert verify_immersion(imm).ok


def test_half_integral_lift_both_ways():
    rng = random.Random(3)
    for _ in range(40):
        g = random_multigraph(rng, rng.randint(2, 5), rng.randint(1, 6), loops=False)
        doubled, back = duplicate_edges(g, 2)
        for h in (K3, gen.theta_graph(2), gen.theta_graph(3)):
            imm = find_immersion(doubled, h)
            if imm is None:
                continue
            half = project_to_half_integral(imm, g, back)
            assert verify_half_integral(half).ok
            again = lift_half_integral(half, doubled, back)
            assert verify_immersion(again).ok


def test_certificate_round_trip():
    imm = find_immersion(gen.complete(4), K3)
    again = Immersion.from_json(imm.to_json())
    assert again.branch == imm.branch and again.routes == imm.routes
    assert verify_immersion(again).ok
    with pytest.raises(InputError):
        Immersion.from_json({"pattern": {}}, None)


# ------------------------------------------------------------ thorns / minor


def test_thorns_examples():
    th = find_thorns(gen.star(4), gen.complete(4))
    assert th is not None and verify_thorns(th).ok
    assert all(len(bs) == 1 for bs in th.branch_sets.values())
    m = Multigraph([0, 1, 2, 3], [Edge(0, 0, 1), Edge(1, 2, 3)])
    assert find_thorns(m, K2) is None


@pytest.mark.parametrize("r", [2, 3, 4])
def test_grid_row_column_thorns(r):
    # branch set i is row i plus column i; distinct sets meet at a vertex
    g = gen.grid(r, r)
    sets = {}
    for i in range(1, r + 1):
        ids = set()
        for e in g.edges:
            (x1, y1), (x2, y2) = gen.id_coord(r, e.u), gen.id_coord(r, e.v)
            if y1 == y2 == i or x1 == x2 == i:
                ids.add(e.id)
        sets[i - 1] = frozenset(ids)
    v = verify_thorns(Thorns(gen.complete(r), g, sets))
    assert v.ok, v.reason
    assert find_thorns(g, gen.complete(r)) is not None


def test_minor_examples():
    assert find_minor(gen.complete(4), K3) is not None
    assert find_minor(gen.path(5), K3) is None
    assert find_minor(gen.star(4), K3) is None
    k4_minus = Multigraph(range(4), [Edge(i, a, b) for i, (a, b) in enumerate([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])])
    model = find_minor(k4_minus, gen.complete(4))
    assert model is None
    model = find_minor(gen.cycle(5), K3)
    assert model is not None and verify_minor(model).ok


def _brute_thorns(g, h):
    k = h.n
    for assign in itertools.product(range(k + 1), repeat=g.m):
        sets = {p: frozenset(e.id for e, a in zip(g.edges, assign) if a == p + 1) for p in range(k)}
        if any(not s for s in sets.values()):
            continue
        if verify_thorns(Thorns(h, g, sets)).ok:
            return True
    return False


def _brute_minor(g, h):
    k = h.n
    vs = list(g.vertices)
    for assign in itertools.product(range(k + 1), repeat=len(vs)):
        sets = {p: frozenset(v for v, a in zip(vs, assign) if a == p + 1) for p in range(k)}
        if any(not s for s in sets.values()):
            continue
        if verify_minor(MinorModel(h, g, sets)).ok:
            return True
    return False


def test_thorns_iff_line_graph_minor():
    rng = random.Random(17)
    agree = 0
    for i in range(100):
        g = random_multigraph(rng, rng.randint(1, 5), rng.randint(0, 6))
        h = [K2, K3, gen.path(3)][i % 3]
        thorns = _brute_thorns(g, h)
        minor = _brute_minor(line_graph(g)[0], h)
        assert thorns == minor
        found = find_thorns(g, h)
        assert (found is not None) == thorns
        if found is not None:
            assert verify_thorns(found).ok
        assert (find_minor(line_graph(g)[0], h) is not None) == minor
        agree += 1
    assert agree == 100


def test_non_simple_pattern_rejected():
    with pytest.raises(InputError):
        find_thorns(gen.complete(3), gen.theta_graph(2))


# --------------------------------------------------------- S+, realize, shells


def test_s_plus_examples():
    g = gen.complete(3)  # edges 0:(0,1) 1:(0,2) 2:(1,2)
    full = s_plus(g, g.vertices, g.edge_ids)
    assert full.graph == g and not full.leaves
    sp = s_plus(g, [0, 1], [0])
    assert len(sp.leaves) == 2
    assert sp.graph.degree(0) == 2 and sp.graph.degree(1) == 2
    assert sorted(sp.leaf_origin.values()) == [1, 2]
    looped = Multigraph([0, 1], [Edge(0, 0, 1), Edge(1, 0, 0)])
    sp = s_plus(looped, [0, 1], [0])
    assert len(sp.leaves) == 2 and all(sp.graph.degree(x) == 1 for x in sp.leaves)
    assert set(sp.leaf_origin.values()) == {1}
    with pytest.raises(InputError):
        s_plus(g, [0], [0])


def test_realizes_examples():
    g = gen.complete(3)
    sp = s_plus(g, [0, 1], [0])
    assert realizes(sp, sp)
    # one core vertex with two leaves, inside a 2-vertex core path with three leaves
    r = s_plus(gen.star(2), [0], [])
    host = Multigraph(range(4), [Edge(0, 0, 1), Edge(1, 0, 2), Edge(2, 0, 3), Edge(3, 1, 3)])
    s = s_plus(host, [0, 1], [0])
    assert len(s.leaves) == 3 and len(r.leaves) == 2
    assert realizes(s, r)
    many = s_plus(gen.star(4), [0], [])
    assert not realizes(s, many)


def test_shell_examples():
    assert len(enumerate_shells(gen.complete(2))) == 2
    assert len(enumerate_shells(Multigraph([0, 1], []))) == 1
    shells = enumerate_shells(gen.complete(3))
    assert len(shells) == 5
    assert sorted(len(s) for s in shells) == [1, 2, 2, 2, 3]
    with pytest.raises(CapacityError):
        enumerate_shells(gen.path(11))
