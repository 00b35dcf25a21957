"""The ten acceptance criteria, each with its own time limit.

Every test appends one PASS/FAIL line that is printed in the terminal
summary (section "acceptance criteria").
"""

from __future__ import annotations

import random
import time
from itertools import combinations

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import brute_max_disjoint, brute_min_cover, has_immersion, immersion_images
from strategies import random_connected, random_multigraph

from immersion_lab import generators as gen
from immersion_lab.decomposition import (
    contract_bags,
    decompose_nearly_4ec,
    is_nearly_4ec,
    validate_decomposition,
)
from immersion_lab.errors import Budget, CapacityError
from immersion_lab.immersion import find_immersion, verify_half_integral, verify_immersion
from immersion_lab.multigraph import Edge, Multigraph, cut_order, duplicate_edges, is_k_edge_connected, line_graph
from immersion_lab.solver import (
    ep_experiment,
    family_instances,
    half_integral_packing,
    joint_multiplicity_ok,
    max_packing,
    min_cover,
)
from immersion_lab.tangle import (
    check_edge_tangle_axioms,
    check_tangle_axioms,
    conjugate,
    enumerate_cuts,
    enumerate_separations,
    find_edge_tangles,
    find_tangles,
    is_free_edges,
    is_normalized,
    normalize,
    partner,
    restrict,
    wall_cut_trichotomy,
    wall_edge_tangle,
)

pytestmark = pytest.mark.acceptance


def _record(num: int, title: str, ok: bool, elapsed: float, limit: float, detail: str = "") -> None:
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"criterion {num:>2} {status}  {title}  ({elapsed:.1f}s / limit {limit:.0f}s){'  ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _run(num: int, title: str, limit: float, body) -> None:
    t0 = time.perf_counter()
    try:
        detail = body() or ""
        ok = True
    except AssertionError as exc:
        detail, ok = f"violation: {exc}", False
    elapsed = time.perf_counter() - t0
    _record(num, title, ok, elapsed, limit, detail)
    assert ok, detail
    assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"


# 1 ----------------------------------------------------------------------


def test_criterion_1_normalization():
    def body():
        rng = random.Random(101)
        checked = tangles = 0
        for _ in range(200):
            g = random_connected(rng, 6)
            for s in enumerate_separations(g, g.n + 1):
                ns = normalize(g, s)
                assert is_normalized(g, ns), f"not normalized: {g!r} {s!r}"
                assert ns.order <= s.order, f"order grew: {s!r}"
                assert normalize(g, ns) == ns, f"not idempotent: {s!r}"
                checked += 1
            if g.m <= 5:
                for theta in (1, 2, 3):
                    for t in find_tangles(g, theta):
                        tangles += 1
                        for s in enumerate_separations(g, theta):
                            assert (s in t) == (normalize(g, s) in t), f"membership changed: {s!r}"
        assert tangles > 0, "no tangle was materialized"
        return f"{checked} separations, {tangles} tangles"

    _run(1, "normalization idempotent / normalized / order / tangle membership", 120, body)


# 2 ----------------------------------------------------------------------


def test_criterion_2_partner_order():
    def body():
        rng = random.Random(202)
        checked = 0
        for _ in range(100):
            g = random_connected(rng, 7)
            lg, _ = line_graph(g)
            try:
                seps = enumerate_separations(lg, lg.n + 1, Budget(100_000))
            except CapacityError:
                # very dense line graphs: every separation of order < 5
                seps = enumerate_separations(lg, 5)
            for s in seps:
                ns = normalize(lg, s)
                p = partner(g, ns, lg)
                assert cut_order(g, p) == ns.order, f"{g!r}: {ns!r} -> {p!r}"
                checked += 1
        return f"{checked} normalized separations"

    _run(2, "partner order equals separation order", 60, body)


# 3 ----------------------------------------------------------------------


def test_criterion_3_conjugate():
    def body():
        for n in range(3, 7):
            g = gen.doubled_cycle(n)
            found = find_edge_tangles(g, 4)
            assert found, f"no order-4 edge-tangle on doubled C{n}"
            for e in found:
                assert check_edge_tangle_axioms(e).ok
                v = check_tangle_axioms(conjugate(e))
                assert v.ok, f"doubled C{n}: {v.reason} {v.witness}"
                assert conjugate(e).bound == 2
        return "doubled C3..C6"

    _run(3, "conjugate of an order-4 edge-tangle is an order-2 tangle", 120, body)


# 4 ----------------------------------------------------------------------


def test_criterion_4_wall_trichotomy():
    def body():
        v = wall_cut_trichotomy(3, 3)
        assert v.ok, f"{v.reason}: {v.witness}"
        return "2^18 bipartitions"

    _run(4, "wall cut trichotomy on the 3-row, 3-column wall", 300, body)


# 5 ----------------------------------------------------------------------


def test_criterion_5_wall_edge_tangle():
    def body():
        e = wall_edge_tangle(2, 1)
        assert e.host.n == 8
        v = check_edge_tangle_axioms(e, method="sweep")
        assert v.ok, v.reason
        e4 = wall_edge_tangle(4, 2)
        cuts = enumerate_cuts(e4.host, 2, method="bridges")
        assert cuts == enumerate_cuts(e4.host, 2, method="crossing")
        v = check_edge_tangle_axioms(e4, cuts=cuts)
        assert v.ok, v.reason
        return f"{len(cuts)} cuts of order <= 1 on the 4-row wall"

    _run(5, "wall edge-tangles satisfy (E1)-(E3)", 60, body)


# 6 ----------------------------------------------------------------------


def test_criterion_6_immersion_oracle():
    def body():
        rng = random.Random(606)
        patterns = {"K2": gen.complete(2), "K3": gen.complete(3), "theta2": gen.theta_graph(2), "theta3": gen.theta_graph(3)}
        total = positives = 0
        for i in range(320):
            n = rng.randint(1, 6)
            g = random_multigraph(rng, n, rng.randint(0, 8), connected=rng.random() < 0.5 and n <= 9)
            for name, h in patterns.items():
                got = find_immersion(g, h)
                want = has_immersion(g, h)
                assert (got is not None) == want, f"{name} in {g!r}: search {got is not None}, oracle {want}"
                if got is not None:
                    assert verify_immersion(got).ok
                    positives += 1
                total += 1
        return f"{total} instances, {positives} positive"

    _run(6, "find_immersion agrees with the brute-force oracle", 600, body)


# 7 ----------------------------------------------------------------------


def test_criterion_7_packing_covering():
    def body():
        cases = [
            ("K4/K3", gen.complete(4), gen.complete(3), 1, 3),
            ("C4/K3", gen.cycle(4), gen.complete(3), 1, 1),
            ("2C4/theta2", gen.doubled_cycle(4), gen.theta_graph(2), 4, None),
        ]
        for name, g, h, nu, tau in cases:
            res = max_packing(g, h)
            assert res.exact and res.count == nu, f"{name}: nu={res.count}"
            assert brute_max_disjoint(immersion_images(g, h)) == nu, f"{name}: oracle nu differs"
            for w in res.witnesses:
                assert verify_immersion(w).ok
            imgs = [w.image() for w in res.witnesses]
            assert all(not (a & b) for a, b in combinations(imgs, 2))
            if tau is not None:
                cov = min_cover(g, h)
                assert cov.exact and cov.size == tau, f"{name}: tau={cov.size}"
                assert not has_immersion(g, h, set(g.edge_ids) - set(cov.edges))
                assert len(brute_min_cover(g, h)) == tau, f"{name}: oracle tau differs"
        rows = []
        for fam, sizes in (("doubled-cycle", range(3, 7)), ("doubled-complete", range(2, 5))):
            for hname, h in (("theta2", gen.theta_graph(2)), ("k3", gen.complete(3))):
                rows += ep_experiment(family_instances(fam, sizes), h, hname)
        assert all(r.tau >= r.nu for r in rows)
        assert all(r.nu == int(r.graph_id.split("-")[-1]) for r in rows if r.graph_id.startswith("doubled-cycle") and r.pattern == "theta2")
        return f"{len(rows)} harness rows"

    _run(7, "exact packing / covering numbers and weak duality", 600, body)


# 8 ----------------------------------------------------------------------


def test_criterion_8_half_integral():
    def body():
        rng = random.Random(808)
        hs = {"K3": gen.complete(3), "theta2": gen.theta_graph(2)}
        for _ in range(100):
            g = random_multigraph(rng, rng.randint(1, 6), rng.randint(0, 8))
            doubled, _ = duplicate_edges(g, 2)
            for name, h in hs.items():
                half = half_integral_packing(g, h)
                direct = max_packing(doubled, h)
                assert half.exact and direct.exact
                assert half.count == direct.count, f"{name} in {g!r}: {half.count} vs {direct.count}"
                for w in half.witnesses:
                    assert verify_half_integral(w).ok
                assert joint_multiplicity_ok(half.witnesses, 2)
        return "100 graphs x {K3, theta2}"

    _run(8, "half-integral packing equals packing in the doubled graph", 300, body)


# 9 ----------------------------------------------------------------------


def _piece(rng: random.Random) -> Multigraph:
    kind = rng.choice(["vertex", "dcycle", "dk4", "theta4", "k5", "theta5"])
    if kind == "vertex":
        return Multigraph([0], [])
    if kind == "dcycle":
        return gen.doubled_cycle(rng.randint(2, 5))
    if kind == "dk4":
        return gen.doubled_complete(4)
    if kind == "k5":
        return gen.complete(5)
    return gen.theta_graph(4 if kind == "theta4" else 5)


def _glue_up(rng: random.Random):
    k = rng.randint(1, 5)
    pieces = [_piece(rng) for _ in range(k)]
    vs, es, offs = [], [], []
    for p in pieces:
        off = len(vs)
        offs.append(off)
        vs.extend(v + off for v in p.vertices)
        es.extend((e.u + off, e.v + off) for e in p.edges)
    if rng.random() < 0.3:
        mults = [3] * (k - 1)
        if mults:
            mults[rng.randrange(len(mults))] = 1
    else:
        mults = [rng.choice([2, 3]) for _ in range(k - 1)]
    for i in range(1, k):
        j = rng.randrange(i)
        u = offs[i] + rng.choice(pieces[i].vertices)
        w = offs[j] + rng.choice(pieces[j].vertices)
        es.extend([(u, w)] * mults[i - 1])
    order = list(range(len(es)))
    rng.shuffle(order)
    g = Multigraph(vs, [Edge(i, *es[order[i]]) for i in range(len(es))])
    return g, k


def test_criterion_9_decomposition():
    def body():
        rng = random.Random(909)
        for _ in range(100):
            g, k = _glue_up(rng)
            assert is_nearly_4ec(g), repr(g)
            dec = decompose_nearly_4ec(g)
            v = validate_decomposition(g, dec)
            assert v.ok, f"{v.reason} {v.witness}"
            assert len(dec.bags) == k, f"{len(dec.bags)} bags for {k} pieces"
            for vs in dec.bags.values():
                if len(vs) > 1:
                    from immersion_lab.multigraph import induced_subgraph

                    assert is_k_edge_connected(induced_subgraph(g, vs), 4)
            q = contract_bags(g, dec)
            pairs = {}
            for e in q.edges:
                pairs[e.ends] = pairs.get(e.ends, 0) + 1
            assert len(pairs) == len(dec.bags) - 1 and max(pairs.values(), default=0) <= 3
        return "100 glue-ups"

    _run(9, "nearly 4-edge-connected decomposition postconditions", 300, body)


# 10 ---------------------------------------------------------------------


def _adjacent_pairs(g: Multigraph):
    es = list(g.edges)
    for a, b in combinations(es, 2):
        if a.ends & b.ends:
            yield a.id, b.id


def _hosts():
    rng = random.Random(1010)
    hosts = [
        gen.doubled_cycle(3), gen.doubled_cycle(4), gen.doubled_cycle(5), gen.theta_graph(4),
        gen.theta_graph(5), gen.complete(4), gen.complete(5), gen.doubled_complete(4), gen.path(3),
        duplicate_edges(gen.path(3), 3)[0], gen.grid(2, 3),
    ]
    while len(hosts) < 25:
        n = rng.randint(2, 6)
        hosts.append(random_multigraph(rng, n, rng.randint(n, 11), connected=True))
    return hosts


def test_criterion_10_free_pairs():
    def body():
        checked = tangles = 0
        for g in _hosts():
            for xi in (1, 2):
                for theta in (xi + 2, xi + 3):
                    for e in find_edge_tangles(g, theta, limit=4):
                        tangles += 1
                        for r in range(xi + 1):
                            for z in combinations(g.edge_ids, r):
                                ez = restrict(e, z)
                                ok = any(is_free_edges(ez, pair) for pair in _adjacent_pairs(ez.host))
                                assert ok, f"no free pair: {g!r} theta={theta} Z={z}"
                                checked += 1
        assert tangles > 0
        return f"{tangles} edge-tangles, {checked} (tangle, Z) cases"

    _run(10, "a free adjacent edge pair survives deleting <= xi edges", 300, body)
