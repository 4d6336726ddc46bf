import itertools
import random
from fractions import Fraction

import pytest

from conftest import random_at_most_hyperbolic
from oracles import GOLDEN, components, is_hyperbolic_matrix, is_neg_def, path_pair_counts, principal

from lcsystems import DomainError, ExactScalar, VectorSystem
from lcsystems.bound import (
    dimension_bound,
    elliptic_pair_counts,
    graph_distances,
    max_lanner_size,
    pair_counts,
)
from lcsystems.catalog import get_family, instantiate

V = VectorSystem.from_matrix


def path(n, w=2):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -w
        if i + 1 < n:
            rows[i][i + 1] = rows[i + 1][i] = 1
    return rows


def brute_lanner_size(mat, cap):
    best = 0
    n = len(mat)
    for k in range(1, min(cap, n) + 1):
        for idx in itertools.combinations(range(n), k):
            sub = principal(mat, idx)
            if not is_hyperbolic_matrix(sub):
                continue
            if all(not is_hyperbolic_matrix(principal(sub, rest))
                   for rest in itertools.combinations(range(k), k - 1) if rest):
                best = max(best, k)
    return best


def bfs(mat, idx):
    out = {}
    for s in idx:
        dist, frontier = {s: 0}, [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in idx:
                    if w not in dist and mat[u][w] != 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        out.update({(s, t): d for t, d in dist.items() if s < t})
    return out


def brute_pair_counts(mat, l, cap):
    c1 = c2 = Fraction(0)
    n = len(mat)
    for k in range(1, min(cap, n) + 1):
        for idx in itertools.combinations(range(n), k):
            sub = principal(mat, idx)
            if len(components(sub)) != 1 or not is_neg_def(sub):
                continue
            d = bfs(mat, idx).values()
            c1 = max(c1, Fraction(sum(1 for x in d if 1 <= x <= l - 2), k))
            c2 = max(c2, Fraction(sum(1 for x in d if l - 2 < x <= 2 * l - 3), k))
    return c1, c2


# -- distances ---------------------------------------------------------------------

def test_distances_use_the_induced_subgraph():
    s = V(path(4))
    assert graph_distances(s, [0, 1, 2, 3])[(0, 3)] == 3
    assert (0, 2) not in graph_distances(s, [0, 2])  # disconnected inside the subset


# -- Lanner size -------------------------------------------------------------------------

def test_lanner_size_examples():
    assert max_lanner_size(V(path(5))).size == 0
    g = V([[-1, 2, 0], [2, -1, 1], [0, 1, -2]])
    scan = max_lanner_size(g)
    assert scan.size == 2 and scan.witness == (0, 1) and scan.verify(g) and not scan.cap_reached


@pytest.mark.parametrize("fid,params", [("H8_2", {}), ("H1", {}), ("H10", {}), ("G2", {"b1": 1, "b2": 2, "b3": 2})])
def test_lanner_catalog_members_have_full_size(fid, params):
    s = instantiate(get_family(fid), params)
    scan = max_lanner_size(s, cap=s.n)
    assert scan.size == s.n and scan.verify(s) and not scan.cap_reached


def test_lanner_cap_binds_on_large_members():
    s = instantiate(get_family("H10"), {})
    assert s.n == 9
    scan = max_lanner_size(s)
    assert scan.size == 0 and scan.cap_reached


def test_lanner_size_against_brute_force():
    rng = random.Random(31)
    hits = 0
    for _ in range(120):
        rows = random_at_most_hyperbolic(rng, rng.randint(2, 6), max_b=3, max_off=2)
        scan = max_lanner_size(V(rows), cap=4)
        assert scan.size == brute_lanner_size(rows, 4), rows
        assert scan.verify(V(rows))
        hits += scan.size > 0
    assert hits > 20


def test_lanner_size_is_monotone_under_subsystems():
    rng = random.Random(37)
    for _ in range(60):
        rows = random_at_most_hyperbolic(rng, rng.randint(2, 6), max_b=3, max_off=2)
        idx = sorted(rng.sample(range(len(rows)), rng.randint(1, len(rows))))
        whole = max_lanner_size(V(rows), cap=6).size
        part = max_lanner_size(V(principal(rows, idx)), cap=6).size
        assert part <= whole


def test_lanner_cap_validation():
    with pytest.raises(DomainError):
        max_lanner_size(V(path(2)), cap=0)


# -- pair counts ------------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("l", [2, 3, 4])
def test_path_pair_counts(n, l):
    scan = elliptic_pair_counts(V(path(n)), l)
    assert (scan.c1, scan.c2) == path_pair_counts(n, l)
    assert scan.verify(V(path(n)))


def test_pair_count_examples():
    scan = elliptic_pair_counts(V(path(5)), 2)
    assert (scan.c1, scan.c2) == (0, Fraction(4, 5))
    assert elliptic_pair_counts(V([[-2]]), 2).c1 == 0
    cyc = V([[-2, 1, 0, 1], [1, -2, 1, 0], [0, 1, -2, 1], [1, 0, 1, -3]])
    scan = elliptic_pair_counts(cyc, 3)
    assert scan.c1 == 1 and scan.c1_witness == (0, 1, 2, 3)
    assert pair_counts(cyc, [0, 1, 2, 3], 3).near == 4


def test_pair_counts_skip_parabolic_cycle():
    c4 = V([[-2, 1, 0, 1], [1, -2, 1, 0], [0, 1, -2, 1], [1, 0, 1, -2]])
    scan = elliptic_pair_counts(c4, 3)
    assert len(scan.c1_witness) == 3 and scan.c1 == Fraction(2, 3)


def test_pair_counts_against_brute_force():
    rng = random.Random(41)
    for _ in range(60):
        rows = random_at_most_hyperbolic(rng, rng.randint(1, 6), max_b=4, max_off=1)
        l = rng.randint(2, 4)
        scan = elliptic_pair_counts(V(rows), l, cap=6)
        assert (scan.c1, scan.c2) == brute_pair_counts(rows, l, 6), rows
        assert scan.verify(V(rows))


def test_pair_count_cap_reporting():
    scan = elliptic_pair_counts(V(path(6)), 3, cap=3)
    assert scan.cap_reached
    assert not elliptic_pair_counts(V(path(6)), 3, cap=6).cap_reached


def test_pair_count_validation():
    with pytest.raises(DomainError):
        elliptic_pair_counts(V(path(2)), 1)
    with pytest.raises(DomainError):
        pair_counts(V(path(2)), [0, 1], 1)


# -- the bound ------------------------------------------------------------------------------------

def test_dimension_bound_examples():
    for (c1, c2), want in GOLDEN["dimension_bound"].items():
        assert dimension_bound(c1, c2) == want
    assert dimension_bound(Fraction(1, 2), Fraction(3, 4)) == 96 * (Fraction(1, 2) + Fraction(1, 4)) + 68
    assert dimension_bound(ExactScalar.sqrt(2), 0) == 96 * ExactScalar.sqrt(2) + 68
    with pytest.raises(DomainError):
        dimension_bound(-1, 0)


def test_dimension_bound_is_monotone():
    rng = random.Random(43)
    for _ in range(300):
        c1, c2 = Fraction(rng.randint(0, 50), rng.randint(1, 9)), Fraction(rng.randint(0, 50), rng.randint(1, 9))
        d1, d2 = Fraction(rng.randint(0, 20), rng.randint(1, 9)), Fraction(rng.randint(0, 20), rng.randint(1, 9))
        assert dimension_bound(c1 + d1, c2) >= dimension_bound(c1, c2)
        assert dimension_bound(c1, c2 + d2) >= dimension_bound(c1, c2)
