"""Graph-side quantities for the dimension bound of acute-angled polytopes.

A vector system is read as the Gram graph of a polytope: vertices are
facet normals, and two vertices are adjacent when their inner product is
nonzero. Two quantities feed the bound:

* the largest Lanner subsystem (a hyperbolic system all of whose proper
  subsystems are not hyperbolic), and
* for every connected elliptic subsystem on n vertices, the number of
  vertex pairs at distance d <= l - 2 (normalised by n, giving C1) and at
  distance l - 2 < d <= 2l - 3 (giving C2).

Distance is the unweighted shortest-path length in the subgraph induced
on the examined vertices; it is isolated in :func:`graph_distances`.
Subset searches stop at ``cap`` vertices and report when the cap binds.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .exact import as_exact, sign_of
from .logcanonical import connected_subsets
from .systems import VectorSystem, is_elliptic, is_hyperbolic, is_lanner, subsystem

DEFAULT_CAP = 8


def _neighbours(system: VectorSystem) -> list[list[int]]:
    return [system.neighbours(i) for i in range(system.n)]


def graph_distances(system: VectorSystem, subset: Sequence[int]) -> dict[tuple[int, int], int]:
    """Unweighted shortest-path distance between every connected pair i < j
    of ``subset``, walking only through vertices of ``subset``."""
    inside = set(subset)
    nbrs = _neighbours(system)
    out = {}
    for s in subset:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w in inside and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        for t, d in dist.items():
            if s < t:
                out[(s, t)] = d
    return out


# -- Lanner subsystems -----------------------------------------------------------

@dataclass(frozen=True)
class LannerScan:
    size: int  # 0 when no Lanner subsystem was found
    witness: tuple[int, ...]
    cap: int
    cap_reached: bool  # True: size is only a lower bound

    def verify(self, system: VectorSystem) -> bool:
        if self.size == 0:
            return self.witness == ()
        return len(self.witness) == self.size and is_lanner(subsystem(system, self.witness))


def max_lanner_size(system: VectorSystem, cap: int = DEFAULT_CAP) -> LannerScan:
    """Largest Lanner subsystem with at most ``cap`` vectors.

    Lanner systems are connected, and every proper subset of one is not
    hyperbolic, so the search only grows connected non-hyperbolic sets and
    tests their one-vertex extensions.
    """
    if cap < 1:
        raise DomainError("cap must be at least 1")
    n = system.n
    nbrs = _neighbours(system)
    cache: dict[tuple[int, ...], bool] = {}

    def hyperbolic(sub: tuple[int, ...]) -> bool:
        r = cache.get(sub)
        if r is None:
            r = is_hyperbolic(subsystem(system, sub))
            cache[sub] = r
        return r

    best: tuple[int, ...] = ()
    for v in range(n):
        if hyperbolic((v,)):
            best = best or (v,)
    binding = False
    grow = lambda sub: len(sub) <= cap - 1 and not hyperbolic(sub)  # noqa: E731
    for sub in connected_subsets(n, nbrs, grow):
        outside = {w for u in sub for w in nbrs[u]} - set(sub)
        for w in outside:
            cand = tuple(sorted(sub + (w,)))
            if len(cand) <= len(best) or not hyperbolic(cand):
                continue
            if all(not hyperbolic(tuple(x for x in cand if x != u)) for u in cand):
                best = cand
    # the cap binds when a non-hyperbolic connected set of the full cap size
    # still has room to grow
    if cap < n:
        full = lambda sub: len(sub) <= cap and not hyperbolic(sub)  # noqa: E731
        for sub in connected_subsets(n, nbrs, full):
            if len(sub) == cap and any(w not in sub for u in sub for w in nbrs[u]):
                binding = True
                break
    return LannerScan(len(best), best, cap, binding)


# -- distance pairs in elliptic subsystems -----------------------------------------

@dataclass(frozen=True)
class PairCounts:
    near: int  # pairs with d <= l - 2
    far: int  # pairs with l - 2 < d <= 2l - 3
    n: int

    @property
    def c1(self) -> Fraction:
        return Fraction(self.near, self.n) if self.n else Fraction(0)

    @property
    def c2(self) -> Fraction:
        return Fraction(self.far, self.n) if self.n else Fraction(0)


def pair_counts(system: VectorSystem, subset: Sequence[int], l: int) -> PairCounts:
    """Distance-pair counts for one vertex set (distinct pairs, d >= 1)."""
    if l < 2:
        raise DomainError("l must be at least 2")
    near = far = 0
    for d in graph_distances(system, sorted(subset)).values():
        if 1 <= d <= l - 2:
            near += 1
        elif l - 2 < d <= 2 * l - 3:
            far += 1
    return PairCounts(near, far, len(subset))


@dataclass(frozen=True)
class PairCountScan:
    l: int
    c1: Fraction
    c1_witness: tuple[int, ...]
    c2: Fraction
    c2_witness: tuple[int, ...]
    subgraphs: int
    cap: int
    cap_reached: bool

    def verify(self, system: VectorSystem) -> bool:
        """Each witness is connected, elliptic and attains its constant."""
        for value, wit, attr in ((self.c1, self.c1_witness, "c1"), (self.c2, self.c2_witness, "c2")):
            if not wit:
                if value != 0:
                    return False
                continue
            sub = subsystem(system, wit)
            d = graph_distances(system, wit)
            if len(d) != len(wit) * (len(wit) - 1) // 2 or not is_elliptic(sub):
                return False
            if getattr(pair_counts(system, wit, self.l), attr) != value:
                return False
        return True


def elliptic_pair_counts(system: VectorSystem, l: int, cap: int = DEFAULT_CAP) -> PairCountScan:
    """Smallest C1, C2 satisfying the pair-count condition on every connected
    elliptic subsystem with at most ``cap`` vectors, with argmax witnesses."""
    if l < 2:
        raise DomainError("l must be at least 2")
    if cap < 1:
        raise DomainError("cap must be at least 1")
    n = system.n
    nbrs = _neighbours(system)
    cache: dict[tuple[int, ...], bool] = {}

    def elliptic(sub):
        r = cache.get(sub)
        if r is None:
            r = is_elliptic(subsystem(system, sub))
            cache[sub] = r
        return r

    keep = lambda sub: len(sub) <= cap and elliptic(sub)  # noqa: E731
    c1 = c2 = Fraction(0)
    w1: tuple[int, ...] = ()
    w2: tuple[int, ...] = ()
    count = 0
    binding = False
    for sub in connected_subsets(n, nbrs, keep):
        count += 1
        pc = pair_counts(system, sub, l)
        if pc.c1 > c1 or (pc.c1 == c1 and not w1):
            c1, w1 = pc.c1, sub
        if pc.c2 > c2 or (pc.c2 == c2 and not w2):
            c2, w2 = pc.c2, sub
        if len(sub) == cap and not binding:
            outside = {w for u in sub for w in nbrs[u]} - set(sub)
            binding = any(elliptic(tuple(sorted(sub + (w,)))) for w in outside)
    return PairCountScan(l, c1, w1, c2, w2, count, cap, binding)


# -- the bound -----------------------------------------------------------------------

def dimension_bound(c1, c2):
    """96 (C1 + C2/3) + 68, exactly."""
    e1, e2 = as_exact(c1), as_exact(c2)
    if sign_of(e1) < 0 or sign_of(e2) < 0:
        raise DomainError("C1 and C2 must be non-negative")
    value = 96 * (e1 + e2 * Fraction(1, 3)) + 68
    q = value.rational_value()
    return q if q is not None else value
