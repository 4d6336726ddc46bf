"""Canonical labelling of small edge- and vertex-coloured graphs.

Colour refinement followed by individualisation; each leaf of the
search tree gives a vertex order and the lexicographically smallest
relabelled matrix is the canonical form. Intended for n <= 16.
"""
from __future__ import annotations

from typing import Callable, Hashable, Sequence

Key = Callable[[object], Hashable]


def _refine(colors: list[int], mat: Sequence[Sequence], key: Key) -> list[int]:
    n = len(colors)
    while True:
        sigs = []
        for i in range(n):
            nbrs = sorted(
                (key(mat[i][j]), colors[j]) for j in range(n) if j != i and mat[i][j] != 0
            )
            sigs.append((colors[i], tuple(nbrs)))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _leaves(colors: list[int], mat, key: Key):
    colors = _refine(colors, mat, key)
    n = len(colors)
    if len(set(colors)) == n:
        yield sorted(range(n), key=lambda i: colors[i])
        return
    # first smallest non-singleton cell
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    target = min(c for c, k in counts.items() if k > 1)
    for v in (i for i in range(n) if colors[i] == target):
        # give v a colour just below its cell; existing colours are doubled to make room
        split = [2 * c + 1 for c in colors]
        split[v] = 2 * target
        yield from _leaves(split, mat, key)


def canonical_order(mat: Sequence[Sequence], key: Key) -> tuple[tuple, list[int]]:
    """Return (canonical key, vertex order realising it)."""
    n = len(mat)
    if n == 0:
        return (), []
    init = sorted({key(mat[i][i]) for i in range(n)})
    rank = {k: r for r, k in enumerate(init)}
    colors = [rank[key(mat[i][i])] for i in range(n)]
    best = None
    best_order: list[int] = []
    for order in _leaves(colors, mat, key):
        form = tuple(key(mat[order[i]][order[j]]) for i in range(n) for j in range(i, n))
        if best is None or form < best:
            best, best_order = form, order
    return (n, best), best_order


def find_embeddings(
    pattern_n: int,
    pattern_entry: Callable[[int, int], object],
    pattern_vertex_ok: Callable[[int, int, dict], dict | None],
    target: Sequence[Sequence],
    limit: int | None = None,
):
    """Backtracking bijections pattern -> target preserving off-diagonal entries.

    ``pattern_vertex_ok(p, t, bindings)`` decides whether pattern vertex p may
    map to target vertex t given current variable bindings and returns the
    updated bindings (or None). Yields (mapping, bindings).
    """
    n = len(target)
    if pattern_n != n:
        return
    deg_t = [sum(1 for j in range(n) if j != i and target[i][j] != 0) for i in range(n)]
    deg_p = [sum(1 for j in range(n) if j != i and pattern_entry(i, j) != 0) for i in range(n)]
    if sorted(deg_t) != sorted(deg_p):
        return
    # order pattern vertices so each one (after the first) touches a placed one
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        start = max(remaining, key=lambda v: (deg_p[v], -v))
        stack = [start]
        while stack:
            v = stack.pop()
            if v not in remaining:
                continue
            remaining.discard(v)
            order.append(v)
            for w in sorted((w for w in range(n) if w in remaining and pattern_entry(v, w) != 0),
                            key=lambda w: -deg_p[w]):
                stack.append(w)
    mapping: dict[int, int] = {}
    used = [False] * n
    found = 0

    def rec(idx: int, bindings: dict):
        nonlocal found
        if limit is not None and found >= limit:
            return
        if idx == n:
            found += 1
            yield dict(mapping), dict(bindings)
            return
        p = order[idx]
        for t in range(n):
            if used[t] or deg_t[t] != deg_p[p]:
                continue
            if any(pattern_entry(p, q) != target[t][mapping[q]] for q in mapping):
                continue
            nb = pattern_vertex_ok(p, t, bindings)
            if nb is None:
                continue
            mapping[p] = t
            used[t] = True
            yield from rec(idx + 1, nb)
            used[t] = False
            del mapping[p]

    yield from rec(0, {})
