"""Brute-force certification of the partition arrow on small ordered
structures, plus rigidity checking.

A verdict of Holds is only ever produced by a completed search over all
colorings (backtracking counts as complete when its tree is exhausted);
anything cut short by the budget is Unknown.  A verdict of Fails carries
the bad coloring and is re-verified before being returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .space import Space, copies_of, isomorphic


class RamseyError(Exception):
    pass


class NotEmbeddable(RamseyError):
    pass


HOLDS = "Holds"
FAILS = "Fails"
UNKNOWN = "Unknown"


@dataclass
class ArrowVerdict:
    status: str
    bad_coloring: Optional[dict[tuple[int, ...], int]] = None
    copies_a: int = 0
    copies_b: int = 0
    nodes: int = 0


def arrow(c: Space, b: Space, a: Space, k: int, budget: int = 10 ** 7) -> ArrowVerdict:
    """Certify or refute: every k-coloring of the copies of a in c has a
    monochromatic copy of b."""
    if k < 1:
        raise RamseyError("need k >= 1")
    copies_a = copies_of(c, a)
    copies_b = copies_of(c, b)
    if not copies_b:
        raise NotEmbeddable("b does not embed into c")
    if a.n > 0 and not copies_of(b, a):
        raise NotEmbeddable("a does not embed into b")
    verdict = ArrowVerdict(UNKNOWN, copies_a=len(copies_a), copies_b=len(copies_b))
    if k == 1:
        verdict.status = HOLDS
        return verdict

    a_sets = [set(t) for t in copies_a]
    a_in_b = []
    for bc in copies_b:
        bset = set(bc)
        a_in_b.append([i for i, s in enumerate(a_sets) if s <= bset])
    b_for_a = [[] for _ in copies_a]
    for bi, members in enumerate(a_in_b):
        for ai in members:
            b_for_a[ai].append(bi)

    m = len(copies_a)
    colors = [-1] * m
    # per-B-copy bookkeeping: how many members colored, which colors seen
    assigned = [0] * len(copies_b)
    seen = [set() for _ in copies_b]
    nodes = 0
    over_budget = False

    def search(i: int) -> Optional[list[int]]:
        nonlocal nodes, over_budget
        if i == m:
            return list(colors)
        # symmetry reduction: the first copy is pinned to color 0
        choices = range(1) if i == 0 else range(k)
        for col in choices:
            nodes += 1
            if nodes > budget:
                over_budget = True
                return None
            colors[i] = col
            touched = []
            dead = False
            for bi in b_for_a[i]:
                assigned[bi] += 1
                added = col not in seen[bi]
                if added:
                    seen[bi].add(col)
                touched.append((bi, added))
                if assigned[bi] == len(a_in_b[bi]) and len(seen[bi]) <= 1:
                    dead = True  # this B-copy came out monochromatic
            if not dead:
                result = search(i + 1)
                if result is not None:
                    return result
                if over_budget:
                    pass
            for bi, added in touched:
                assigned[bi] -= 1
                if added:
                    seen[bi].discard(col)
            colors[i] = -1
            if over_budget:
                return None
        return None

    if m == 0:
        # the empty coloring is constant on every copy of B
        verdict.status = HOLDS
        return verdict

    bad = search(0)
    verdict.nodes = nodes
    if bad is not None:
        coloring = {copies_a[i]: bad[i] for i in range(m)}
        if not verify_bad_coloring(c, b, a, coloring):
            raise AssertionError("bad coloring failed re-verification")
        verdict.status = FAILS
        verdict.bad_coloring = coloring
        return verdict
    if over_budget:
        verdict.status = UNKNOWN
        return verdict
    verdict.status = HOLDS
    return verdict


def verify_bad_coloring(c: Space, b: Space, a: Space, coloring: dict) -> bool:
    """Independent re-check that a coloring witnesses failure: every copy
    of b contains two differently colored copies of a."""
    copies_b = copies_of(c, b)
    copies_a = list(coloring)
    for bc in copies_b:
        bset = set(bc)
        cols = {coloring[t] for t in copies_a if set(t) <= bset}
        if len(cols) <= 1:
            return False
    return True


def automorphisms(x: Space):
    """All automorphisms of x (identity included), by backtracking."""
    out = []
    n = x.n
    m = [-1] * n
    used = [False] * n

    def extend(i: int):
        if i == n:
            if x.order is not None:
                for p in range(n):
                    for q in range(n):
                        if x.before(p, q) != x.before(m[p], m[q]):
                            return
            out.append(tuple(m))
            return
        for j in range(n):
            if used[j]:
                continue
            if all(x.dist[i][t] == x.dist[j][m[t]] for t in range(i)):
                m[i] = j
                used[j] = True
                extend(i + 1)
                m[i] = -1
                used[j] = False

    extend(0)
    return out


def is_rigid(x: Space) -> bool:
    """True iff the identity is the only automorphism.  Ordered spaces
    are rigid a priori (a finite linear order has no nontrivial
    automorphism); the search agrees."""
    return all(m == tuple(range(x.n)) for m in automorphisms(x))
