"""Finite (optionally ordered) metric spaces with exact distances.

Points are indexed 0..n-1 internally; labels are for I/O only.  The order
is stored as a permutation listing point indices from least to greatest,
so rank lookups are O(1) and order-rank matching of two ordered spaces is
a single pass.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .dvs import DistanceSet
from .exact import ExactReal, parse


class SpaceError(Exception):
    pass


OK = "ok"


@dataclass(frozen=True)
class Violation:
    kind: str  # Symmetry | Diagonal | Positivity | Triangle | NotInDelta | BadOrder
    witness: tuple


@dataclass(frozen=True)
class Space:
    labels: tuple[str, ...]
    dist: tuple[tuple[ExactReal, ...], ...]
    order: Optional[tuple[int, ...]] = None  # indices, least to greatest
    delta: Optional[DistanceSet] = None

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> ExactReal:
        return self.dist[i][j]

    def rank(self, i: int) -> int:
        """Position of point i in the order (0 = least)."""
        return self.order.index(i)

    def before(self, i: int, j: int) -> bool:
        return self.rank(i) < self.rank(j)

    def diameter(self) -> ExactReal:
        best = ExactReal(0)
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.dist[i][j] > best:
                    best = self.dist[i][j]
        return best

    def induced(self, points) -> "Space":
        """Substructure on the given point indices (sorted), with the
        induced relative order."""
        pts = sorted(points)
        dist = tuple(tuple(self.dist[i][j] for j in pts) for i in pts)
        order = None
        if self.order is not None:
            by_rank = sorted(pts, key=self.rank)
            order = tuple(pts.index(i) for i in by_rank)
        return Space(tuple(self.labels[i] for i in pts), dist, order, self.delta)

    def relabel(self, labels) -> "Space":
        return Space(tuple(labels), self.dist, self.order, self.delta)

    def with_delta(self, delta: Optional[DistanceSet]) -> "Space":
        return Space(self.labels, self.dist, self.order, delta)

    def to_json(self) -> dict:
        out = {
            "labels": list(self.labels),
            "dist": [[str(v) for v in row] for row in self.dist],
            "order": list(self.order) if self.order is not None else None,
        }
        if self.delta is not None:
            out["delta"] = self.delta.to_json()
        return out

    @staticmethod
    def from_json(obj: dict) -> "Space":
        delta = DistanceSet.from_json(obj["delta"]) if obj.get("delta") else None
        order = tuple(obj["order"]) if obj.get("order") is not None else None
        return Space(
            tuple(obj["labels"]),
            tuple(tuple(parse(v) for v in row) for row in obj["dist"]),
            order,
            delta,
        )


def make_space(labels, dists, order=None, delta=None) -> Space:
    """Build a space from labels and a dict {(i, j): distance}."""
    n = len(labels)
    zero = ExactReal(0)
    matrix = [[zero] * n for _ in range(n)]
    for (i, j), v in dists.items():
        matrix[i][j] = v
        matrix[j][i] = v
    return Space(
        tuple(labels),
        tuple(tuple(row) for row in matrix),
        tuple(order) if order is not None else None,
        delta,
    )


def uniform_space(n: int, value: ExactReal, ordered: bool = True, delta=None) -> Space:
    labels = tuple(f"p{i}" for i in range(n))
    dists = {(i, j): value for i in range(n) for j in range(i + 1, n)}
    order = tuple(range(n)) if ordered else None
    return make_space(labels, dists, order, delta)


def validate(x: Space):
    """OK, or the first violation of the metric/order/Delta axioms."""
    n = x.n
    for i in range(n):
        if not x.dist[i][i].is_zero():
            return Violation("Diagonal", (i,))
    for i in range(n):
        for j in range(i + 1, n):
            if x.dist[i][j] != x.dist[j][i]:
                return Violation("Symmetry", (i, j))
            if x.dist[i][j].sign() <= 0:
                return Violation("Positivity", (i, j))
    for i, j, k in itertools.permutations(range(n), 3):
        if x.dist[i][k] > x.dist[i][j] + x.dist[j][k]:
            return Violation("Triangle", (i, j, k))
    if x.delta is not None:
        for i in range(n):
            for j in range(i + 1, n):
                if x.dist[i][j] not in x.delta:
                    return Violation("NotInDelta", (i, j, x.dist[i][j]))
    if x.order is not None:
        if sorted(x.order) != list(range(n)):
            return Violation("BadOrder", tuple(x.order))
    return OK


def copies_of(c: Space, a: Space) -> list[tuple[int, ...]]:
    """All point subsets of c inducing a substructure isomorphic to a."""
    out = []
    for subset in itertools.combinations(range(c.n), a.n):
        if isomorphic(c.induced(subset), a) is not None:
            out.append(subset)
    return out


def _profile(x: Space, i: int):
    row = sorted(str(x.dist[i][j]) for j in range(x.n) if j != i)
    return tuple(row)


def isomorphic(x: Space, y: Space) -> Optional[tuple[int, ...]]:
    """A distance-preserving (and order-preserving, when both ordered)
    bijection as a tuple m with m[i] in y for point i of x, or None.

    Ordered spaces admit a single candidate: match by order rank.
    Unordered spaces fall back to backtracking with distance-profile
    pruning.
    """
    if x.n != y.n:
        return None
    if (x.order is None) != (y.order is None):
        return None
    if x.order is not None:
        m = [0] * x.n
        for r in range(x.n):
            m[x.order[r]] = y.order[r]
        for i in range(x.n):
            for j in range(x.n):
                if x.dist[i][j] != y.dist[m[i]][m[j]]:
                    return None
        return tuple(m)
    # unordered: backtracking with per-point distance multiset pruning
    px = [_profile(x, i) for i in range(x.n)]
    py = [_profile(y, i) for i in range(y.n)]
    if sorted(px) != sorted(py):
        return None
    m = [-1] * x.n
    used = [False] * y.n

    def extend(i: int) -> bool:
        if i == x.n:
            return True
        for j in range(y.n):
            if used[j] or px[i] != py[j]:
                continue
            if all(x.dist[i][k] == y.dist[j][m[k]] for k in range(i)):
                m[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                m[i] = -1
                used[j] = False
        return False

    return tuple(m) if extend(0) else None


@dataclass(frozen=True)
class PartialIsometry:
    space: Space
    pairs: tuple[tuple[int, int], ...]  # (source point, target point)
    order_preserving: bool = field(default=False, compare=False)

    def __post_init__(self):
        dom = [p for p, _ in self.pairs]
        rng = [q for _, q in self.pairs]
        if len(set(dom)) != len(dom) or len(set(rng)) != len(rng):
            raise SpaceError("partial map must be injective")
        object.__setattr__(self, "order_preserving", self._check_order())

    def domain(self) -> list[int]:
        return [p for p, _ in self.pairs]

    def image(self, i: int) -> Optional[int]:
        for p, q in self.pairs:
            if p == i:
                return q
        return None

    def is_isometry(self) -> bool:
        for (p1, q1), (p2, q2) in itertools.combinations(self.pairs, 2):
            if self.space.dist[p1][p2] != self.space.dist[q1][q2]:
                return False
        return True

    def _check_order(self) -> bool:
        if self.space.order is None:
            return False
        for (p1, q1), (p2, q2) in itertools.combinations(self.pairs, 2):
            if self.space.before(p1, p2) != self.space.before(q1, q2):
                return False
        return True

    def inverse(self) -> "PartialIsometry":
        return PartialIsometry(self.space, tuple((q, p) for p, q in self.pairs))


def periodic_fixed(p: PartialIsometry) -> tuple[set[int], set[int]]:
    """(Z(p), F(p)): points whose forward orbit stays in the domain and
    returns, and points fixed outright."""
    fmap = dict(p.pairs)
    periodic: set[int] = set()
    for x in fmap:
        cur = x
        for _ in range(len(fmap) + 1):
            if cur not in fmap:
                break
            cur = fmap[cur]
            if cur == x:
                periodic.add(x)
                break
    fixed = {x for x, y in p.pairs if x == y}
    return periodic, fixed
