"""Finite approximations of the ordered homogeneous limit.

Everything here works on a concrete finite ordered space M over a closed
distance fragment D: enumerating one-point extensions, saturating M so
that every small substructure has all its one-point extensions realized,
extending partial isometries one point at a time (a single back-and-forth
step), and the order-preserving perturbation of a partial isometry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .amalgam import BEFORE, cap_distances, extend_order, free_amalgam
from .dvs import DistanceSet
from .exact import ExactReal
from .space import OK, PartialIsometry, Space, validate


class BuilderError(Exception):
    pass


class BudgetExceeded(BuilderError):
    pass


class NoSmallEnoughDelta(BuilderError):
    pass


class ZNotInDelta(BuilderError):
    def __init__(self, value):
        super().__init__(f"perturbation distance {value} is not in the fragment")
        self.value = value


@dataclass(frozen=True)
class Extension:
    """A one-point extension of the substructure on `subset`: the new
    point sits at dists[i] from subset[i] and at order position `slot`
    among the subset's points (0 = before all of them)."""

    subset: tuple[int, ...]
    dists: tuple[ExactReal, ...]
    slot: int


@dataclass
class ExtensionReport:
    checked: int = 0
    unrealized: list[Extension] = None

    def __post_init__(self):
        if self.unrealized is None:
            self.unrealized = []

    @property
    def empty(self) -> bool:
        return not self.unrealized


def _distance_vectors(x: Space, d: DistanceSet):
    """All vectors (d(z, p))_p over d.values satisfying the triangle
    inequality against x's distances."""
    pts = range(x.n)
    for vec in itertools.product(d.values, repeat=x.n):
        ok = True
        for i, j in itertools.combinations(pts, 2):
            dij = x.dist[i][j]
            if abs(vec[i] - vec[j]) > dij or dij > vec[i] + vec[j]:
                ok = False
                break
        if ok:
            yield vec


def one_point_extensions(x: Space, d: DistanceSet, max_count: int = 100000) -> list[Space]:
    """All ordered extensions of x by one point with distances in d,
    one space per (distance vector, order slot)."""
    if x.order is None and x.n > 0:
        raise BuilderError("space must be ordered")
    out = []
    label = "z"
    while label in x.labels:
        label += "'"
    for vec in _distance_vectors(x, d):
        for slot in range(x.n + 1):
            dist = [list(row) + [vec[i]] for i, row in enumerate(x.dist)]
            dist.append(list(vec) + [ExactReal(0)])
            order = list(x.order or ())
            by_rank_pos = slot
            order = [*order[:by_rank_pos], x.n, *order[by_rank_pos:]]
            out.append(
                Space(
                    x.labels + (label,),
                    tuple(tuple(r) for r in dist),
                    tuple(order),
                    d,
                )
            )
            if len(out) > max_count:
                raise BudgetExceeded(f"more than {max_count} extensions")
    return out


def _subset_extensions(m: Space, d: DistanceSet, k: int, source_n: Optional[int] = None):
    """All (subset, extension) pairs over <= k-point subsets drawn from
    the first source_n points of m (all of m when None)."""
    pool = range(m.n if source_n is None else source_n)
    for size in range(0, k + 1):
        for subset in itertools.combinations(pool, size):
            sub = m.induced(subset)
            # subset is sorted by index; align vectors with index order
            for vec in _distance_vectors(sub, d):
                for slot in range(size + 1):
                    yield Extension(subset, vec, slot)


def _realizes(m: Space, ext: Extension, p: int) -> bool:
    if p in ext.subset:
        return False
    for i, s in enumerate(ext.subset):
        if m.dist[p][s] != ext.dists[i]:
            return False
    by_rank = sorted(ext.subset, key=m.rank)
    rank_among = sum(1 for s in by_rank if m.before(s, p))
    return rank_among == ext.slot


def find_realizer(m: Space, ext: Extension) -> Optional[int]:
    for p in range(m.n):
        if _realizes(m, ext, p):
            return p
    return None


def extension_property_check(
    m: Space, d: DistanceSet, k: int, max_pairs: int = 1000000,
    source_n: Optional[int] = None,
) -> ExtensionReport:
    """For every <= k-subset of m (or of its first source_n points) and
    every one-point extension over d, look for a realizing point in m."""
    report = ExtensionReport()
    for ext in _subset_extensions(m, d, k, source_n):
        report.checked += 1
        if report.checked > max_pairs:
            raise BudgetExceeded(f"more than {max_pairs} (subset, extension) pairs")
        if find_realizer(m, ext) is None:
            report.unrealized.append(ext)
    return report


def realize(m: Space, ext: Extension, d: DistanceSet) -> Space:
    """Adjoin a point realizing ext to m: free amalgam of m with the
    extension space over the subset, capped at the fragment's cap, with
    the order extended so the new point lands in its slot."""
    if not ext.subset and m.n > 0:
        raise BuilderError("empty-subset extension is realized by any point")
    if m.n == 0:
        one = Space(("z",), ((ExactReal(0),),), (0,), d)
        return one
    sub = m.induced(ext.subset)
    # extension space: subset points then z
    size = len(ext.subset)
    dist = [list(row) + [ext.dists[i]] for i, row in enumerate(sub.dist)]
    dist.append(list(ext.dists) + [ExactReal(0)])
    ext_space = Space(
        sub.labels + ("z*",),
        tuple(tuple(r) for r in dist),
    )
    overlap = [(s, i) for i, s in enumerate(ext.subset)]
    amal = free_amalgam(m, ext_space, overlap)
    if d.bounded:
        amal = cap_distances(amal, d.cap)
    z = amal.n - 1
    by_rank = sorted(ext.subset, key=m.rank)
    constraints = []
    for r, s in enumerate(by_rank):
        constraints.append((s, BEFORE, z) if r < ext.slot else (z, BEFORE, s))
    ordered = extend_order(amal, m.order, constraints)
    out = ordered.with_delta(d)
    verdict = validate(out)
    if verdict != OK:
        raise BuilderError(f"realized space invalid: {verdict}")
    return out


def saturate(
    m: Space, d: DistanceSet, k: int, max_points: int = 64, max_pairs: int = 1000000,
    source_n: Optional[int] = None,
) -> tuple[Space, ExtensionReport]:
    """Realize every one-point extension of every <= k-subset of the
    ORIGINAL m.  Existing points are reused before new ones are added, so
    re-saturation at the same k adds nothing.  When the point budget runs
    out, the partial result is returned with the skipped extensions
    listed in the report."""
    report = ExtensionReport()
    cur = m
    for ext in _subset_extensions(m, d, k, source_n):
        report.checked += 1
        if report.checked > max_pairs:
            report.unrealized.append(ext)
            continue
        if find_realizer(cur, ext) is not None:
            continue
        if not ext.subset and cur.n > 0:
            continue  # any point realizes the empty extension
        if cur.n + 1 > max_points:
            report.unrealized.append(ext)
            continue
        cur = realize(cur, ext, d)
    return cur, report


def extend_partial_isometry(
    m: Space, p: PartialIsometry, x: int, max_points: int = 64
) -> tuple[Space, PartialIsometry]:
    """One forward back-and-forth step: enlarge p to cover x, growing m
    by at most one point.

    The image must mirror x's distance-and-order profile over the domain.
    If no point of m fits, a fresh one is adjoined by amalgamating a
    one-point extension of the range over the range.
    """
    if not p.is_isometry() or (m.order is not None and not p.order_preserving):
        raise BuilderError("p must be an order-preserving partial isometry")
    dom = p.domain()
    if x in dom:
        raise BuilderError("x already in the domain")
    rng = tuple(sorted(p.image(a) for a in dom))
    dists = tuple(m.dist[x][a] for a in dom)
    # profile over the range, aligned to sorted range indices
    pair_for = {p.image(a): a for a in dom}
    ext_dists = tuple(m.dist[x][pair_for[r]] for r in rng)
    by_rank = sorted(rng, key=lambda r: m.rank(pair_for[r]))
    # slot: the rank x takes among the domain, transported to the range
    dom_by_rank = sorted(dom, key=m.rank)
    slot = sum(1 for a in dom_by_rank if m.before(a, x))
    # order slot is over the range sorted by image rank; p order-preserving
    # makes domain rank order and range rank order agree
    ext = Extension(rng, ext_dists, slot)
    y = find_realizer(m, ext)
    cur = m
    if y is None:
        if m.n + 1 > max_points:
            raise BudgetExceeded("point budget")
        d = m.delta
        if d is None:
            raise BuilderError("space must carry a fragment binding to grow")
        cur = realize(m, ext, d)
        y = cur.n - 1
    p2 = PartialIsometry(cur, p.pairs + ((x, y),))
    if not p2.is_isometry():
        raise AssertionError("extension broke the isometry")
    return cur, p2


def extend_partial_isometry_back(
    m: Space, p: PartialIsometry, y: int, max_points: int = 64
) -> tuple[Space, PartialIsometry]:
    """The symmetric back step: enlarge p so its range covers y."""
    cur, q = extend_partial_isometry(m, p.inverse(), y, max_points)
    return cur, q.inverse()


def density_perturb(
    m: Space,
    pairs,
    eps: ExactReal,
    d: DistanceSet,
    max_points: int = 64,
) -> tuple[Space, list[int]]:
    """Nudge the images of a partial isometry into order-preserving
    position, moving each by exactly the largest fragment value below eps.

    Builds the double space on the current images y_i and their shifted
    copies z_i with d(y_i, z_j) = delta + d(y_i, y_j), orders the z block
    above the y block with the z's in the source order, realizes it over
    m, and returns the new space with the indices of the perturbed
    images.
    """
    pairs = list(pairs)
    pi = PartialIsometry(m, tuple(pairs))
    if not pi.is_isometry():
        raise BuilderError("pairs must form a partial isometry")
    below = [v for v in d.values if v < eps]
    if not below:
        raise NoSmallEnoughDelta(f"no fragment value below {eps}")
    delta = below[-1]
    xs = [a for a, _ in pairs]
    ys = [b for _, b in pairs]
    n = len(pairs)

    zero = ExactReal(0)
    dist = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            dyy = m.dist[ys[i]][ys[j]]
            dist[i][j] = dyy
            dist[n + i][n + j] = dyy
            cross = delta + dyy
            if d.bounded and cross > d.cap:
                cross = d.cap
            if cross not in d:
                raise ZNotInDelta(cross)
            dist[i][n + j] = cross
            dist[n + j][i] = cross
    labels = tuple(f"y{i}" for i in range(n)) + tuple(f"z{i}" for i in range(n))
    # order: y's as in m, all y's below all z's, z's in the x order
    y_by_rank = sorted(range(n), key=lambda i: m.rank(ys[i]))
    z_by_rank = sorted(range(n), key=lambda i: m.rank(xs[i]))
    order = tuple(y_by_rank) + tuple(n + i for i in z_by_rank)
    z_space = Space(labels, tuple(tuple(r) for r in dist), order, d)
    verdict = validate(z_space)
    if verdict != OK:
        raise BuilderError(f"perturbation space invalid: {verdict}")

    if m.n + n > max_points:
        raise BudgetExceeded("point budget")
    overlap = [(ys[i], i) for i in range(n)]
    amal = free_amalgam(m, z_space, overlap)
    if d.bounded:
        amal = cap_distances(amal, d.cap)
    # new z indices follow m's points in amalgam order
    z_idx = list(range(m.n, m.n + n))
    constraints = []
    for i in range(n):
        for j in range(n):
            constraints.append((ys[i], BEFORE, z_idx[j]))
            if i != j and m.before(xs[i], xs[j]):
                constraints.append((z_idx[i], BEFORE, z_idx[j]))
    ordered = extend_order(amal, m.order, constraints)
    out = ordered.with_delta(d)
    verdict = validate(out)
    if verdict != OK:
        raise BuilderError(f"perturbed space invalid: {verdict}")
    return out, z_idx
