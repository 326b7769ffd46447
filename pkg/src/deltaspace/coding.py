"""Sequence and model codings of distance fragments, at prefix scale.

The existential quantifiers of the sequence relations range over
permutations of the prefix index set only; every report from this module
carries that "prefix semantics" caveat.  Clauses that quantify past the
prefix horizon (infinitude of zeros, existence of far-away sums) are
reported as not falsifiable rather than silently asserted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dvs import DistanceSet, delta_triangle, make_set
from .exact import ExactReal, MixedRadicands, parse, rational_between


class CodingError(Exception):
    pass


class BudgetExceeded(CodingError):
    pass


SATISFIED = "Satisfied"
VIOLATED = "Violated"
NOT_FALSIFIABLE = "NotFalsifiable"

PREFIX_SEMANTICS = "prefix semantics: quantifiers restricted to the prefix index set"


@dataclass(frozen=True)
class ClauseStatus:
    status: str
    witness: Optional[tuple] = None


@dataclass(frozen=True)
class DvsCode:
    prefix: tuple[ExactReal, ...]
    bounded: bool = False

    def __post_init__(self):
        for v in self.prefix:
            if v.sign() < 0:
                raise CodingError("entries must be >= 0")

    def positives(self) -> list[ExactReal]:
        return [v for v in self.prefix if v.sign() > 0]

    def zero_indices(self) -> list[int]:
        return [i for i, v in enumerate(self.prefix) if v.is_zero()]

    def to_json(self) -> dict:
        return {"prefix": [str(v) for v in self.prefix], "bounded": self.bounded}

    @staticmethod
    def from_json(obj: dict) -> "DvsCode":
        return DvsCode(tuple(parse(v) for v in obj["prefix"]), bool(obj.get("bounded", False)))


def validate_code(code: DvsCode) -> dict[str, ClauseStatus]:
    """Clause-by-clause report: (a) infinitely many zeros, (b) positive
    entries pairwise distinct, (c) bounded sup attained, (d) sums below
    the sup appear."""
    report = {}
    # (a) infinitude is never falsifiable on a finite prefix
    report["a"] = ClauseStatus(NOT_FALSIFIABLE)
    # (b)
    b_status = ClauseStatus(SATISFIED)
    pos = [(i, v) for i, v in enumerate(code.prefix) if v.sign() > 0]
    for (i, x), (j, y) in itertools.combinations(pos, 2):
        if x == y:
            b_status = ClauseStatus(VIOLATED, (i, j))
            break
    report["b"] = b_status
    # (c) a finite prefix always attains its max; the claim about the
    # full sequence is only testable when the code is flagged bounded
    if code.bounded and pos:
        report["c"] = ClauseStatus(SATISFIED, (max(range(len(code.prefix)), key=lambda i: code.prefix[i]),))
    else:
        report["c"] = ClauseStatus(NOT_FALSIFIABLE)
    # (d)
    d_status = ClauseStatus(SATISFIED)
    values = [v for _, v in pos]
    sup = max(values) if values else None
    horizon_hit = False
    for x, y in itertools.combinations_with_replacement(values, 2):
        s = x + y
        if sup is not None and s < sup:
            if not any(s == v for v in values):
                d_status = ClauseStatus(VIOLATED, (x, y))
                break
        else:
            horizon_hit = True
    if d_status.status == SATISFIED and (horizon_hit and not code.bounded):
        d_status = ClauseStatus(NOT_FALSIFIABLE)
    report["d"] = d_status
    return report


def encode_dvs(d: DistanceSet) -> DvsCode:
    """Zero-interleaved enumeration: a zero placeholder before each value,
    values in sorted order."""
    prefix = []
    for v in d.values:
        prefix.append(ExactReal(0))
        prefix.append(v)
    return DvsCode(tuple(prefix), d.bounded)


def decode_dvs(code: DvsCode, cap: Optional[ExactReal] = None) -> DistanceSet:
    """The positive entries as a sorted fragment (round trip of encode_dvs)."""
    return make_set(code.positives(), cap)


def sim_check(c: DvsCode, d: DvsCode) -> Optional[tuple[tuple[int, ...], ExactReal]]:
    """A prefix permutation g and ratio r with d[g(i)] = r * c[i], or None.

    The candidate ratio is forced (min positive to min positive); the
    permutation on positive entries is then forced by value matching, and
    zeros map to zeros in index order.
    """
    if len(c.prefix) != len(d.prefix):
        return None
    cz, dz = c.zero_indices(), d.zero_indices()
    if len(cz) != len(dz):
        return None
    cp = [(i, v) for i, v in enumerate(c.prefix) if v.sign() > 0]
    dp = [(i, v) for i, v in enumerate(d.prefix) if v.sign() > 0]
    if not cp:
        return tuple(range(len(c.prefix))), ExactReal(1)
    g = [-1] * len(c.prefix)
    for i, j in zip(cz, dz):
        g[i] = j
    try:
        r = min(v for _, v in dp) / min(v for _, v in cp)
        for i, v in cp:
            target = v * r
            matches = [j for j, w in dp if w == target]
            if not matches:
                return None
            g[i] = matches[0]
    except MixedRadicands:
        return None  # ratio not representable in one quadratic field
    if sorted(g) != list(range(len(c.prefix))):
        return None
    return tuple(g), r


def _triple_ok(a: ExactReal, b: ExactReal, c: ExactReal) -> bool:
    return abs(b - c) <= a <= b + c


def approx_check(c: DvsCode, d: DvsCode, max_nodes: int = 2000000) -> Optional[tuple[int, ...]]:
    """A prefix permutation preserving the zero pattern and the triangle
    pattern in both directions, or None."""
    n = len(c.prefix)
    if n != len(d.prefix):
        return None
    cz, dz = c.zero_indices(), d.zero_indices()
    if len(cz) != len(dz):
        return None
    cp = [i for i in range(n) if c.prefix[i].sign() > 0]
    dp = [i for i in range(n) if d.prefix[i].sign() > 0]

    nodes = 0

    def incremental_ok(assign: dict, new: int) -> bool:
        idx = list(assign)  # includes new: triples may repeat it
        for j, k in itertools.product(idx, repeat=2):
            for tri in ((new, j, k), (j, new, k), (j, k, new)):
                left = _triple_ok(*(c.prefix[t] for t in tri))
                right = _triple_ok(*(d.prefix[assign[t]] for t in tri))
                if left != right:
                    return False
        return True

    assign: dict[int, int] = {}
    used = set()

    def extend(pos: int) -> bool:
        nonlocal nodes
        if pos == len(cp):
            return True
        i = cp[pos]
        for j in dp:
            if j in used:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceeded("permutation search budget")
            assign[i] = j
            if incremental_ok(assign, i):
                used.add(j)
                if extend(pos + 1):
                    return True
                used.discard(j)
            del assign[i]
        return False

    if not extend(0):
        return None
    g = [-1] * n
    for i, j in zip(cz, dz):
        g[i] = j
    for i, j in assign.items():
        g[i] = j
    return tuple(g)


@dataclass(frozen=True)
class TriangleStructure:
    universe: tuple[ExactReal, ...]
    relation: frozenset  # ordered index triples (i, j, k)

    def incidence(self, i: int) -> int:
        return sum(1 for t in self.relation if i in t)


def triangle_structure(d: DistanceSet) -> TriangleStructure:
    """The ternary structure whose relation holds exactly on the triangle
    triples of the fragment."""
    vals = d.values
    rel = set()
    for i, j, k in itertools.product(range(len(vals)), repeat=3):
        if delta_triangle(vals[i], vals[j], vals[k], d):
            rel.add((i, j, k))
    return TriangleStructure(vals, frozenset(rel))


def ts_isomorphic(s: TriangleStructure, t: TriangleStructure, max_nodes: int = 2000000) -> Optional[tuple[int, ...]]:
    """A relation-preserving bijection, by backtracking with
    triple-incidence pruning."""
    n = len(s.universe)
    if n != len(t.universe):
        return None
    inc_s = [s.incidence(i) for i in range(n)]
    inc_t = [t.incidence(i) for i in range(n)]
    if sorted(inc_s) != sorted(inc_t):
        return None
    m = [-1] * n
    used = [False] * n
    nodes = 0

    def check_new(i: int) -> bool:
        idx = [x for x in range(i + 1)]
        for a, b, c in itertools.product(idx, repeat=3):
            if i not in (a, b, c):
                continue
            if ((a, b, c) in s.relation) != ((m[a], m[b], m[c]) in t.relation):
                return False
        return True

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        for j in range(n):
            if used[j] or inc_s[i] != inc_t[j]:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceeded("isomorphism search budget")
            m[i] = j
            used[j] = True
            if check_new(i) and extend(i + 1):
                return True
            m[i] = -1
            used[j] = False
        return False

    return tuple(m) if extend(0) else None


# ---------------------------------------------------------------------------
# model coding


@dataclass
class EncodedModel:
    universe: tuple[ExactReal, ...]  # 0 first, then the fragment sorted
    c: ExactReal  # the sup constant; 0 when unbounded
    plus: dict = field(default_factory=dict)  # (i, j) -> k for genuine sums
    rq: dict = field(default_factory=dict)  # Fraction q -> frozenset of (i, j)

    def nonzero(self) -> list[int]:
        return list(range(1, len(self.universe)))

    def holds(self, q: Fraction, i: int, j: int) -> bool:
        return (i, j) in self.rq[q]

    def to_json(self) -> dict:
        return {
            "universe": [str(v) for v in self.universe],
            "c": str(self.c),
            "plus": {f"{i},{j}": k for (i, j), k in sorted(self.plus.items())},
            "rq": {
                f"{q.numerator}/{q.denominator}": sorted(list(pairs))
                for q, pairs in sorted(self.rq.items())
            },
        }


def farey(order: int) -> list[Fraction]:
    """All reduced fractions p/q with 1 <= p, q <= order."""
    out = set()
    for q in range(1, order + 1):
        for p in range(1, order + 1):
            out.add(Fraction(p, q))
    return sorted(out)


def default_sample_q(d: DistanceSet, farey_order: int = 8) -> list[Fraction]:
    """Farey fractions plus every rational pairwise ratio of the fragment,
    plus a rational separator between each pair of adjacent distinct
    ratios (so that irrational cuts are still told apart)."""
    qs = set(farey(farey_order))
    ratios = set()
    for x in d.values:
        for y in d.values:
            r = x / y
            ratios.add(r)
            if r.is_rational:
                qs.add(Fraction(r.a))
    ordered = sorted(ratios)
    for lo, hi in zip(ordered, ordered[1:]):
        qs.add(rational_between(lo, hi))
    return sorted(qs)


def model_encode(d: DistanceSet, sample_q=None) -> EncodedModel:
    """The fragment as a first-order structure: 0, the sup constant, a
    partial addition table, and for each sample rational q the exact
    table of pairs with q < x/y."""
    if sample_q is None:
        sample_q = default_sample_q(d)
    sample_q = sorted(set(Fraction(q) for q in sample_q))
    if not sample_q:
        raise CodingError("sample_q must be nonempty")
    universe = (ExactReal(0),) + d.values
    c = d.cap if d.bounded else ExactReal(0)
    model = EncodedModel(universe, c)
    for i, x in enumerate(universe):
        for j, y in enumerate(universe):
            if i == 0 or j == 0:
                continue
            s = x + y
            for k, z in enumerate(universe):
                if z == s:
                    model.plus[(i, j)] = k
    for q in sample_q:
        pairs = set()
        for i in model.nonzero():
            for j in model.nonzero():
                if universe[i] > universe[j] * q:  # q < x/y
                    pairs.add((i, j))
        model.rq[q] = frozenset(pairs)
    return model


def check_theory_T(model: EncodedModel) -> dict[str, ClauseStatus]:
    """Clause-by-clause validation of the model against the finite sample.

    Clauses (1)-(6) are checked exhaustively over universe x sample;
    clause (6) reports a violation only when one is provable from the
    finite tables.  Clause (7) is existential over the infinite set and
    is reported with a witness or as not falsifiable.
    """
    report = {}
    qs = sorted(model.rq)
    nz = model.nonzero()
    u = model.universe

    # (1) nothing relates to 0
    status = ClauseStatus(SATISFIED)
    for q in qs:
        for i, j in model.rq[q]:
            if i == 0 or j == 0:
                status = ClauseStatus(VIOLATED, (q, i, j))
    report["1"] = status

    # (2) cuts are downward closed within the sample; the cut at (x, x) is
    # exactly {q < 1}
    status = ClauseStatus(SATISFIED)
    for i in nz:
        for j in nz:
            cut = [q for q in qs if model.holds(q, i, j)]
            for q1 in qs:
                if cut and q1 < max(cut) and not model.holds(q1, i, j):
                    status = ClauseStatus(VIOLATED, (q1, i, j))
            if len(cut) == len(qs):
                status = ClauseStatus(VIOLATED, ("full cut", i, j))
        for q in qs:
            if model.holds(q, i, i) != (q < 1):
                status = ClauseStatus(VIOLATED, ("unit cut", q, i))
    report["2"] = status

    # (3) distinct elements give distinct cuts against every y
    status = ClauseStatus(SATISFIED)
    for i, i2 in itertools.combinations(nz, 2):
        for j in nz:
            if all(model.holds(q, i, j) == model.holds(q, i2, j) for q in qs):
                status = ClauseStatus(VIOLATED, (i, i2, j))
    report["3"] = status

    # (4) multiplicativity along sample products
    status = ClauseStatus(SATISFIED)
    products = [(p, q) for p in qs for q in qs if p * q in model.rq]
    for p, q in products:
        pq = p * q
        for i in nz:
            for j in nz:
                for k in nz:
                    rp, rq_ = model.holds(p, i, j), model.holds(q, j, k)
                    rpq = model.holds(pq, i, k)
                    if rp and rq_ and not rpq:
                        status = ClauseStatus(VIOLATED, (p, q, i, j, k))
                    if not rp and not rq_ and rpq:
                        status = ClauseStatus(VIOLATED, (p, q, i, j, k))
    report["4"] = status

    # (5) the order is linear with 0 least and agrees with R_1
    status = ClauseStatus(SATISFIED)
    one = Fraction(1)
    if one in model.rq:
        for i in nz:
            for j in nz:
                le = u[i] <= u[j]
                via_r = (i == j) or model.holds(one, j, i)
                if le != via_r:
                    status = ClauseStatus(VIOLATED, (i, j))
    else:
        status = ClauseStatus(NOT_FALSIFIABLE)
    report["5"] = status

    # (6) additivity of cuts: only provable violations are reported
    status = ClauseStatus(SATISFIED)
    for (i, i2), k in model.plus.items():
        for j in nz:
            for q in qs:
                # any sample split q = q1 + q2 with both parts in the cuts
                # forces R_q(x+x', y)
                forced = any(
                    model.holds(q1, i, j) and (q - q1) in model.rq and model.holds(q - q1, i2, j)
                    for q1 in qs
                    if q1 < q
                )
                if forced and not model.holds(q, k, j):
                    status = ClauseStatus(VIOLATED, (q, i, i2, j))
    report["6"] = status

    # (7) arbitrarily small elements exist
    small_witness = None
    for q in qs:
        found = None
        for i in nz:
            for x in nz:
                if not model.holds(q, x, i):
                    found = (q, x, i)
                    break
            if found:
                break
        if found:
            small_witness = found
    if small_witness:
        report["7"] = ClauseStatus(SATISFIED, small_witness)
    else:
        report["7"] = ClauseStatus(NOT_FALSIFIABLE)
    return report
