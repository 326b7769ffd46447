import random
from fractions import Fraction

import pytest

from deltaspace.dvs import make_set
from deltaspace.exact import ExactReal
from deltaspace.limitbuilder import (
    Extension,
    NoSmallEnoughDelta,
    density_perturb,
    extend_partial_isometry,
    extend_partial_isometry_back,
    extension_property_check,
    one_point_extensions,
    realize,
    saturate,
)
from deltaspace.space import OK, PartialIsometry, Space, make_space, uniform_space, validate
from util import closed_fragment, doubled_space, random_space


def n1(v):
    return ExactReal(Fraction(v))


D12 = make_set([n1(1), n1(2)], cap=n1(2), closed=True)


def test_one_point_extensions_of_empty():
    empty = Space((), (), (), D12)
    outs = one_point_extensions(empty, D12)
    assert len(outs) == 1
    assert outs[0].n == 1


def test_one_point_extensions_single_point():
    x = uniform_space(1, n1(1), delta=D12)
    outs = one_point_extensions(x, D12)
    assert len(outs) == 4  # 2 distances x 2 order slots
    for out in outs:
        assert validate(out) == OK


def test_one_point_extensions_triangle_filter():
    # two points at distance 2, candidate distances only {1}: the single
    # admissible vector is (1, 1), since |1-1| <= 2 <= 1+1
    d1 = make_set([n1(1)], cap=n1(1), closed=True)
    x = uniform_space(2, n1(2))
    outs = one_point_extensions(x, d1)
    assert len(outs) == 3  # the single vector (1, 1) in each of 3 slots


def test_extension_check_unrealized():
    m = uniform_space(1, n1(1), delta=make_set([n1(1)], cap=n1(1), closed=True))
    report = extension_property_check(m, m.delta, 1)
    assert len(report.unrealized) == 2  # distance 1, order slots 0 and 1


def test_extension_check_k0_nonempty():
    m = uniform_space(2, n1(1))
    report = extension_property_check(m, D12, 0)
    assert report.empty


def test_realize_adds_matching_point():
    m = uniform_space(2, n1(1), delta=D12)
    ext = Extension((0, 1), (n1(1), n1(2)), 1)
    out = realize(m, ext, D12)
    assert out.n == 3
    assert out.dist[2][0] == n1(1) and out.dist[2][1] == n1(2)
    by_rank = sorted((0, 1), key=out.rank)
    assert sum(1 for s in by_rank if out.before(s, 2)) == 1
    assert validate(out) == OK


def test_saturate_k1_single_point():
    m = uniform_space(1, n1(1), delta=D12)
    sat, report = saturate(m, D12, 1)
    assert report.empty
    check = extension_property_check(sat, D12, 1, source_n=1)
    assert check.empty


def test_saturate_k2_and_idempotence():
    m = uniform_space(1, n1(1), delta=D12)
    sat, report = saturate(m, D12, 2)
    assert report.empty
    assert extension_property_check(sat, D12, 2, source_n=m.n).empty
    again, report2 = saturate(sat, D12, 2, source_n=m.n)
    assert again.n == sat.n
    assert report2.empty


def test_saturate_from_empty_k0():
    empty = Space((), (), (), D12)
    sat, report = saturate(empty, D12, 0)
    assert sat.n == 1
    assert report.empty


def test_extend_isometry_identity_profile():
    rng = random.Random(51)
    m = random_space(rng, 4, D12)
    p = PartialIsometry(m, ((0, 0), (1, 1)))
    m2, p2 = extend_partial_isometry(m, p, 2)
    assert p2.image(2) is not None
    assert p2.is_isometry() and p2.order_preserving
    assert m2.n == m.n  # some existing point realizes the profile


def test_extend_isometry_adds_point():
    m = make_space("ab", {(0, 1): n1(1)}, order=(0, 1), delta=D12)
    p = PartialIsometry(m, ((0, 1),))
    m2, p2 = extend_partial_isometry(m, p, 1)
    # the image must sit above point 1 at distance 1; no such point exists
    assert m2.n == 3
    y = p2.image(1)
    assert m2.dist[1][y] == n1(1)
    assert m2.before(1, y)
    assert p2.is_isometry() and p2.order_preserving


def test_extend_isometry_back_step():
    m = make_space("ab", {(0, 1): n1(1)}, order=(0, 1), delta=D12)
    p = PartialIsometry(m, ((0, 1),))
    m2, p2 = extend_partial_isometry_back(m, p, 0)
    assert 0 in [q for _, q in p2.pairs]
    assert p2.is_isometry() and p2.order_preserving


def test_extend_isometry_random_battery():
    rng = random.Random(53)
    d = closed_fragment([n1(1)], n1(3))
    for _ in range(25):
        m, pairs = doubled_space(rng, rng.randint(2, 3), d)
        p = PartialIsometry(m, pairs)
        assert p.is_isometry() and p.order_preserving
        base_dist = m.dist
        cur, q = m, p
        for _ in range(2):
            candidates = [x for x in range(cur.n) if x not in q.domain()]
            if not candidates:
                break
            cur, q = extend_partial_isometry(cur, q, rng.choice(candidates))
            assert q.is_isometry() and q.order_preserving
        # the original distances never change
        for i in range(m.n):
            for j in range(m.n):
                assert cur.dist[i][j] == base_dist[i][j]


def test_density_perturb_single_pair():
    d = closed_fragment([n1(Fraction(1, 4))], n1(4))
    m = uniform_space(2, n1(1), delta=d)
    out, images = density_perturb(m, [(0, 1)], n1(Fraction(1, 2)), d)
    (y_new,) = images
    assert out.dist[1][y_new] == n1(Fraction(1, 4))  # exactly delta
    assert validate(out) == OK


def test_density_perturb_requires_small_delta():
    d = make_set([n1(1), n1(2)], cap=n1(2), closed=True)
    m = uniform_space(2, n1(1), delta=d)
    with pytest.raises(NoSmallEnoughDelta):
        density_perturb(m, [(0, 1)], n1(1), d)


def test_density_perturb_two_pairs():
    d = closed_fragment([n1(Fraction(1, 4))], n1(4))
    rng = random.Random(57)
    m, pairs = doubled_space(rng, 2, d)
    out, images = density_perturb(m, list(pairs), n1(Fraction(1, 2)), d)
    delta = n1(Fraction(1, 4))
    xs = [a for a, _ in pairs]
    ys = [b for _, b in pairs]
    for i in range(2):
        assert out.dist[ys[i]][images[i]] == delta
    for i in range(2):
        for j in range(2):
            assert out.dist[images[i]][images[j]] == m.dist[xs[i]][xs[j]]
            if i != j:
                assert out.before(images[i], images[j]) == m.before(xs[i], xs[j])
    assert validate(out) == OK
