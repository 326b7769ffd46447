import random
from fractions import Fraction

import pytest

from deltaspace.exact import ExactReal
from deltaspace.dvs import make_set
from deltaspace.ramsey import (
    FAILS,
    HOLDS,
    UNKNOWN,
    NotEmbeddable,
    arrow,
    automorphisms,
    is_rigid,
    verify_bad_coloring,
)
from deltaspace.space import make_space, uniform_space
from util import random_space


def n1(v):
    return ExactReal(Fraction(v))


def test_arrow_holds_at_six():
    verdict = arrow(uniform_space(6, n1(1)), uniform_space(3, n1(1)), uniform_space(2, n1(1)), 2)
    assert verdict.status == HOLDS
    assert verdict.copies_a == 15 and verdict.copies_b == 20


def test_arrow_fails_at_five():
    verdict = arrow(uniform_space(5, n1(1)), uniform_space(3, n1(1)), uniform_space(2, n1(1)), 2)
    assert verdict.status == FAILS
    assert verdict.bad_coloring is not None
    assert verify_bad_coloring(
        uniform_space(5, n1(1)), uniform_space(3, n1(1)), uniform_space(2, n1(1)),
        verdict.bad_coloring,
    )


def test_arrow_trivial_when_a_equals_b():
    b = uniform_space(3, n1(1))
    verdict = arrow(uniform_space(4, n1(1)), b, b, 2)
    assert verdict.status == HOLDS


def test_arrow_one_color():
    verdict = arrow(uniform_space(4, n1(1)), uniform_space(3, n1(1)), uniform_space(2, n1(1)), 1)
    assert verdict.status == HOLDS


def test_arrow_monotone_in_c():
    # once the arrow holds it keeps holding in larger ambient spaces
    b = uniform_space(3, n1(1))
    a = uniform_space(2, n1(1))
    for n in (6, 7):
        assert arrow(uniform_space(n, n1(1)), b, a, 2).status == HOLDS


def test_arrow_not_embeddable():
    with pytest.raises(NotEmbeddable):
        arrow(uniform_space(2, n1(1)), uniform_space(3, n1(1)), uniform_space(2, n1(1)), 2)


def test_arrow_budget_unknown():
    verdict = arrow(uniform_space(6, n1(1)), uniform_space(3, n1(1)), uniform_space(2, n1(1)), 2, budget=10)
    assert verdict.status == UNKNOWN


def test_bad_coloring_verifier_rejects_good_coloring():
    c = uniform_space(5, n1(1))
    b = uniform_space(3, n1(1))
    a = uniform_space(2, n1(1))
    from deltaspace.space import copies_of
    constant = {t: 0 for t in copies_of(c, a)}
    assert not verify_bad_coloring(c, b, a, constant)


def test_ordered_spaces_are_rigid():
    rng = random.Random(61)
    d = make_set([n1(1), n1(2), n1(3)], cap=n1(3))
    for _ in range(40):
        x = random_space(rng, rng.randint(1, 6), d)
        assert is_rigid(x)
        assert automorphisms(x) == [tuple(range(x.n))]


def test_unordered_uniform_pair_not_rigid():
    assert not is_rigid(uniform_space(2, n1(1), ordered=False))
    assert not is_rigid(uniform_space(3, n1(1), ordered=False))


def test_unordered_scalene_triangle_rigid():
    x = make_space("abc", {(0, 1): n1(2), (1, 2): n1(3), (0, 2): n1(4)})
    assert is_rigid(x)
