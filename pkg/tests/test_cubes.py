import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from operadkit import perm as P
from operadkit.errors import NonAxisAligned
from operadkit.cubes import (
    ROTATION_345,
    Affine,
    CubeElement,
    Cubes,
    Disc,
    DiscElement,
    Discs,
    SignedPerm,
    block_swap,
    center_eval,
    conjugate_about_center,
    cube_as_map,
    cube_membership,
    disc_conjugate,
    gamma_compose,
    in_configuration_space,
    lambda_geom,
    negative_facts,
    random_cube_element,
    random_cube_instances,
    random_disc_element,
    random_disc_instances,
    suspend,
)
from operadkit.operad import lex_sequences

HALF = Q(1, 2)


def cube(*maps):
    return tuple(Affine(a, b) for a, b in maps)


def el(n, *cubes):
    return CubeElement(n, cubes)


def test_composition_example():
    g = el(1, cube((HALF, 0)), cube((HALF, HALF)))
    f1 = el(1, cube((HALF, Q(1, 4))))
    f2 = Cubes(1).identity
    out = gamma_compose(g, [f1, f2])
    assert out == el(1, cube((Q(1, 4), Q(1, 8))), cube((HALF, HALF)))


def test_unit_laws():
    rng = random.Random(5)
    for n in (1, 2, 3):
        O = Cubes(n)
        for j in range(4):
            f = random_cube_element(rng, n, j)
            assert O.gamma(O.identity, [f]) == f
            assert O.gamma(f, [O.identity] * j) == f


def test_pointwise_oracle_example():
    rng = random.Random(11)
    g = random_cube_element(rng, 2, 2)
    fs = [random_cube_element(rng, 2, 2), random_cube_element(rng, 2, 1)]
    out = gamma_compose(g, fs)
    points = [(Q(rng.randint(1, 15), 16), Q(rng.randint(1, 15), 16)) for _ in range(10)]
    # independent: evaluate the inner map, then the outer one, coordinate by coordinate
    expected = [[tuple(o(l(x)) for o, l, x in zip(outer, inner, p)) for p in points]
                for outer, f in zip(g.cubes, fs) for inner in f.cubes]
    got = [[tuple(l(x) for l, x in zip(c, p)) for p in points] for c in out.cubes]
    assert got == expected


def test_overlap_and_bounds_are_rejected():
    with pytest.raises(ValueError):
        el(1, cube((HALF, 0)), cube((HALF, Q(1, 4))))
    with pytest.raises(ValueError):
        el(1, cube((HALF, Q(3, 4))))
    # touching boundaries are fine: images are open
    el(1, cube((HALF, 0)), cube((HALF, HALF)))


def test_suspension():
    assert suspend(el(1, cube((HALF, 0)))) == el(2, cube((HALF, 0), (1, 0)))
    f = el(1, cube((HALF, 0)), cube((Q(1, 4), Q(3, 4))))
    assert suspend(suspend(f)) == el(3, *(c + (Affine(1, 0), Affine(1, 0)) for c in f.cubes))


def test_centers():
    assert center_eval(el(1, cube((HALF, 0)))) == ((Q(1, 4),),)
    assert center_eval(el(1, cube((HALF, 0)), cube((HALF, HALF)))) == ((Q(1, 4),), (Q(3, 4),))
    assert not in_configuration_space(((HALF,), (HALF,)), 1)


def test_disc_conjugation_example():
    f = DiscElement(2, (Disc(HALF, (Q(1, 4), 0)),))
    assert disc_conjugate(SignedPerm.identity(2), f) == f
    swapped = disc_conjugate(SignedPerm((2, 1), (1, 1)), f)
    assert swapped == DiscElement(2, (Disc(HALF, (0, Q(1, 4))),))


def test_isometry_from_matrix():
    g = SignedPerm.from_matrix([[0, -1], [1, 0]])
    assert g.apply((1, 2)) == (-2, 1)
    assert SignedPerm.from_matrix(g.matrix()) == g
    with pytest.raises(NonAxisAligned):
        SignedPerm.from_matrix(ROTATION_345)


def test_lambda_examples():
    f = el(1, cube((HALF, 0)), cube((Q(1, 4), Q(3, 4))))
    assert lambda_geom(SignedPerm.identity(1), [f]) == f
    h = el(1, cube((Q(1, 3), Q(1, 3))))
    out = lambda_geom(SignedPerm.identity(2), [f, h])
    assert out.cubes == tuple(f.cubes[q - 1] + h.cubes[0] for q in (1, 2))
    four = lambda_geom(SignedPerm.identity(2), [f, f])
    assert four.cubes == tuple(f.cubes[a - 1] + f.cubes[b - 1] for a, b in lex_sequences([2, 2]))
    with pytest.raises(NonAxisAligned):
        lambda_geom(ROTATION_345, [f, h])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 2), st.integers(1, 2), st.integers(0, 3),
       st.integers(0, 3))
def test_lambda_is_equivariant_under_block_swap(seed, n1, n2, j1, j2):
    rng = random.Random(seed)
    f1, f2 = random_cube_element(rng, n1, j1), random_cube_element(rng, n2, j2)
    direct = lambda_geom(SignedPerm.identity(n1 + n2), [f1, f2])
    swapped = lambda_geom(block_swap(n1, n2), [f2, f1])
    # output (q2, q1) of the swapped version is output (q1, q2) of the direct one
    index = {Q: i for i, Q in enumerate(lex_sequences([j1, j2]))}
    order = [index[(q1, q2)] + 1 for q2, q1 in lex_sequences([j2, j1])]
    assert swapped.cubes == tuple(direct.cubes[i - 1] for i in order)
    if order:
        assert Cubes(n1 + n2).act(direct, tuple(order)) == swapped


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(0, 3))
def test_suspension_commutes_with_actions(seed, n, j):
    rng = random.Random(seed)
    f = random_cube_element(rng, n, j)
    s = tuple(rng.sample(range(1, j + 1), j))
    assert suspend(Cubes(n).act(f, s)) == Cubes(n + 1).act(suspend(f), s)
    assert suspend(Cubes(n).identity) == Cubes(n + 1).identity
    t = P.inverse(s)
    assert Cubes(n).act(Cubes(n).act(f, s), t) == f


def test_random_instances():
    report = random_cube_instances(count=150, seed=3)
    assert report.status == "pass"
    assert report.checked == 150 * 7


def test_random_discs():
    assert random_disc_instances(count=100, seed=2).status == "pass"
    rng = random.Random(0)
    d = random_disc_element(rng, 2, 3)
    g = SignedPerm((2, 1), (-1, 1))
    assert disc_conjugate(g, d).arity == 3
    assert Discs(2).gamma(Discs(2).identity, [d]) == d


def test_negative_facts():
    report = negative_facts()
    assert report.status == "pass"
    assert report.checked == 3


def test_rotated_square_stays_axis_aligned():
    # a square has scalar linear part, which every rotation fixes
    square = cube((HALF, 0), (HALF, 0))
    A = conjugate_about_center(ROTATION_345, cube_as_map(square)).A
    assert A == ((HALF, 0), (0, HALF))
    rect = cube((HALF, 0), (Q(1, 4), 0))
    member, reason = cube_membership(conjugate_about_center(ROTATION_345, cube_as_map(rect)))
    assert (member, reason) == (False, "not axis-aligned")


def test_json_round_trip():
    f = el(2, cube((HALF, 0), (Q(1, 3), Q(1, 3))))
    assert CubeElement.from_json(f.to_json()) == f
    assert f.to_json()["cubes"][0][1] == {"a": "1/3", "b": "1/3"}
