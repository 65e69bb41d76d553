from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from gammaflag.analysis import random_flag_building_set
from gammaflag.oracle import gamma_oracle
from gammaflag.ordering import build_prefix_families, find_flag_ordering
from gammaflag.polyvec import (
    CoeffVector,
    DegreeTooHigh,
    NotSymmetric,
    f_to_h,
    format_vector,
    gamma_to_h,
    gamma_via_volodin,
    h_to_f,
    h_to_gamma,
    parse_vector,
    poly_add,
    poly_mul,
    poly_shift_mul_t,
)
from gammaflag.setcore import NotFlag, contraction, from_masks, make_building_set, named_building_set, restriction


def test_coeffvector_equality_ignores_trailing_zeros():
    assert CoeffVector([1, 2, 0, 0]) == CoeffVector([1, 2])
    assert CoeffVector([1, 2]) == (1, 2)
    assert hash(CoeffVector([1, 2, 0])) == hash(CoeffVector([1, 2]))
    assert CoeffVector([1, 5])[7] == 0


def test_vector_text():
    assert format_vector(CoeffVector([1, 22, 16])) == "(1, 22, 16)"
    for text in ("(1, 22, 16)", "1,22,16", "1 22 16", "[1,22,16]"):
        assert parse_vector(text) == (1, 22, 16)
    with pytest.raises(ValueError):
        parse_vector("()")
    with pytest.raises(ValueError):
        parse_vector("1, x")


def test_polynomial_arithmetic():
    assert poly_mul([1, 1], [1, 1]) == (1, 2, 1)
    assert poly_add([1, 2], [0, 0, 3]) == (1, 2, 3)
    assert poly_shift_mul_t([1, 2]) == (0, 1, 2)


def test_square_transform():
    # boundary of the square: 4 vertices, 4 edges; h = (1, 2, 1); gamma = (1)
    h = f_to_h([1, 4, 4], 2)
    assert h == (1, 2, 1)
    assert h_to_gamma(h, 2) == (1,)


def test_pentagon_transform():
    h = f_to_h([1, 5, 5], 2)
    assert h == (1, 3, 1)
    assert h_to_gamma(h) == (1, 1)


def test_transform_errors():
    with pytest.raises(DegreeTooHigh):
        f_to_h([1, 2, 3], 1)
    with pytest.raises(NotSymmetric):
        h_to_gamma([1, 2, 3])
    with pytest.raises(DegreeTooHigh):
        gamma_to_h([1, 0, 4], 3)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8))
def test_f_h_round_trip(f):
    d = len(f) - 1
    assert h_to_f(f_to_h(f, d), d) == CoeffVector(f)


@given(st.integers(0, 9), st.data())
def test_gamma_h_round_trip(d, data):
    gamma = data.draw(st.lists(st.integers(-20, 20), min_size=1, max_size=d // 2 + 1))
    h = gamma_to_h(gamma, d)
    assert all(h[i] == h[d - i] for i in range(d + 1))
    assert h_to_gamma(h, d) == CoeffVector(gamma)


@pytest.mark.parametrize(
    "sel,expected",
    [("kn:3", (1, 2)), ("kn:4", (1, 8)), ("kn:5", (1, 22, 16)), ("path:4", (1, 3)), ("cyc:5", (1, 12, 6))],
)
def test_volodin_known_values(sel, expected):
    B = named_building_set(sel)
    assert gamma_via_volodin(B) == expected
    assert gamma_via_volodin(B, form="post") == expected


def test_volodin_rejects_non_flag():
    with pytest.raises(NotFlag):
        gamma_via_volodin(make_building_set(3, [[1, 2, 3]]))
    with pytest.raises(ValueError):
        gamma_via_volodin(named_building_set("kn:3"), form="middle")


def test_volodin_disconnected_is_product():
    B = make_building_set(5, [[1, 2], [3, 4], [4, 5], [3, 4, 5]])
    assert gamma_via_volodin(B) == poly_mul(
        gamma_via_volodin(restriction(B, [1, 2])), gamma_via_volodin(restriction(B, [3, 4, 5]))
    )


def _fold_with_oracle(O, post: bool) -> CoeffVector:
    """The add-one recursion over an arbitrary ordering, pieces from the oracle."""
    B = O.B
    g = CoeffVector((1,))
    for before, b in zip(build_prefix_families(O), O.order):
        cur = before | {int(b)} if post else before
        Bj = from_masks(B.n, B.ground, cur)
        piece = poly_mul(gamma_oracle(restriction(Bj, b)), gamma_oracle(contraction(Bj, b)))
        g = poly_add(g, poly_shift_mul_t(piece))
    return g


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000), st.integers(3, 6), st.booleans())
def test_recursion_is_order_independent(seed, n, post):
    rng = random.Random(seed)
    B = random_flag_building_set(n, rng)
    O = find_flag_ordering(B, strategy="random", seed=seed)
    assert _fold_with_oracle(O, post) == gamma_oracle(B) == gamma_via_volodin(B)
