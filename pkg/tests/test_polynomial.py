import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracle import four_squares
from octomagic.algebra import cd_basis_table
from octomagic.polynomial import (
    DegreeError,
    P_OFFSET,
    Poly,
    poly_add,
    poly_eq,
    poly_mul,
    poly_neg,
)

a, b, c, d = (Poly.var(i) for i in range(4))
p, q, r, s = (Poly.var(P_OFFSET + i) for i in range(4))


def test_add_examples():
    assert poly_add(a, poly_neg(a)).is_zero()
    assert len(poly_add(a * p, b * q)) == 2
    assert poly_add(a * p + b * q, a * p) == 2 * a * p + b * q


def test_mul_examples():
    assert poly_mul(a + b, a - b) == a * a - b * b
    assert poly_mul(a * p + b * q, a * p + b * q) == a * a * p * p + 2 * a * b * p * q + b * b * q * q
    assert poly_mul(Poly(), a + b).is_zero()


def test_eq_examples():
    assert poly_eq(a * p + b * q, b * q + a * p)
    assert not poly_eq(a * p - b * q, a * p + b * q)
    assert poly_eq(Poly(), Poly({}))
    assert Poly() == 0


def test_degree_bound():
    x = a * a * a * a
    with pytest.raises(DegreeError):
        x * x * a


def test_str_names():
    assert str(a * p - 2 * b * q) == "ap - 2bq"
    assert str(Poly.var(7) * Poly.var(P_OFFSET + 7)) == "hw"
    assert str(Poly()) == "0"


small = st.dictionaries(
    st.lists(st.tuples(st.integers(0, 3), st.integers(1, 1)), max_size=2, unique_by=lambda t: t[0])
    .map(lambda ts: tuple(sorted(ts))),
    st.integers(-3, 3), max_size=4,
).map(Poly)


@settings(max_examples=60, deadline=None)
@given(small, small, small)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + y == y + x


@settings(max_examples=60, deadline=None)
@given(small, small, st.lists(st.integers(-5, 5), min_size=32, max_size=32))
def test_evaluation_homomorphism(x, y, point):
    assert (x * y).evaluate(point) == x.evaluate(point) * y.evaluate(point)
    assert (x + y).evaluate(point) == x.evaluate(point) + y.evaluate(point)


def _symbolic_product(table):
    """Quaternion product of (a,b,c,d) and (p,q,r,s) built from the basis table."""
    out = [Poly() for _ in range(4)]
    xs, ys = [a, b, c, d], [p, q, r, s]
    for i in range(4):
        for j in range(4):
            k, sign = table[i, j]
            out[k] = out[k] + sign * xs[i] * ys[j]
    return out


def test_four_squares_identity_symbolic():
    got = _symbolic_product(cd_basis_table(4))
    assert got == four_squares([a, b, c, d], [p, q, r, s])
    lhs = (a * a + b * b + c * c + d * d) * (p * p + q * q + r * r + s * s)
    rhs = sum((t * t for t in got), Poly())
    assert lhs == rhs


def test_evaluation_against_algebra():
    from octomagic.algebra import Hyper, multiply

    rng = random.Random(5)
    prod = _symbolic_product(cd_basis_table(4))
    for _ in range(20):
        point = [0] * 32
        x = [rng.randint(-9, 9) for _ in range(4)]
        y = [rng.randint(-9, 9) for _ in range(4)]
        point[:4] = x
        point[P_OFFSET:P_OFFSET + 4] = y
        assert [t.evaluate(point) for t in prod] == [int(v) for v in multiply(Hyper(x), Hyper(y))]
