from fractions import Fraction

import cmath
import math

from hypothesis import given, strategies as st

from equivect.cyclotomic import Cyclotomic, cyclotomic_poly, ONE, ZERO


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity():
    for n in range(1, 13):
        z = Cyclotomic.zeta(n)
        p = ONE
        for _ in range(n):
            p = p * z
        assert p == 1
        assert sum((Cyclotomic.zeta(n, k) for k in range(n)), ZERO) == (1 if n == 1 else 0)


def test_mixed_orders():
    # zeta_4 = zeta_12^3
    assert Cyclotomic.zeta(4) == Cyclotomic.zeta(12, 3)
    assert Cyclotomic.zeta(3) + Cyclotomic.zeta(3, 2) == -1
    # 2cos(2pi/3) lives in Q
    assert (Cyclotomic.zeta(3) + Cyclotomic.zeta(3).conj()).rational_value() == -1


def test_parse_roundtrip():
    x = Cyclotomic(5, [Fraction(1, 2), 3, 0, -1])
    assert Cyclotomic.parse(str(x)) == x


small = st.integers(-3, 3)


@st.composite
def elements(draw):
    n = draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12]))
    coeffs = draw(st.lists(small, min_size=1, max_size=n))
    return Cyclotomic(n, coeffs)


@given(elements(), elements(), elements())
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x * y).conj() == x.conj() * y.conj()


@given(elements(), elements())
def test_matches_complex(x, y):
    assert cmath.isclose((x * y).to_complex(), x.to_complex() * y.to_complex(), abs_tol=1e-9)
    assert cmath.isclose(x.conj().to_complex(), x.to_complex().conjugate(), abs_tol=1e-9)


def test_root_index():
    assert Cyclotomic.zeta(6, 5).root_index(6) == 5
    assert Cyclotomic.rational(2).root_index(6) is None
