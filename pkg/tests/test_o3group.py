from fractions import Fraction
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from equivect.errors import AmbientMismatch, IllegalFamilyParameter, NotASubgroup, ParseError, UnknownPointLabel
from equivect.o3group import (
    AXIAL_FAMILIES,
    AXIAL_ID,
    B,
    MINUS_ID,
    AxialElement,
    Group,
    a,
    canonical_family,
    construct_group,
    element_order,
    embed,
    family_order,
    legal_rows,
    parse_word,
    poly_from_matrix,
    project_to_so3,
    recognize,
    stabilizer_of_point,
    subgroup_from_words,
    O0,
)

ROWS = legal_rows(12)


@pytest.mark.parametrize("family,n", ROWS)
def test_orders_and_closure(family, n):
    G = construct_group(family, n)
    assert G.order == family_order(family, n)
    S = set(G.elements)
    for g in G.elements:
        assert g.inverse() in S
    # closure on a sample of pairs keeps the test quick for the big groups
    for g, h in itertools.islice(itertools.product(G.elements, G.elements), 2000):
        assert g * h in S


def test_small_examples():
    assert construct_group("Dn", 3).order == 6
    assert construct_group("IxZ").order == 120
    with pytest.raises(IllegalFamilyParameter):
        construct_group("minus_an", 2)
    with pytest.raises(IllegalFamilyParameter):
        construct_group("Dn", 1)
    with pytest.raises(IllegalFamilyParameter):
        construct_group("DnxZ_odd", 4)
    assert canonical_family("DnxZ_odd", 3) == "DnxZ"


def test_multiplication_rules():
    k = Fraction(1, 5)
    assert B * a(5) == AxialElement(0, 1, k)
    assert a(5) * B == AxialElement(0, 1, -k)
    assert B * a(5) * B == a(5, -1)
    assert MINUS_ID * MINUS_ID == AXIAL_ID


def test_polyhedral_product_of_three_cycles():
    T = construct_group("T")
    threes = [g for g in T.elements if element_order(g) == 3]
    found = False
    for g, h in itertools.product(threes, threes):
        # rotations about distinct vertex axes of the tetrahedron
        if h not in (g, g * g) and element_order(g * h) == 2:
            found = True
    assert found


def test_ambient_mismatch():
    o = construct_group("O").elements[1]
    i = construct_group("I").elements[1]
    with pytest.raises(AmbientMismatch):
        o * i


def test_projection():
    assert project_to_so3(MINUS_ID * a(4)) == a(4)
    assert project_to_so3(B) == B
    o0 = poly_from_matrix("O", O0)
    assert project_to_so3(poly_from_matrix("O", -O0)) == o0


@pytest.mark.parametrize("family,n", [r for r in ROWS if family_order(*r) <= 48])
def test_projection_is_homomorphism(family, n):
    G = construct_group(family, n)
    for g in G.elements:
        for h in G.elements:
            assert project_to_so3(g * h) == project_to_so3(g) * project_to_so3(h)


def test_parse_words():
    assert parse_word("-a^{n/2}b", 6) == MINUS_ID * a(6, 3) * B
    assert parse_word("a_4^2") == a(2)
    assert parse_word("id") == AXIAL_ID
    with pytest.raises(ParseError):
        parse_word("c")
    with pytest.raises(ParseError):
        parse_word("a^{n/4}", 6)


@pytest.mark.parametrize("family,n", ROWS)
def test_recognize_standard_rows(family, n):
    G = construct_group(family, n)
    r = recognize(G.generators(), G.ambient)
    assert (r.family, r.n) == (family, n)
    assert r.conjugator is not None and r.conjugator.is_identity()


def test_recognize_examples():
    r = recognize([MINUS_ID * a(4)], construct_group("DnxZ", 4))
    assert (r.family, r.n) == ("minus_an", 4)
    r = recognize([a(6, 2), MINUS_ID * B], construct_group("DnxZ", 6))
    assert (r.family, r.n) == ("an_minus_b", 3)
    g = a(6)
    gi = g.inverse()
    r = recognize([g * a(3) * gi, g * B * gi], construct_group("DnxZ", 6))
    assert (r.family, r.n) == ("Dn", 3)
    c = r.conjugator
    moved = {c * g * x * gi * c.inverse() for x in construct_group("Dn", 3).elements}
    assert moved == set(construct_group("Dn", 3).elements)


def test_recognize_rejects_outside_ambient():
    with pytest.raises(NotASubgroup):
        recognize([a(5)], construct_group("DnxZ", 4))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([r for r in ROWS if r[0] in AXIAL_FAMILIES and r[1] <= 6]), st.data())
def test_recognize_conjugation_invariant(row, data):
    family, n = row
    G = construct_group(family, n)
    amb = G.ambient
    g = data.draw(st.sampled_from(amb.elements))
    gi = g.inverse()
    gens = [g * x * gi for x in G.generators()]
    r = recognize(gens, amb)
    assert (r.family, r.n) == (family, n)
    c = r.conjugator
    assert Group(c * g * x * gi * c.inverse() for x in G.elements) == G


REPETITIONS = [
    (["b"], ("Zn", 2)),
    (["-a_2", "b"], ("an_minus_b", 2)),
    (["-a_2"], ("an_minus_b", 1)),
    (["-a_2", "-b"], ("an_minus_b", 2)),
    (["a_2", "-id"], ("DnxZ", 1)),
]


@pytest.mark.parametrize("words,target", REPETITIONS)
def test_repetition_list(words, target):
    amb = construct_group("OxZ")
    gens = [embed(parse_word(w), "O") for w in words]
    r = recognize(gens, amb)
    assert (r.family, r.n) == target
    S = subgroup_from_words(words, kind="O")
    std = subgroup_from_words(
        {"Zn": ["a_2"], "an_minus_b": ["a_2", "-b"] if target[1] == 2 else ["-b"],
         "DnxZ": ["b", "-id"]}[target[0]], kind="O")
    c = r.conjugator
    assert {c * x * c.inverse() for x in S.elements} == set(std.elements)


def test_stabilizer_examples():
    D5 = construct_group("Dn", 5)
    assert set(stabilizer_of_point(D5, "v0").elements) == set(subgroup_from_words(["b"]).elements)
    assert set(stabilizer_of_point(D5, "b(e0)").elements) == set(subgroup_from_words(["a_5 b"]).elements)
    D4Z = construct_group("DnxZ", 4)
    assert set(stabilizer_of_point(D4Z, "v0").elements) == set(subgroup_from_words(["-a_4^2", "b"]).elements)
    with pytest.raises(UnknownPointLabel):
        stabilizer_of_point(D5, "q7")
