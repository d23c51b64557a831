from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from equivect import chartheory as ct
from equivect.cyclotomic import Cyclotomic, ZERO
from equivect.errors import ConditionViolation, NotASubgroup, NotFixedByG, QuotientNotCyclic
from equivect.o3group import B, MINUS_ID, a, construct_group, legal_rows, subgroup_from_words
from pairs import cyclic_pairs, point_subgroups

ROWS = legal_rows(12)


def _groups():
    seen = {}
    for f, n in ROWS:
        R = construct_group(f, n)
        for G in point_subgroups(R).values():
            seen.setdefault(G, f"{f}({n})")
    return list(seen)


GROUPS = _groups()


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: f"{ct.type_name(G)}-{G.order}")
def test_orthogonality(G):
    irr = ct.irreducibles(G)
    assert sum(c.degree ** 2 for c in irr) == G.order
    assert len(irr) == len(G.classes)
    for i, x in enumerate(irr):
        for j, y in enumerate(irr):
            assert x.inner(y) == (1 if i == j else 0)
    # column relation
    for p, clp in enumerate(G.classes):
        for q, clq in enumerate(G.classes):
            s = ZERO
            for c in irr:
                s = s + c.values[p] * c.values[q].conj()
            want = G.order // len(clp) if p == q else 0
            assert s == want


def test_small_tables():
    Z4 = construct_group("Zn", 4)
    irr = ct.irreducibles(Z4)
    assert len(irr) == 4
    for c in irr:
        k = int(c.label.split(":w")[1])
        assert c(a(4)) == Cyclotomic.zeta(4, k)
    assert sorted(c.degree for c in ct.irreducibles(construct_group("I"))) == [1, 3, 3, 4, 5]
    assert sorted(c.degree for c in ct.irreducibles(construct_group("Dn", 3))) == [1, 1, 2]
    assert set(ct.labels(construct_group("O"))) == {"S4:1", "S4:sgn", "S4:2", "S4:3", "S4:3p"}
    assert set(ct.labels(construct_group("T"))) == {"A4:1", "A4:1a", "A4:1b", "A4:3"}


def test_product_labels():
    labs = set(ct.labels(construct_group("IxZ")))
    assert labs == {f"A5:{x}:{s}" for x in ("1", "3a", "3b", "4", "5") for s in "+-"}
    assert ct.type_name(construct_group("DnxZ", 4)) == "D4xZ2"


def test_restriction_examples():
    D3 = construct_group("Dn", 3)
    Z3 = construct_group("Zn", 3)
    V = ct.irreducible(D3, "D3:V1")
    assert ct.decompose(ct.restrict(V, Z3)).as_dict() == {"C3:w1": 1, "C3:w2": 1}
    one = subgroup_from_words(["id"])
    for chi in ct.irreducibles(D3):
        assert ct.decompose(ct.restrict(chi, one)).as_dict() == {"C1:w0": chi.degree}
    Z4, Z2 = construct_group("Zn", 4), construct_group("Zn", 2)
    assert ct.identify(ct.restrict(ct.irreducible(Z4, "C4:w1"), Z2)).label == "C2:w1"
    with pytest.raises(NotASubgroup):
        ct.restrict(V, construct_group("Zn", 4))


def test_conjugation_examples():
    D5 = construct_group("Dn", 5)
    Z5 = construct_group("Zn", 5)
    w1 = ct.irreducible(Z5, "C5:w1")
    assert ct.identify(ct.conjugate_character(w1, B)).label == "C5:w4"
    assert ct.conjugate_character(w1, a(5)) == w1
    for chi in ct.irreducibles(D5):
        for g in D5.elements:
            assert ct.conjugate_character(chi, g) == chi


def test_extension_examples():
    N0 = subgroup_from_words(["a_4^2"])
    N2 = subgroup_from_words(["-a_4"])
    U = ct.identify(ct.Character.from_function(N0, lambda g: Cyclotomic.zeta(2, int(g.angle * 2))))
    exts = ct.extensions_of_irreducible(U, N2)
    assert len(exts) == 2
    Z3, Z6 = construct_group("Zn", 3), construct_group("Zn", 6)
    exts = ct.extensions_of_irreducible(ct.irreducible(Z3, "C3:w1"), Z6)
    assert sorted(c.label for c in exts) == ["C6:w1", "C6:w4"]
    for m in (2, 3, 4, 6):
        Zm = construct_group("Zn", m)
        triv = ct.trivial(subgroup_from_words(["id"]))
        got = ct.extensions_of_irreducible(triv, Zm)
        assert sorted(c.label for c in got) == sorted(f"C{m}:w{k}" for k in range(m))


def test_extension_errors():
    D3 = construct_group("Dn", 3)
    Z3 = construct_group("Zn", 3)
    with pytest.raises(NotFixedByG):
        ct.extensions_of_irreducible(ct.irreducible(Z3, "C3:w1"), D3)
    # Z2 x Z2 over the trivial group has no cyclic quotient
    K = subgroup_from_words(["b", "-id"])
    with pytest.raises(QuotientNotCyclic):
        ct.quotient_generator(subgroup_from_words(["id"]), K)


def test_extension_set_examples():
    D3 = construct_group("Dn", 3)
    Z3 = construct_group("Zn", 3)
    empty = ct.RepDecomposition.of(Z3, {})
    assert [e.as_dict() for e in ct.extension_set(empty, D3)] == [{}]
    W = ct.RepDecomposition.of(Z3, {"C3:w1": 1, "C3:w2": 1})
    assert [e.as_dict() for e in ct.extension_set(W, D3)] == [{"D3:V1": 1}]
    assert ct.extension_set(ct.RepDecomposition.of(Z3, {"C3:w1": 1}), D3) == []


def test_count_components():
    Z3, Z6 = construct_group("Zn", 3), construct_group("Zn", 6)
    W = ct.RepDecomposition.of(Z3, {"C3:w1": 1})
    assert ct.count_components_of_A(Z6, Z3, W, "F2") == 2
    D3 = construct_group("Dn", 3)
    assert ct.count_components_of_A(D3, Z3, W, "F2") == 0
    X = ct.RepDecomposition.of(D3, {"D3:V1": 1})
    assert ct.count_components_of_A(D3, D3, X, "F1", X) == 1
    assert ct.count_components_of_A(D3, D3, X, "F1", ct.RepDecomposition.of(D3, {"D3:sgn": 2})) == 0
    with pytest.raises(ConditionViolation):
        ct.count_components_of_A(D3, D3, X, "F3")


@pytest.mark.parametrize("pair", cyclic_pairs(8), ids=lambda p: f"{p[0][0]}{p[0][1]}:{p[1]}<{p[2]}")
def test_frobenius_and_extensions(pair):
    _, _, _, N1, N2 = pair
    _, m = ct.quotient_generator(N1, N2)
    for U in ct.irreducibles(N1):
        fixed = all(ct.conjugate_character(U, g) == U for g in N2.elements)
        if not fixed:
            continue
        exts = ct.extensions_of_irreducible(U, N2)
        assert len(exts) == m
        assert len({c.label for c in exts}) == m
        ind = ct.induce(U, N2)
        for c in exts:
            assert ct.restrict(c, N1) == U
            assert c.inner(ind) == 1


def test_json_shapes():
    D3 = construct_group("Dn", 3)
    j = ct.irreducible(D3, "D3:V1").to_json()
    assert j["label"] == "D3:V1"
    for word, val in j["values"]:
        assert Cyclotomic.parse(val) == ct.irreducible(D3, "D3:V1")(
            next(g for g in D3.elements if g.word() == word))


def test_circle_irreps():
    pairs = frozenset({(0, 0), (1, 0)})
    labs = [c.label for c in ct.circle_irreps(pairs, 2)]
    assert "O2:triv" in labs and "O2:det" in labs and "O2:V2" in labs
    so2 = [c.label for c in ct.circle_irreps(frozenset({(0, 0)}), 1)]
    assert so2 == ["SO2:w-1", "SO2:w0", "SO2:w1"]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([G for G in GROUPS if G.order <= 24]), st.data())
def test_tensor_dimension(G, data):
    labs = ct.labels(G)
    x = ct.RepDecomposition.of(G, {data.draw(st.sampled_from(labs)): 1})
    y = ct.RepDecomposition.of(G, {data.draw(st.sampled_from(labs)): data.draw(st.integers(1, 3))})
    assert ct.tensor(x, y).dim == x.dim * y.dim
    assert ct.tensor(x, y) == ct.tensor(y, x)
