import pytest

from equivect.cellcomplex import (
    complex_for,
    fundamental_domain,
    intersection_law,
    resolve_label,
    stabilizer_of_label,
    verify_orbit_cover,
)
from equivect.errors import PreconditionViolation
from equivect.o3group import POLY_FAMILIES, construct_group, legal_rows, subgroup_from_words

ROWS = legal_rows(12)


@pytest.mark.parametrize("family,n", ROWS)
def test_euler_and_action(family, n):
    R = construct_group(family, n)
    cx = complex_for(R)
    assert cx.euler == 2
    acts = {g: cx.action(g) for g in R.elements}
    gens = R.generators()
    for g in gens:
        for h in R.elements:
            gh = acts[g * h]
            for key in ("vertices", "edges", "faces"):
                assert gh[key] == [acts[g][key][i] for i in acts[h][key]]
    # incidence is preserved
    for g in gens:
        vp = acts[g]["vertices"]
        edges = {frozenset(e) for e in cx.edges}
        assert {frozenset(vp[v] for v in e) for e in cx.edges} == edges


def test_complex_examples():
    assert complex_for(construct_group("OxZ")).counts() == (6, 12, 8)
    assert complex_for(construct_group("DnxZ", 3)).m == 6
    assert complex_for(construct_group("minus_an_b", 8)).m == 8
    assert complex_for(construct_group("I")).counts() == (12, 30, 20)


@pytest.mark.parametrize("family", POLY_FAMILIES)
def test_polyhedral_transitive(family):
    R = construct_group(family)
    cx = complex_for(R)
    for key, cells in (("vertices", cx.vertices), ("edges", cx.edges), ("faces", cx.faces)):
        orbit = {cx.action(g)[key][0] for g in R.elements}
        assert len(orbit) == len(cells)


def test_fundamental_domain_examples():
    fd = fundamental_domain(construct_group("I"))
    assert fd.to_dict()["D_R"] == "[v0,b(e0)]"
    assert fd.d_minus1_label == "b(f-1)"
    assert fd.l_R == 60
    for n in (2, 5, 7):
        fd = fundamental_domain(construct_group("Zn", n))
        assert fd.to_dict()["D_R"] == "|e0|" and fd.d_minus1_label == "S" and fd.l_R == n
    fd = fundamental_domain(construct_group("an_minus_b", 5))
    assert fd.path_labels == ("b(e0)", "v1", "b(e1)")
    assert fd.to_dict()["d0"] == "b(e0)" and fd.to_dict()["d1"] == "b(e1)"


@pytest.mark.parametrize("n", range(2, 13))
def test_l_R_values(n):
    assert fundamental_domain(construct_group("Zn", n)).l_R == n
    assert fundamental_domain(construct_group("Dn", n)).l_R == 2 * n


def test_l_R_polyhedral():
    assert [fundamental_domain(construct_group(f)).l_R for f in ("T", "O", "I")] == [12, 24, 60]


def test_d0_nearer_v0():
    for f, n in ROWS:
        fd = fundamental_domain(construct_group(f, n))
        assert fd.path_labels[0] in ("v0", "b(e0)")


@pytest.mark.parametrize("family,n", ROWS)
def test_orbit_cover(family, n):
    ok, witness = verify_orbit_cover(construct_group(family, n))
    if (family, n) in {("minus_an_b", 6), ("minus_an_b", 10)}:
        # the tabulated path is not minimal here; see the notes
        assert not ok
    else:
        assert ok, witness


def test_orbit_cover_examples():
    assert verify_orbit_cover(construct_group("Dn", 5)) == (True, None)
    assert verify_orbit_cover(construct_group("Zn", 5), "half") == (False, "[b(e0),v1]")
    assert verify_orbit_cover(construct_group("TxZ")) == (True, None)
    assert fundamental_domain(construct_group("TxZ")).to_dict()["D_R"] == "|e0|"


def test_intersection_law_examples():
    assert intersection_law(construct_group("O"))
    assert intersection_law(construct_group("DnxZ", 4))
    with pytest.raises(PreconditionViolation):
        intersection_law(construct_group("Zn", 5))


@pytest.mark.parametrize("family,n", [r for r in ROWS if r[0] not in ("Zn", "an_minus_b")])
def test_intersection_law(family, n):
    assert intersection_law(construct_group(family, n))


@pytest.mark.parametrize("family,n", [("an_minus_b", n) for n in (1, 3, 5, 7)]
                         + [("minus_an_minus_b", n) for n in (6, 10)])
def test_edge_barycenters_split(family, n):
    R = construct_group(family, n)
    cx = complex_for(R)
    bary = {cx.labels[f"b(e{i})"] for i in range(cx.m)}
    orbit = R.orbit(cx.labels["b(e0)"])
    assert orbit < bary or cx.m == 1


@pytest.mark.parametrize("n", (6, 10))
def test_second_barycenter_stabilizer(n):
    R = construct_group("minus_an_minus_b", n)
    want = subgroup_from_words([f"-a_{n}^{n // 2}", f"a_{n}^3 b"])
    assert set(stabilizer_of_label(R, "b(e1)").elements) == set(want.elements)


def test_segment_stabilizer_is_pointwise():
    R = construct_group("Dn", 4)
    seg = stabilizer_of_label(R, "[v0,S]")
    assert set(seg.elements) == set(stabilizer_of_label(R, "v0").intersection(
        stabilizer_of_label(R, "S")).elements)
    assert resolve_label(R, "S") == complex_for(R).labels["S"]
