import json
import os

import pytest

from equivect import bundleclass as bc
from equivect import chartheory as ct
from equivect.cellcomplex import complex_for, stabilizer_of_label
from equivect.errors import (
    InvalidInvariant,
    NotLineInvariant,
    ParseError,
    UnsupportedFamily,
    WindowTooSmall,
    WrongStabilizerGroup,
)
from equivect.o3group import (
    ONE_DIM_FAMILIES,
    a,
    construct_group,
    legal_rows,
    one_dim_group,
    row_tag,
)

GOLDEN = os.path.join(os.path.dirname(__file__), "golden", "dispatch.json")
ROWS8 = legal_rows(8)


def _weight(rep, gen, n):
    return bc._char(rep)(gen).root_index(n)


def test_small_counts():
    for n in range(1, 9):
        assert len(bc.line_invariants(construct_group("Zn", n))) == n * n
    for n in range(2, 9):
        assert len(bc.line_invariants(construct_group("Dn", n))) == 4 * n


@pytest.mark.parametrize("family,n", ROWS8)
def test_count_formula_everywhere(family, n):
    R = construct_group(family, n)
    got = len(bc.line_invariants(R))
    if bc.fiber_kind(family, n) != "Unique":
        assert got == bc.generator_count_formula(R)
    for inv in bc.line_invariants(R):
        assert bc.validate_invariant(R, inv) == (True, None)


def test_validate_examples():
    Z4 = construct_group("Zn", 4)
    for l in range(4):
        w = f"C4:w{l}"
        assert bc.validate_invariant(Z4, bc.make_invariant(Z4, {"S": w, "N": w}))[0]
    D4 = construct_group("Dn", 4)
    # S and v0 share only the identity, so a clash must come from the dimensions
    bad = bc.make_invariant(D4, {"d-1": "C4:w1", "d0": {"D1:triv": 2}, "d1": "D1:triv"})
    assert bc.validate_invariant(D4, bad) == (False, "iii")
    D3xZ = construct_group("DnxZ", 3)
    invs = bc.line_invariants(D3xZ)
    base = invs[0]
    entries = dict(base.entries)
    S = bc.point_groups(D3xZ)["d-1"]
    other = [lab for lab in ct.labels(S) if lab != entries["d-1"].counts[0][0]
             and ct.restrict(ct.irreducible(S, lab), S.intersection(bc.point_groups(D3xZ)["d0"]))
             != ct.restrict(bc._char(entries["d-1"]), S.intersection(bc.point_groups(D3xZ)["d0"]))]
    mix = bc.make_invariant(D3xZ, {"d-1": other[0], "d0": entries["d0"].counts[0][0],
                                   "d1": entries["d1"].counts[0][0]})
    assert bc.validate_invariant(D3xZ, mix) == (False, "iii")
    with pytest.raises(WrongStabilizerGroup):
        bc.make_invariant(D4, {"S": "C4:w1", "N": "C4:w1"})


def test_polyhedral_oracle_invariants_valid():
    from equivect.oracle import tangent_power_table

    for inv, _ in tangent_power_table(construct_group("O")):
        assert bc.validate_invariant(construct_group("O"), inv)[0]


def test_product_bundles_valid_over_OxZ():
    R = construct_group("OxZ")
    for chi in ct.irreducibles(R):
        if chi.degree != 1:
            continue
        entries = tuple((lab, ct.decompose(ct.restrict(chi, G))) for lab, G in bc.point_groups(R).items())
        assert bc.validate_invariant(R, bc.BundleInvariant(R, entries)) == (True, None)


def test_chern_examples():
    Z5 = construct_group("Zn", 5)
    inv = bc.make_invariant(Z5, {"S": "C5:w1", "N": "C5:w3"})
    assert bc.chern_of_line_invariant(Z5, inv) == bc.ChernValue(2, 5)
    D4 = construct_group("Dn", 4)
    hits = [inv for inv in bc.line_invariants(D4)
            if _weight(inv.entry("d-1"), a(4), 4) == 1 and inv.entry("d0").counts != inv.entry("d1").counts]
    assert hits and all(bc.chern_of_line_invariant(D4, h) == bc.ChernValue(2, 8) for h in hits)
    Z3Z = construct_group("ZnxZ", 3)
    for inv in bc.line_invariants(Z3Z):
        assert bc.chern_of_line_invariant(Z3Z, inv).value == 0


def test_chern_errors():
    Z3 = construct_group("Zn", 3)
    big = bc.make_invariant(Z3, {"S": {"C3:w1": 2}, "N": {"C3:w1": 2}})
    with pytest.raises(NotLineInvariant):
        bc.chern_of_line_invariant(Z3, big)
    R = construct_group("DnxZ", 3)
    with pytest.raises(UnsupportedFamily):
        bc.chern_of_line_invariant(R, bc.line_invariants(R)[0])


@pytest.mark.parametrize("n", range(2, 9))
def test_parity_laws(n):
    D = construct_group("Dn", n)
    N = complex_for(D).labels["N"]
    for inv in bc.line_invariants(D):
        lS = _weight(inv.entry("d-1"), a(n), n)
        assert bc.isotropy_character(D, inv, N)(a(n)).root_index(n) == (-lS) % n
    if n % 2:
        Z = construct_group("ZnxZ", n)
        N = complex_for(Z).labels["N"]
        for inv in bc.line_invariants(Z):
            lS = _weight(inv.entry("d-1"), a(n), n)
            assert bc.isotropy_character(Z, inv, N)(a(n)).root_index(n) == lS


def test_sylow_chern_is_total():
    for f in ("T", "O", "I"):
        R = construct_group(f)
        vals = {bc.chern_of_line_invariant(R, inv).modulus for inv in bc.line_invariants(R)}
        assert vals == {R.order}


@pytest.mark.parametrize("family,n", [("Zn", n) for n in range(1, 7)] + [("Dn", n) for n in range(2, 7)])
def test_k0_independent_of_decomposition(family, n):
    R = construct_group(family, n)
    l_R = bc.fundamental_domain(R).l_R
    for inv in bc.enumerate_invariants(R, 2):
        if inv.dim != 2 or any(d != 2 for d in inv.dims):
            continue
        decs = bc.line_decompositions(R, inv)
        assert decs
        vals = {sum(bc.chern_of_line_invariant(R, L).value for L in dec) % l_R for dec in decs}
        assert len(vals) == 1
        assert bc.k0_of_invariant(R, inv) in vals


def test_k0_pairings_example():
    Z4 = construct_group("Zn", 4)
    inv = bc.make_invariant(Z4, {"S": {"C4:w0": 1, "C4:w1": 1}, "N": {"C4:w0": 1, "C4:w1": 1}})
    decs = bc.line_decompositions(Z4, inv)
    assert len(decs) == 2
    assert bc.k0_of_invariant(Z4, inv) == 0


def test_line_k0_is_chern():
    D3 = construct_group("Dn", 3)
    for inv in bc.line_invariants(D3):
        assert bc.k0_of_invariant(D3, inv) == bc.chern_of_line_invariant(D3, inv).value


def test_dispatch_golden():
    golden = json.load(open(GOLDEN))
    seen = set()
    for f, n in legal_rows(12):
        tag = row_tag(f, n)
        R = construct_group(f, n)
        d = bc.classify_fiber(R).to_json()
        assert {"kind": d["kind"], "theorem": d["theorem"]} == golden[tag], tag
        seen.add(tag)
    for f in ONE_DIM_FAMILIES:
        d = bc.classify_fiber(one_dim_group(f)).to_json()
        assert {"kind": d["kind"], "theorem": d["theorem"]} == golden[f]
        seen.add(f)
    assert seen == set(golden)


def test_classify_examples():
    I = construct_group("I")
    fib = bc.classify_fiber(I, bc.line_invariants(I)[3])
    assert fib.kind == "ChernIndexed" and fib.l_R == 60 and fib.k0 is not None
    assert bc.classify_fiber(construct_group("ZnxZ", 5)).kind == "TwoSameChern"
    assert bc.classify_fiber(construct_group("TxZ")).kind == "Unique"
    Z3 = construct_group("Zn", 3)
    bad = bc.make_invariant(Z3, {"S": {"C3:w1": 1}, "N": {"C3:w1": 2}})
    with pytest.raises(InvalidInvariant):
        bc.classify_fiber(Z3, bad)


def test_report_examples():
    rep = bc.classification_report(construct_group("Dn", 3))
    assert rep["row"]["family"] == "Dn"
    assert rep["complex"]["name"] == "K_3"
    assert rep["l_R"] == 6 and rep["dim1_invariants"] == 12
    assert rep["fiber"]["kind"] == "ChernIndexed"
    assert bc.classification_report(one_dim_group("SO2_minus_b"))["fiber"]["kind"] == "Unique"
    o3 = bc.classification_report(one_dim_group("O3"))
    assert o3["fiber"]["kind"] == "Unique"
    for item in o3["invariants"]:
        e = item["invariant"]["entries"]
        assert e["d-1"] == e["d0"] == e["d1"]


def test_one_dim_windows():
    with pytest.raises(WindowTooSmall):
        bc.enumerate_invariants(one_dim_group("SO2"), 1)
    en = bc.enumerate_invariants(one_dim_group("SO2"), 1, window=3, allow_truncation=True)
    assert en.truncated and len(en) == 49
    assert len(bc.enumerate_invariants(one_dim_group("SO2_minus_b"), 1)) == 2


@pytest.mark.parametrize("family,n", [r for r in ROWS8 if r[1] is None or r[1] <= 4])
def test_json_roundtrip(family, n):
    R = construct_group(family, n)
    for inv in bc.enumerate_invariants(R, 1):
        text = json.dumps(inv.to_json(), sort_keys=True)
        back = bc.BundleInvariant.from_json(text)
        assert back == inv
        assert bc.validate_invariant(R, back)[0]


def test_json_errors():
    with pytest.raises(ParseError):
        bc.BundleInvariant.from_json("{not json")
    with pytest.raises(ParseError):
        bc.BundleInvariant.from_json({"group": {"family": "Zn", "n": 3}, "entries": {"S": []}})


def test_spec_json_example():
    doc = {"group": {"family": "Dn", "n": 4}, "shape": "triple",
           "entries": {"d-1": [["C4:w1", 1]], "d0": [["D1:sgn", 1]], "d1": [["D1:triv", 1]]}}
    inv = bc.BundleInvariant.from_json(doc)
    assert inv.to_json() == doc
