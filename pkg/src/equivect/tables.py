"""Expected isotropy data, encoded as generator words, and a verifier.

Words follow the grammar of ``o3group.parse_word``; a bare ``a`` means a_n.
Every expected cell is recomputed from stabilizers of the actual group action
and compared as subgroups (axial rows) or by (order, abelian, exponent)
(polyhedral rows).
"""
from __future__ import annotations

from fractions import Fraction

from .o3group import (
    AXIAL_FAMILIES,
    POLY_FAMILIES,
    Group,
    closure,
    construct_group,
    embed,
    legal_rows,
    one_dim_group,
    parse_word,
    poly_identity,
    row_tag,
    AXIAL_ID,
)

# row -> (K_R as m in terms of n or polyhedral complex, D_R shape)
TABLE1 = {
    "Dn": ("n", "half"),
    "Zn": ("n", "edge"),
    "DnxZ_odd": ("2*n", "half"),
    "an_minus_b_odd": ("2*n", "bridge"),
    "ZnxZ_odd": ("2*n", "edge"),
    "DnxZ_even": ("n", "half"),
    "an_minus_b_even": ("n", "half"),
    "minus_an_b_oddhalf": ("n/2", "edge"),
    "minus_an_b_evenhalf": ("n", "half"),
    "minus_an_minus_b_oddhalf": ("n", "bridge"),
    "minus_an_minus_b_evenhalf": ("n", "half"),
    "ZnxZ_even": ("n", "edge"),
    "minus_an_oddhalf": ("n/2", "edge"),
    "minus_an_evenhalf": ("n", "edge"),
    "T": ("KT", "half"),
    "O": ("KO", "half"),
    "I": ("KI", "half"),
    "T_minus_o0": ("KT", "half"),
    "TxZ": ("KO", "edge"),
    "OxZ": ("KO", "half"),
    "IxZ": ("KI", "half"),
}

# one-dimensional rows: R_{v0}, R_{v0} cap R_S, and the tag of R_{d-1}
TABLE2 = {
    "O2xZ": (["b", "-a_2"], ["-a_2 b"], "SO2_minus_b"),
    "SO2_minus_b": (["-a_2 b"], ["-a_2 b"], "SO2_minus_b"),
    "SO2_minus_a2": (["-a_2"], ["id"], "SO2"),
    "O2": (["b"], ["id"], "SO2"),
    "SO2": (["id"], ["id"], "SO2"),
}

# R_{v0}, R_{v0} cap R_S
TABLE3 = {
    "Dn": (["b"], ["id"]),
    "Zn": (["id"], ["id"]),
    "DnxZ_odd": (["b"], ["id"]),
    "an_minus_b_odd": (["id"], ["id"]),
    "ZnxZ_odd": (["id"], ["id"]),
    "DnxZ_even": (["-a^{n/2}", "b"], ["-a^{n/2}b"]),
    "an_minus_b_even": (["-a^{n/2}b"], ["-a^{n/2}b"]),
    "minus_an_b_oddhalf": (["-a^{n/2}", "b"], ["-a^{n/2}b"]),
    "minus_an_b_evenhalf": (["b"], ["id"]),
    "minus_an_minus_b_oddhalf": (["-a^{n/2}"], ["id"]),
    "minus_an_minus_b_evenhalf": (["-a^{n/2}b"], ["-a^{n/2}b"]),
    "ZnxZ_even": (["-a^{n/2}"], ["id"]),
    "minus_an_oddhalf": (["-a^{n/2}"], ["id"]),
    "minus_an_evenhalf": (["id"], ["id"]),
}

# R_{b(e0)}, R_{b(e0)} cap R_S, R_x
TABLE4 = {
    "Dn": (["a b"], ["id"], ["id"]),
    "Zn": (["id"], ["id"], ["id"]),
    "DnxZ_odd": (["-a^{(n+1)/2}b"], ["-a^{(n+1)/2}b"], ["id"]),
    "an_minus_b_odd": (["-a^{(n+1)/2}b"], ["-a^{(n+1)/2}b"], ["id"]),
    "ZnxZ_odd": (["id"], ["id"], ["id"]),
    "DnxZ_even": (["-a^{n/2}", "a b"], ["-a^{n/2+1}b"], ["-a^{n/2}"]),
    "an_minus_b_even": (["-a^{n/2+1}b"], ["-a^{n/2+1}b"], ["id"]),
    "minus_an_b_oddhalf": (["-a^{n/2}", "a^2 b"], ["-a^{n/2+2}b"], ["-a^{n/2}"]),
    "minus_an_b_evenhalf": (["-a^{n/2+1}b"], ["-a^{n/2+1}b"], ["id"]),
    "minus_an_minus_b_oddhalf": (["-a^{n/2}", "a b"], ["-a^{n/2+1}b"], ["-a^{n/2}"]),
    "minus_an_minus_b_evenhalf": (["a b"], ["id"], ["id"]),
    "ZnxZ_even": (["-a^{n/2}"], ["id"], ["-a^{n/2}"]),
    "minus_an_oddhalf": (["-a^{n/2}"], ["id"], ["-a^{n/2}"]),
    "minus_an_evenhalf": (["id"], ["id"], ["id"]),
}

# the last column of the summary table for axial rows
TABLE6_DM1 = {
    "Dn": ["a"],
    "Zn": ["a"],
    "DnxZ_odd": ["a", "-b"],
    "an_minus_b_odd": ["a", "-b"],
    "ZnxZ_odd": ["a"],
    "DnxZ_even": ["a", "-b"],
    "an_minus_b_even": ["a", "-b"],
    "minus_an_b_oddhalf": ["a^2", "-a b"],
    "minus_an_b_evenhalf": ["a^2", "-a b"],
    "minus_an_minus_b_oddhalf": ["a^2", "-b"],
    "minus_an_minus_b_evenhalf": ["a^2", "-b"],
    "ZnxZ_even": ["a"],
    "minus_an_oddhalf": ["a^2"],
    "minus_an_evenhalf": ["a^2"],
}

# polyhedral rows: R_{v0}, R_{b(e0)}, R_x, R_{d-1}; a list means exact words in the O ambient
TABLE6_POLY = {
    "T": ("Z3", "Z2", "id", "Z3"),
    "O": ("Z4", "Z2", "id", "Z3"),
    "I": ("Z5", "Z2", "id", "Z3"),
    "T_minus_o0": ("D3", "Z2xZ2", "Z2", "D3"),
    "TxZ": (["-a_4^2", "b"], ["-a_4^2"], ["-a_4^2"], "Z3"),
    "OxZ": ("D4", "Z2xZ2", "Z2", "D3"),
    "IxZ": ("D5", "Z2xZ2", "Z2", "D3"),
}

# isomorphism types as (order, abelian, exponent)
ISO_TYPES = {
    "id": (1, True, 1), "Z2": (2, True, 2), "Z3": (3, True, 3), "Z4": (4, True, 4),
    "Z5": (5, True, 5), "Z2xZ2": (4, True, 2), "D3": (6, False, 6), "D4": (8, False, 4),
    "D5": (10, False, 10),
}

# rows whose complex is K_1 or K_2, with n
TABLE5 = {("Dn", 2), ("Zn", 1), ("Zn", 2), ("DnxZ", 1), ("an_minus_b", 1), ("ZnxZ", 1),
          ("DnxZ", 2), ("an_minus_b", 2)}


def m_expected(expr: str, n: int) -> int:
    v = {"n": Fraction(n), "2*n": Fraction(2 * n), "n/2": Fraction(n, 2)}[expr]
    assert v.denominator == 1
    return int(v)


def words_group(words, n=None, kind=None) -> Group:
    els = []
    for w in words:
        e = embed(parse_word(w, n), kind)
        if e is None:
            raise ValueError(f"{w} is not a symmetry of the {kind} solid")
        els.append(e)
    ident = AXIAL_ID if kind is None else poly_identity(kind)
    return Group(closure(els, ident))


def iso_signature(G: Group) -> tuple:
    return (G.order, G.is_abelian(), G.exponent())


def _fmt(G) -> str:
    if isinstance(G, Group):
        return "<" + ", ".join(g.word() for g in G.generators()) + ">" if G.order > 1 else "<id>"
    return str(G)


class _Tally:
    def __init__(self):
        self.cells = 0
        self.mismatches = []

    def check(self, table, row, n, column, ok, expected, computed):
        self.cells += 1
        if not ok:
            self.mismatches.append({"table": table, "row": row, "n": n, "column": column,
                                    "expected": expected, "computed": computed})


def verify_tables(selector: str = "all", max_n: int = 12) -> dict:
    """Recompute every cell of the isotropy tables from the group action."""
    from . import cellcomplex as cc

    want = {"2", "3", "4", "5", "6"} if selector == "all" else {str(selector)}
    tallies = {k: _Tally() for k in sorted(want)}

    if "2" in want or "6" in want:
        for tag, (v0w, v0sw, dm1) in TABLE2.items():
            R = one_dim_group(tag)
            rv0 = cc.stabilizer_of_label(R, "v0")
            rv0s = cc.stabilizer_of_label(R, "[v0,S]")
            if "2" in want:
                t = tallies["2"]
                e1, e2 = words_group(v0w), words_group(v0sw)
                t.check("2", tag, None, "R_v0", rv0 == e1, v0w, _fmt(rv0))
                t.check("2", tag, None, "R_v0^R_S", rv0s == e2, v0sw, _fmt(rv0s))
            if "6" in want:
                t = tallies["6"]
                got = cc.stabilizer_of_label(R, "d-1")
                t.check("6", tag, None, "R_d-1", got.family == dm1, dm1, got.family)
                fd = cc.fundamental_domain(R)
                t.check("6", tag, None, "D_R", fd.shape == "point", "{v0}", cc.PATH_TEXT[fd.shape])
                t.check("6", tag, None, "R_v0", rv0 == words_group(v0w), v0w, _fmt(rv0))

    rows = legal_rows(max_n)
    if "5" in want:
        t = tallies["5"]
        small = set()
        for f, n in rows:
            if f in AXIAL_FAMILIES and cc.complex_for(construct_group(f, n)).m <= 2:
                small.add((f, n))
        t.check("5", "all", None, "rows with K_1/K_2", small == TABLE5,
                sorted(TABLE5), sorted(small))
        for f, n in sorted(TABLE5):
            m = cc.complex_for(construct_group(f, n)).m
            t.check("5", f, n, "K_R", m <= 2, "K_1 or K_2", f"K_{m}")

    for f, n in rows:
        R = construct_group(f, n)
        row = row_tag(f, n)
        st = lambda lab: cc.stabilizer_of_label(R, lab)
        if f in AXIAL_FAMILIES:
            if "3" in want:
                t = tallies["3"]
                v0w, v0sw = TABLE3[row]
                t.check("3", row, n, "R_v0", st("v0") == words_group(v0w, n), v0w, _fmt(st("v0")))
                t.check("3", row, n, "R_v0^R_S", st("[v0,S]") == words_group(v0sw, n), v0sw,
                        _fmt(st("[v0,S]")))
            if "4" in want:
                t = tallies["4"]
                bw, bsw, xw = TABLE4[row]
                mexp = m_expected(TABLE1[row][0], n)
                m = cc.complex_for(R).m
                t.check("4", row, n, "K_R", m == mexp, f"K_{mexp}", f"K_{m}")
                t.check("4", row, n, "R_b(e0)", st("b(e0)") == words_group(bw, n), bw,
                        _fmt(st("b(e0)")))
                t.check("4", row, n, "R_b(e0)^R_S", st("[b(e0),S]") == words_group(bsw, n), bsw,
                        _fmt(st("[b(e0),S]")))
                t.check("4", row, n, "R_x", st("x") == words_group(xw, n), xw, _fmt(st("x")))
            if "6" in want:
                t = tallies["6"]
                mexp = m_expected(TABLE1[row][0], n)
                m = cc.complex_for(R).m
                t.check("6", row, n, "K_R", m == mexp, f"K_{mexp}", f"K_{m}")
                derived = cc.derive_domain_shape(R)
                t.check("6", row, n, "D_R", derived == TABLE1[row][1],
                        cc.PATH_TEXT[TABLE1[row][1]], cc.PATH_TEXT[derived])
                v0w, _ = TABLE3[row]
                bw, _, xw = TABLE4[row]
                for col, lab, w in (("R_v0", "v0", v0w), ("R_b(e0)", "b(e0)", bw), ("R_x", "x", xw),
                                    ("R_d-1", "d-1", TABLE6_DM1[row])):
                    t.check("6", row, n, col, st(lab) == words_group(w, n), w, _fmt(st(lab)))
        elif "6" in want:
            t = tallies["6"]
            cx = cc.complex_for(R)
            t.check("6", row, None, "K_R", cx.kind == TABLE1[row][0], TABLE1[row][0], cx.kind)
            derived = cc.derive_domain_shape(R)
            t.check("6", row, None, "D_R", derived == TABLE1[row][1],
                    cc.PATH_TEXT[TABLE1[row][1]], cc.PATH_TEXT[derived])
            for col, lab, exp in zip(("R_v0", "R_b(e0)", "R_x", "R_d-1"), ("v0", "b(e0)", "x", "d-1"),
                                     TABLE6_POLY[row]):
                got = st(lab)
                if isinstance(exp, list):
                    ok = got == words_group(exp, kind="O")
                else:
                    ok = iso_signature(got) == ISO_TYPES[exp]
                t.check("6", row, None, col, ok, exp, f"order {got.order}, {_fmt(got)}")

    out = {
        "selector": str(selector),
        "max_n": max_n,
        "tables": {k: {"cells": v.cells, "pass": v.cells - len(v.mismatches),
                       "mismatches": v.mismatches} for k, v in tallies.items()},
    }
    out["total_mismatches"] = sum(len(v.mismatches) for v in tallies.values())
    return out
