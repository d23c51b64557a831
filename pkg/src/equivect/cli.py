"""Command line front end: ``equivect <verb> [flags]``.

Every verb prints one JSON document (sorted keys) or, with ``--format text``,
aligned ``key: value`` lines.  Exit status is 0 on success, 1 when the engine
rejects the input and 2 on usage errors.

Generator words: ``id``, ``-id``, ``a_6``, ``a_6^5``, ``-a_4^2 b``, ``a^{n/2}b``
(bare ``a`` means ``a_n``).  Family tags are the row names used throughout the
package, e.g. ``Dn``, ``ZnxZ``, ``minus_an_b``, ``T_minus_o0``, ``O2xZ``.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bundleclass as bc
from . import cellcomplex as cc
from . import chartheory as ct
from . import oracle
from .errors import EquivectError, ParseError, UnsupportedFamily
from .o3group import (
    canonical_family,
    construct_group,
    ambient_for,
    embed,
    one_dim_group,
    parse_word,
    recognize,
    ONE_DIM_FAMILIES,
)
from .tables import verify_tables

SCHEMA = bc.SCHEMA


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def _common(p: argparse.ArgumentParser, family_required: bool = True) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="also write the document to this file")
    if family_required is not None:
        p.add_argument("--family", required=family_required)
        p.add_argument("--n", type=int)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="equivect", description="Equivariant line and vector bundles over the sphere.")
    sub = top.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("recognize", help="identify a subgroup up to conjugacy")
    _common(p, family_required=False)
    p.add_argument("--gen", action="append", default=[], help="generator word (repeatable)")
    p.add_argument("--kind", choices=("O", "I"), help="embed the words into the octahedral or icosahedral ambient")
    p.add_argument("--conjugate-by", help="conjugate the family group by this word first")

    p = sub.add_parser("complex", help="cell complex, labels and action")
    _common(p)
    p.add_argument("--with-action", action="store_true")

    p = sub.add_parser("tables", help="recompute the isotropy tables")
    _common(p, family_required=None)
    p.add_argument("--verify", default="all", choices=("2", "3", "4", "5", "6", "all"))
    p.add_argument("--max-n", type=int, default=12)

    p = sub.add_parser("enumerate", help="list admissible invariants")
    _common(p)
    p.add_argument("--max-dim", type=int, default=1)
    p.add_argument("--weight-window", type=int, default=ct.DEFAULT_WINDOW)
    p.add_argument("--allow-truncation", action="store_true")

    p = sub.add_parser("classify", help="fiber of the isotropy map over an invariant")
    _common(p)
    p.add_argument("--invariant", help="invariant JSON, or @path")

    p = sub.add_parser("chern", help="first Chern class of a line invariant")
    _common(p)
    p.add_argument("--ls", type=int, help="weight at S")
    p.add_argument("--ln", type=int, help="weight at N (polar rows)")
    p.add_argument("--d0", choices=("triv", "sgn"), help="isotropy at d0 (dihedral rows)")
    p.add_argument("--d1", choices=("triv", "sgn"), help="isotropy at d1 (dihedral rows)")
    p.add_argument("--invariant", help="invariant JSON, or @path")
    p.add_argument("--oracle", action="store_true", help="also compute the clutching degree")
    p.add_argument("--grid", type=int, default=oracle.DEFAULT_GRID)

    p = sub.add_parser("ext", help="extensions of a stabilizer representation")
    _common(p)
    p.add_argument("--sub", required=True, help="point label of N1 (e.g. x, v0, [v0,S]) or R")
    p.add_argument("--super", required=True, help="point label of N2 or R")
    p.add_argument("--rep", required=True, help="irreducible labels with multiplicities, e.g. 'C2:w1:2,C2:w0'")
    p.add_argument("--check", action="store_true", help="compare with brute-force enumeration")

    p = sub.add_parser("report", help="full classification report for one row")
    _common(p)
    p.add_argument("--max-dim", type=int, default=1)
    p.add_argument("--weight-window", type=int, default=ct.DEFAULT_WINDOW)
    return top


# ---------------------------------------------------------------- helpers

def _group(args):
    fam = canonical_family(args.family, args.n)
    if fam in ONE_DIM_FAMILIES:
        return one_dim_group(fam)
    return construct_group(fam, args.n)


def _load_invariant(text: str) -> bc.BundleInvariant:
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    return bc.BundleInvariant.from_json(text)


def _named_group(R, label: str):
    if label == "R":
        return R
    return cc.stabilizer_of_label(R, label)


def _parse_rep(G, text: str) -> ct.RepDecomposition:
    mults = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        lab, sep, k = item.rpartition(":")
        if sep and k.isdigit() and lab:
            mults[lab] = mults.get(lab, 0) + int(k)
        else:
            mults[item] = mults.get(item, 0) + 1
    try:
        return ct.RepDecomposition.of(G, mults)
    except KeyError as exc:
        raise ParseError(str(exc)) from exc


def _flatten(d, prefix="") -> list[tuple[str, str]]:
    out = []
    if isinstance(d, dict):
        for k in sorted(d):
            out += _flatten(d[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(d, list) and d and all(isinstance(x, (dict, list)) for x in d):
        for i, x in enumerate(d):
            out += _flatten(x, f"{prefix}[{i}]")
    else:
        out.append((prefix, json.dumps(d, sort_keys=True)))
    return out


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    rows = _flatten(doc)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


# ---------------------------------------------------------------- verbs

def cmd_recognize(args) -> dict:
    if args.family:
        R = construct_group(canonical_family(args.family, args.n), args.n)
        ambient = ambient_for(R)
        gens = list(R.generators())
        if args.conjugate_by:
            g = parse_word(args.conjugate_by, args.n)
            if not R.is_axial:
                g = embed(g, R.elements[0].kind)
            gi = g.inverse()
            gens = [g * x * gi for x in gens]
    else:
        if not args.gen:
            raise ParseError("give --gen words or --family")
        gens = []
        for w in args.gen:
            e = embed(parse_word(w, args.n), args.kind)
            if e is None:
                raise ParseError(f"{w} does not act on the {args.kind} solid")
            gens.append(e)
        ambient = None
        if args.kind:
            ambient = construct_group("OxZ" if args.kind == "O" else "IxZ")
    res = recognize(gens, ambient)
    return {"schema": SCHEMA, "generators": [g.word() for g in gens], **res.as_dict()}


def cmd_complex(args) -> dict:
    R = _group(args)
    if not hasattr(R, "elements"):
        raise UnsupportedFamily("one-dimensional groups have no finite complex")
    cx = cc.complex_for(R)
    d = cx.to_dict(R if args.with_action else None)
    d["schema"] = SCHEMA
    d["fundamental_domain"] = cc.fundamental_domain(R).to_dict()
    return d


def cmd_tables(args) -> dict:
    out = verify_tables(args.verify, args.max_n)
    out["schema"] = SCHEMA
    return out


def cmd_enumerate(args) -> dict:
    R = _group(args)
    en = bc.enumerate_invariants(R, args.max_dim, args.weight_window, args.allow_truncation)
    return {
        "schema": SCHEMA,
        "count": len(en),
        "truncated": en.truncated,
        "invariants": [inv.to_json() for inv in en],
    }


def cmd_classify(args) -> dict:
    R = _group(args)
    inv = _load_invariant(args.invariant) if args.invariant else None
    if inv is not None and inv.group != R:
        raise ParseError("invariant belongs to a different group")
    fib = bc.classify_fiber(R, inv)
    return {"schema": SCHEMA, "fiber": fib.to_json()}


def _rotation_weight(chi, G) -> int:
    """Exponent l with chi(r) = zeta_m^l, r the smallest proper rotation about the z axis in G."""
    rots = [g for g in G.elements if not g.sign and not g.refl]
    m = len(rots)
    if m == 1:
        return 0
    r = min((g for g in rots if g.angle > 0), key=lambda g: g.angle)
    return chi(r).root_index(m)


def _is_trivial(chi) -> bool:
    return all(chi(g) == 1 for g in chi.group.elements)


def _shortcut_invariant(R, args) -> bc.BundleInvariant:
    """Pick the line invariant matching --ls/--ln/--d0/--d1 (weights are taken mod the rotation order)."""
    if args.ls is None:
        raise ParseError("give --invariant or --ls")
    polar = bc.is_polar(R)
    if polar and args.ln is None:
        raise ParseError("polar rows need --ln")
    groups = bc.point_groups(R)
    S = groups["S" if polar else "d-1"]
    m = sum(1 for g in S.elements if not g.sign and not g.refl)
    hits = []
    for inv in bc.line_invariants(R):
        chars = {lab: bc._char(rep) for lab, rep in inv.entries}
        if polar:
            want = {"S": args.ls, "N": args.ln}
        else:
            want = {"d-1": args.ls}
        if any(_rotation_weight(chars[lab], groups[lab]) != l % m for lab, l in want.items()):
            continue
        if not polar and any(flag is not None and _is_trivial(chars[lab]) != (flag == "triv")
                             for lab, flag in (("d0", args.d0), ("d1", args.d1))):
            continue
        hits.append(inv)
    if not hits:
        raise ParseError("no admissible line invariant has these weights")
    if len(hits) > 1:
        raise ParseError(f"{len(hits)} line invariants match; pass --invariant to pick one")
    return hits[0]


def cmd_chern(args) -> dict:
    R = _group(args)
    if args.invariant:
        inv = _load_invariant(args.invariant)
        if inv.group != R:
            raise ParseError("invariant belongs to a different group")
    else:
        if not R.is_axial:
            raise ParseError("polyhedral rows need --invariant")
        inv = _shortcut_invariant(R, args)
    ok, clause = bc.validate_invariant(R, inv)
    if not ok:
        from .errors import InvalidInvariant
        raise InvalidInvariant(f"admissibility clause {clause} fails")
    doc = {"schema": SCHEMA, **bc.chern_of_line_invariant(R, inv).to_json(), "invariant": inv.to_json()}
    if args.oracle:
        data = oracle.build_line_clutching(R, inv, args.grid)
        doc["oracle"] = oracle.degree(data).to_json()
    return doc


def cmd_ext(args) -> dict:
    R = _group(args)
    N1 = _named_group(R, args.sub)
    N2 = _named_group(R, args.super)
    W = _parse_rep(N1, args.rep)
    exts = ct.extension_set(W, N2)
    doc = {
        "schema": SCHEMA,
        "N1": {"order": N1.order, "type": ct.type_name(N1)},
        "N2": {"order": N2.order, "type": ct.type_name(N2)},
        "W": W.to_json(),
        "extensions": [e.to_json() for e in exts],
        "count": len(exts),
    }
    if args.check:
        brute = oracle.brute_force_extensions(W, N2)
        doc["brute_force_agrees"] = [e.to_json() for e in brute] == doc["extensions"]
    return doc


def cmd_report(args) -> dict:
    R = _group(args)
    return bc.classification_report(R, args.max_dim, args.weight_window)


VERBS = {
    "recognize": cmd_recognize,
    "complex": cmd_complex,
    "tables": cmd_tables,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "chern": cmd_chern,
    "ext": cmd_ext,
    "report": cmd_report,
}


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "json")
    try:
        doc = VERBS[args.verb](args)
        code = 0
    except EquivectError as exc:
        doc = {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}
        code = 1
    text = render(doc, fmt)
    stdout.write(text + "\n")
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
