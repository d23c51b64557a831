"""Isotropy invariants of equivariant bundles over the sphere and their Chern data.

An invariant is either a polar pair (W_S, W_N) of representations of R, or a
triple of representations of the stabilizers at d-1, d0, d1.  Everything here
works with the effective action (trivial kernel), so the rank scale is just a
multiplier carried along for reporting.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import chartheory as ct
from .cellcomplex import complex_for, fundamental_domain, point_vector, stabilizer_of_label, _meet
from .errors import (
    InvalidInvariant,
    NoLineDecomposition,
    NotLineInvariant,
    ParseError,
    UnsupportedFamily,
    WindowTooSmall,
    WrongStabilizerGroup,
)
from .o3group import (
    AxialElement,
    Group,
    OneDimGroup,
    a,
    B,
    canonical_family,
    construct_group,
    element_order,
    one_dim_group,
    ONE_DIM_FAMILIES,
    row_tag,
)

POLAR = ("Zn", "an_minus_b", "SO2", "SO2_minus_b")
SCHEMA = "equivect/1"

KIND_TAGS = {
    "ChernIndexed": "isotropy-and-chern",
    "TwoSameChern": "two-per-isotropy",
    "Unique": "isotropy-only",
}


# ---------------------------------------------------------------- rows and dispatch

def group_for(family: str, n: int | None = None):
    family = canonical_family(family, n)
    if family in ONE_DIM_FAMILIES:
        return one_dim_group(family)
    return construct_group(family, n)


def _row(R) -> tuple[str, int | None]:
    if isinstance(R, OneDimGroup):
        return R.family, None
    return R.family, R.n


def fiber_kind(family: str, n: int | None = None) -> str:
    family = canonical_family(family, n)
    if family in ("Zn", "Dn", "T", "O", "I"):
        return "ChernIndexed"
    if family == "ZnxZ" and n % 2 == 1:
        return "TwoSameChern"
    if family == "minus_an" and (n // 2) % 2 == 0:
        return "TwoSameChern"
    return "Unique"


def is_polar(R) -> bool:
    return _row(R)[0] in POLAR


def point_labels(R) -> tuple[str, ...]:
    return ("S", "N") if is_polar(R) else ("d-1", "d0", "d1")


@lru_cache(maxsize=None)
def _point_groups_cached(R) -> tuple:
    fam = _row(R)[0]
    if fam in ("SO3", "O3"):
        # all three points are v0; its stabilizer is abstractly SO(2) resp. O(2)
        H = one_dim_group("SO2" if fam == "SO3" else "O2")
        return (("d-1", H), ("d0", H), ("d1", H))
    if is_polar(R):
        return (("S", R), ("N", R))
    return tuple((lab, stabilizer_of_label(R, lab)) for lab in ("d-1", "d0", "d1"))


def point_groups(R) -> dict:
    return dict(_point_groups_cached(R))


def _is_circle(G) -> bool:
    return isinstance(G, OneDimGroup)


# ---------------------------------------------------------------- invariants

@dataclass(frozen=True)
class BundleInvariant:
    group: object                 # Group or OneDimGroup
    entries: tuple                # ((point label, rep), ...)
    rank_scale: int = 1

    @property
    def shape(self) -> str:
        return "polar" if self.entries[0][0] == "S" else "triple"

    def entry(self, label: str):
        return dict(self.entries)[label]

    @property
    def dims(self) -> tuple:
        return tuple(rep.dim for _, rep in self.entries)

    @property
    def dim(self) -> int:
        return max(self.dims)

    def is_line(self) -> bool:
        return all(d == 1 for d in self.dims)

    def __add__(self, other: "BundleInvariant") -> "BundleInvariant":
        if self.group != other.group:
            raise InvalidInvariant("sum of invariants over different groups")
        out = []
        for (lab, x), (_, y) in zip(self.entries, other.entries):
            if isinstance(x, ct.CircleRep):
                d = dict(x.counts)
                for k, v in y.counts:
                    d[k] = d.get(k, 0) + v
                out.append((lab, ct.CircleRep.of(x.pairs, d)))
            else:
                out.append((lab, x + y))
        return BundleInvariant(self.group, tuple(out), self.rank_scale)

    def to_json(self) -> dict:
        fam, n = _row(self.group)
        g = {"family": fam}
        if n is not None:
            g["n"] = n
        d = {
            "group": g,
            "shape": self.shape,
            "entries": {lab: rep.to_json() for lab, rep in self.entries},
        }
        if self.rank_scale != 1:
            d["rank_scale"] = self.rank_scale
        return d

    @classmethod
    def from_json(cls, data) -> "BundleInvariant":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invariant is not valid JSON: {exc}") from exc
        try:
            g = data["group"]
            R = group_for(g["family"], g.get("n"))
            raw = data["entries"]
            shape = data.get("shape")
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed invariant: {exc}") from exc
        groups = point_groups(R)
        if set(raw) != set(groups):
            raise ParseError(f"entries must be exactly {sorted(groups)}")
        if shape is not None and shape != ("polar" if "S" in groups else "triple"):
            raise ParseError(f"shape {shape!r} does not fit {g['family']}")
        entries = []
        for lab, G in groups.items():
            mults = {}
            for item in raw[lab]:
                mults[item[0]] = mults.get(item[0], 0) + int(item[1])
            entries.append((lab, make_rep(G, mults)))
        return cls(R, tuple(entries), int(data.get("rank_scale", 1)))

    def __repr__(self):
        inner = ", ".join(f"{lab}={rep!r}" for lab, rep in self.entries)
        return f"BundleInvariant({_row(self.group)[0]}: {inner})"


def make_rep(G, mults: dict):
    if _is_circle(G):
        for lab in mults:
            ct.circle_irrep_from_label(lab)
        return ct.CircleRep.of(G.pairs, mults)
    try:
        return ct.RepDecomposition.of(G, mults)
    except KeyError as exc:
        raise WrongStabilizerGroup(str(exc)) from exc


def make_invariant(R, entries: dict, rank_scale: int = 1) -> BundleInvariant:
    """Build an invariant from {point label: {irrep label: mult}} (or a single label)."""
    groups = point_groups(R)
    if set(entries) != set(groups):
        raise WrongStabilizerGroup(f"entries must be exactly {sorted(groups)}")
    out = []
    for lab, G in groups.items():
        e = entries[lab]
        if isinstance(e, str):
            e = {e: 1}
        elif isinstance(e, (ct.RepDecomposition, ct.CircleRep)):
            e = dict(e.counts)
        out.append((lab, make_rep(G, e)))
    return BundleInvariant(R, tuple(out), rank_scale)


# ---------------------------------------------------------------- restriction helpers

@lru_cache(maxsize=None)
def _restrict(rep, H):
    if isinstance(rep, ct.CircleRep):
        return rep.restrict(H)
    if rep.group == H:
        return rep
    return ct.restrict_rep(rep, H)


@lru_cache(maxsize=None)
def _conj(rep, g):
    return ct.conjugate_rep(rep, g)


def _mapping(R, p, q):
    if isinstance(R, OneDimGroup):
        return None
    for g in R.elements:
        if g.act(p) == q:
            return g
    return None


def validate_invariant(R, inv: BundleInvariant) -> tuple[bool, str | None]:
    """Check the admissibility clauses; returns (ok, violated clause)."""
    groups = point_groups(R)
    if inv.group != R or tuple(lab for lab, _ in inv.entries) != tuple(groups):
        raise WrongStabilizerGroup("invariant entries do not match the points of R")
    for lab, rep in inv.entries:
        G = groups[lab]
        if _is_circle(G):
            if not isinstance(rep, ct.CircleRep) or rep.pairs != G.pairs:
                raise WrongStabilizerGroup(f"entry {lab} lives on the wrong group")
        elif getattr(rep, "group", None) != G:
            raise WrongStabilizerGroup(f"entry {lab} lives on the wrong group")
    # clause i: isotypical over the (trivial) kernel; nothing to check
    fam = _row(R)[0]
    if fam in ("SO3", "O3"):
        reps = [rep for _, rep in inv.entries]
        return (True, None) if reps[0] == reps[1] == reps[2] else (False, "ii")
    fd = fundamental_domain(R)
    if inv.shape == "polar":
        WS, WN = inv.entry("S"), inv.entry("N")
        for lab in ("d0", "d1"):
            H = stabilizer_of_label(R, lab)
            if _restrict(WS, H) != _restrict(WN, H):
                return False, "ii"
        return True, None
    W = dict(inv.entries)
    if fd.d0 == fd.d1:
        if W["d0"] != W["d1"]:
            return False, "ii"
    else:
        g = _mapping(R, fd.d0, fd.d1)
        if g is not None and _conj(W["d0"], g) != W["d1"]:
            return False, "ii"
    for x, y in (("d-1", "d0"), ("d-1", "d1"), ("d0", "d1")):
        H = _meet(groups[x], groups[y])
        if _restrict(W[x], H) != _restrict(W[y], H):
            return False, "iii"
    return True, None


validateInvariant = validate_invariant


# ---------------------------------------------------------------- enumeration

def _irreps_at(G, window: int):
    if _is_circle(G):
        return [(c.label, c.degree) for c in ct.circle_irreps(G.pairs, window)]
    return [(c.label, c.degree) for c in ct.irreducibles(G)]


def reps_of_dim(G, d: int, window: int = ct.DEFAULT_WINDOW) -> list:
    irr = _irreps_at(G, window)
    out = []

    def rec(i, left, chosen):
        if left == 0:
            out.append(make_rep(G, dict(chosen)))
            return
        if i == len(irr):
            return
        lab, deg = irr[i]
        for k in range(left // deg, -1, -1):
            if k:
                chosen[lab] = k
            rec(i + 1, left - k * deg, chosen)
            chosen.pop(lab, None)

    rec(0, d, {})
    return out


@dataclass
class Enumeration:
    invariants: list
    truncated: bool = False
    window: int | None = None

    def __len__(self):
        return len(self.invariants)

    def __iter__(self):
        return iter(self.invariants)

    def __getitem__(self, i):
        return self.invariants[i]


def _enumerate_dim(R, d: int, window: int) -> list:
    groups = point_groups(R)
    labs = tuple(groups)
    cands = {lab: reps_of_dim(G, d, window) for lab, G in groups.items()}
    out = []
    fam = _row(R)[0]
    if fam in ("SO3", "O3"):
        return [BundleInvariant(R, tuple((lab, w) for lab in labs)) for w in cands["d-1"]]
    if labs == ("S", "N"):
        H0, H1 = (stabilizer_of_label(R, x) for x in ("d0", "d1"))
        buckets = {}
        for w in cands["N"]:
            buckets.setdefault((_restrict(w, H0), _restrict(w, H1)), []).append(w)
        for ws in cands["S"]:
            for wn in buckets.get((_restrict(ws, H0), _restrict(ws, H1)), []):
                out.append(BundleInvariant(R, (("S", ws), ("N", wn))))
        return out
    for wm in cands["d-1"]:
        for w0 in cands["d0"]:
            for w1 in cands["d1"]:
                inv = BundleInvariant(R, (("d-1", wm), ("d0", w0), ("d1", w1)))
                if validate_invariant(R, inv)[0]:
                    out.append(inv)
    return out


def enumerate_invariants(R, max_dim: int, window: int = ct.DEFAULT_WINDOW,
                         allow_truncation: bool = False) -> Enumeration:
    """All admissible invariants whose entries have dimension 1..max_dim."""
    out = []
    truncated = False
    for d in range(1, max_dim + 1):
        got = _enumerate_dim(R, d, window)
        if isinstance(R, OneDimGroup) and len(_enumerate_dim(R, d, window + 1)) != len(got):
            truncated = True
        out.extend(got)
    if truncated and not allow_truncation:
        raise WindowTooSmall(f"weight window {window} truncates the invariants of {_row(R)[0]}")
    return Enumeration(out, truncated, window if isinstance(R, OneDimGroup) else None)


enumerateInvariants = enumerate_invariants


def generator_count_formula(R) -> int:
    """Closed-form number of one-dimensional invariants from stabilizer orders."""
    if _row(R)[0] == "Zn":
        return R.stabilizer(complex_for(R).labels["S"]).order * R.stabilizer(complex_for(R).labels["N"]).order
    return math.prod(stabilizer_of_label(R, lab).order for lab in ("d-1", "d0", "d1"))


@lru_cache(maxsize=None)
def line_invariants(R) -> tuple:
    return tuple(enumerate_invariants(R, 1).invariants)


# ---------------------------------------------------------------- Chern classes of line invariants

@dataclass(frozen=True)
class ChernValue:
    value: int
    modulus: int               # 0 means an exact integer

    def to_json(self) -> dict:
        return {"c1_mod": self.value, "modulus": self.modulus}


def _char(rep):
    (lab, _), = rep.counts
    return ct.irreducible(rep.group, lab)


def _root(chi, g, n: int) -> int:
    k = chi(g).root_index(n)
    assert k is not None
    return k


def _sgn(chi, g) -> int:
    return 1 if chi(g) == 1 else -1


def chern_of_line_invariant(R, inv: BundleInvariant) -> ChernValue:
    if not inv.is_line():
        raise NotLineInvariant("every entry must be one-dimensional")
    fam, n = _row(R)
    if fam == "Zn":
        lS = _root(_char(inv.entry("S")), a(n), n)
        lN = _root(_char(inv.entry("N")), a(n), n)
        return ChernValue((lN - lS) % n, n)
    if fam == "Dn":
        lS = _root(_char(inv.entry("d-1")), a(n), n)
        e0 = _sgn(_char(inv.entry("d0")), B)
        e1 = _sgn(_char(inv.entry("d1")), a(n) * B)
        return ChernValue((-2 * lS + (0 if e0 == e1 else n)) % (2 * n), 2 * n)
    if fiber_kind(fam, n) == "TwoSameChern":
        return ChernValue(0, 0)
    if fam in ("T", "O", "I"):
        return ChernValue(*_sylow_chern(R, inv))
    raise UnsupportedFamily(f"no line-bundle Chern formula for {fam}")


chernOfLineInvariant = chern_of_line_invariant


# -- polyhedral rows through Sylow subgroups

def special_points(R) -> list:
    cx = complex_for(R)
    return list(cx.vertices) + list(cx.edge_points) + list(cx.face_points)


def _vec(R, p) -> np.ndarray:
    return point_vector(p, complex_for(R).element_kind)


def _find_point(R, v) -> object:
    for p in special_points(R):
        if np.linalg.norm(_vec(R, p) - v) < 1e-7:
            return p
    raise AssertionError("vector is not a special point")


def turns_about(g, v: np.ndarray) -> float:
    """Rotation angle of a rotation g about the unit vector v, in turns (right-hand rule)."""
    u = np.cross(v, [1.0, 0, 0])
    if np.linalg.norm(u) < 1e-6:
        u = np.cross(v, [0, 1.0, 0])
    u = u / np.linalg.norm(u)
    w = g.matrix() @ u
    ang = math.atan2(float(np.dot(v, np.cross(u, w))), float(np.dot(u, w)))
    return (ang / (2 * math.pi)) % 1.0


def _power(g, k):
    out = g * g.inverse()
    for _ in range(k):
        out = out * g
    return out


def isotropy_character(R, inv: BundleInvariant, p) -> ct.Character:
    """Character of the fiber at a special point p, transported from d-1, d0, d1."""
    fd = fundamental_domain(R)
    for lab, d in (("d-1", fd.d_minus1), ("d0", fd.d0), ("d1", fd.d1)):
        g = _mapping(R, d, p)
        if g is not None:
            chi = _char(inv.entry(lab))
            gi = g.inverse()
            return ct.Character.from_function(R.stabilizer(p), lambda k: chi(gi * k * g))
    raise InvalidInvariant("point is not in the orbit of d-1, d0 or d1")


def sylow_subgroup(R: Group, p: int) -> Group:
    target = 1
    while R.order % (target * p) == 0:
        target *= p
    P = Group([R.identity])
    for g in R.elements:
        if g in P or target % element_order(g):
            continue
        Q = R.subgroup(list(P.elements) + [g])
        if target % Q.order == 0:
            P = Q
        if P.order == target:
            return P
    raise AssertionError("no Sylow subgroup found")


def _fixed_point(R, g):
    for p in special_points(R):
        if g.act(p) == p:
            return p
    raise AssertionError("rotation without a special fixed point")


def _oriented_generator(g, v, m):
    """Power of g rotating by +1/m about v."""
    j = round(turns_about(g, v) * m) % m
    return _power(g, pow(j, -1, m))


def _cyclic_sylow_residue(R, inv, P) -> tuple[int, int]:
    p = P.order
    g = min(x for x in P.elements if element_order(x) == p)
    xN = _fixed_point(R, g)
    vN = _vec(R, xN)
    g = _oriented_generator(g, vN, p)
    xS = _find_point(R, -vN)
    lN = _root(isotropy_character(R, inv, xN), g, p)
    lS = _root(isotropy_character(R, inv, xS), g, p)
    return (lN - lS) % p, p


def _dihedral_sylow_residue(R, inv, P) -> tuple[int, int]:
    m = P.order // 2
    g = min(x for x in P.elements if element_order(x) == m)
    xN = _fixed_point(R, g)
    vN = _vec(R, xN)
    if m > 2:
        g = _oriented_generator(g, vN, m)
    cyc = {_power(g, k) for k in range(m)}
    bp = min(x for x in P.elements if x not in cyc)
    x0 = _fixed_point(R, bp)
    v0 = _vec(R, x0)
    th = math.pi / m
    v1 = math.cos(th) * v0 + math.sin(th) * np.cross(vN, v0)
    x1 = _find_point(R, v1)
    gb = g * bp
    assert gb.act(x1) == x1
    xS = _find_point(R, -vN)
    lS = _root(isotropy_character(R, inv, xS), g, m)
    e0 = _sgn(isotropy_character(R, inv, x0), bp)
    e1 = _sgn(isotropy_character(R, inv, x1), gb)
    return (-2 * lS + (0 if e0 == e1 else m)) % (2 * m), 2 * m


def _crt(residues) -> tuple[int, int]:
    x, mod = 0, 1
    for r, m in residues:
        for k in range(m):
            if (x + k * mod) % m == r:
                x += k * mod
                break
        mod *= m
    return x % mod, mod


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while n > 1:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    return out


def sylow_residues(R, inv) -> list[tuple[int, int]]:
    out = []
    for p in _primes(R.order):
        P = sylow_subgroup(R, p)
        out.append(_dihedral_sylow_residue(R, inv, P) if p == 2 else _cyclic_sylow_residue(R, inv, P))
    return out


def _sylow_chern(R, inv) -> tuple[int, int]:
    return _crt(sylow_residues(R, inv))


# ---------------------------------------------------------------- k0 and fibers

def _as_counts(inv: BundleInvariant) -> tuple:
    return tuple(tuple(sorted(rep.counts)) for _, rep in inv.entries)


def line_decompositions(R, inv: BundleInvariant, limit: int | None = None) -> list[list]:
    """Multisets of line invariants summing entrywise to inv (up to ``limit`` of them)."""
    lines = line_invariants(R)
    lc = [[dict(rep.counts) for _, rep in L.entries] for L in lines]
    target = [dict(rep.counts) for _, rep in inv.entries]
    d = inv.dim
    if any(rep.dim != d for _, rep in inv.entries):
        return []
    out = []

    def fits(i, rem):
        return all(rem[j].get(lab, 0) >= 1 for j, e in enumerate(lc[i]) for lab in e)

    def rec(start, rem, chosen):
        if limit is not None and len(out) >= limit:
            return
        if len(chosen) == d:
            out.append([lines[i] for i in chosen])
            return
        for i in range(start, len(lines)):
            if fits(i, rem):
                new = [dict(r) for r in rem]
                for j, e in enumerate(lc[i]):
                    for lab in e:
                        new[j][lab] -= 1
                rec(i, new, chosen + [i])

    rec(0, target, [])
    return out


def k0_of_invariant(R, inv: BundleInvariant) -> int:
    fam, n = _row(R)
    if fiber_kind(fam, n) != "ChernIndexed":
        raise UnsupportedFamily(f"k0 is only defined for Chern-indexed rows, not {fam}")
    dec = line_decompositions(R, inv, limit=1)
    if not dec:
        raise NoLineDecomposition(f"{inv!r} is not a sum of line invariants")
    l_R = fundamental_domain(R).l_R
    return sum(chern_of_line_invariant(R, L).value for L in dec[0]) % l_R


k0OfInvariant = k0_of_invariant


@dataclass(frozen=True)
class FiberDescription:
    kind: str
    theorem: str
    l_R: int | None = None
    k0: int | None = None
    count: int | None = None          # elements in the fiber when finite
    rank_scale: int = 1

    def to_json(self) -> dict:
        d = {"kind": self.kind, "theorem": self.theorem}
        if self.kind == "ChernIndexed":
            d["l_R"] = self.l_R
            d["chern_classes"] = (f"{self.rank_scale}*({self.l_R}*k + {self.k0})"
                                  if self.k0 is not None else None)
            d["k0"] = self.k0
        else:
            d["count"] = self.count
        return d


def classify_fiber(R, inv: BundleInvariant | None = None) -> FiberDescription:
    """Shape of the preimage of an invariant; inv=None gives the row-level dispatch."""
    fam, n = _row(R)
    kind = fiber_kind(fam, n)
    if inv is not None:
        ok, clause = validate_invariant(R, inv)
        if not ok:
            raise InvalidInvariant(f"admissibility clause {clause} fails")
    if kind == "ChernIndexed":
        l_R = fundamental_domain(R).l_R
        k0 = k0_of_invariant(R, inv) if inv is not None and inv.rank_scale == 1 else None
        return FiberDescription(kind, KIND_TAGS[kind], l_R, k0,
                                rank_scale=inv.rank_scale if inv is not None else 1)
    return FiberDescription(kind, KIND_TAGS[kind], count=2 if kind == "TwoSameChern" else 1)


classifyFiber = classify_fiber


# ---------------------------------------------------------------- report

def _group_summary(G) -> dict:
    if isinstance(G, OneDimGroup):
        return {"family": G.family, "order": None}
    return {
        "order": G.order,
        "type": ct.type_name(G),
        "generators": [g.word() for g in G.generators()],
    }


def classification_report(R, max_dim: int = 1, window: int = ct.DEFAULT_WINDOW) -> dict:
    fam, n = _row(R)
    fd = fundamental_domain(R)
    rep = {
        "schema": SCHEMA,
        "row": {"family": fam, "n": n, "tag": row_tag(fam, n) if n is not None else fam},
        "D_R": fd.to_dict(),
        "shape": "polar" if is_polar(R) else "triple",
        "stabilizers": {lab: _group_summary(G) for lab, G in point_groups(R).items()},
    }
    if not isinstance(R, OneDimGroup):
        cx = complex_for(R)
        rep["complex"] = {"name": cx.name, "counts": dict(zip("VEF", cx.counts())), "euler": cx.euler}
        rep["l_R"] = fd.l_R
        rep["order"] = R.order
    fiber = classify_fiber(R)
    rep["fiber"] = fiber.to_json()
    if fam in ("SO3", "O3"):
        rep["fiber"]["note"] = "invariants are equal triples over the stabilizer of v0"
    en = enumerate_invariants(R, max_dim, window, allow_truncation=True)
    rep["truncated"] = en.truncated
    if isinstance(R, OneDimGroup):
        rep["weight_window"] = window
    rep["invariant_counts"] = {str(d): sum(1 for x in en if x.dim == d) for d in range(1, max_dim + 1)}
    rep["dim1_invariants"] = rep["invariant_counts"].get("1", 0)
    if not isinstance(R, OneDimGroup) and fiber.kind != "Unique":
        rep["dim1_formula"] = generator_count_formula(R)
    items = []
    for inv in en:
        item = {"invariant": inv.to_json()}
        if fiber.kind == "ChernIndexed":
            item["k0"] = k0_of_invariant(R, inv)
        elif fiber.kind == "TwoSameChern" and inv.is_line():
            item["c1"] = 0
        items.append(item)
    rep["invariants"] = items
    return rep


classificationReport = classification_report
