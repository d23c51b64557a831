"""Character tables, restriction, conjugation and extensions of representations.

Tables are built per abstract type (cyclic, dihedral, A4, S4, A5 and their
products with the centre {id, -id}) from canonical generators, never by a
general character-table algorithm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .cyclotomic import ONE, ZERO, Cyclotomic
from .errors import (
    NotASubgroup,
    NotFixedByG,
    NotNormal,
    QuotientNotCyclic,
    UnsupportedGroupType,
)
from .o3group import AxialElement, Group, element_order


# ---------------------------------------------------------------- characters

class Character:
    """Class function with cyclotomic values, one per conjugacy class."""

    __slots__ = ("group", "values", "label")

    def __init__(self, group: Group, values, label: str = "virtual"):
        self.group = group
        self.values = tuple(values)
        self.label = label

    @classmethod
    def from_function(cls, group: Group, f, label: str = "virtual") -> "Character":
        return cls(group, [f(cl[0]) for cl in group.classes], label)

    def __call__(self, g) -> Cyclotomic:
        return self.values[self.group.class_index(g)]

    @property
    def degree(self) -> int:
        return int(self(self.group.identity).rational_value())

    def __eq__(self, other):
        return (isinstance(other, Character) and self.group == other.group
                and all(x == y for x, y in zip(self.values, other.values)))

    def __hash__(self):
        return hash((self.group, self.label))

    def __add__(self, other: "Character") -> "Character":
        _same_group(self, other)
        return Character(self.group, [x + y for x, y in zip(self.values, other.values)])

    def __mul__(self, other: "Character") -> "Character":
        if isinstance(other, int):
            return Character(self.group, [x * other for x in self.values])
        _same_group(self, other)
        return Character(self.group, [x * y for x, y in zip(self.values, other.values)])

    __rmul__ = __mul__

    def dual(self) -> "Character":
        return Character(self.group, [x.conj() for x in self.values])

    def inner(self, other: "Character") -> Fraction:
        _same_group(self, other)
        tot = ZERO
        for cl, x, y in zip(self.group.classes, self.values, other.values):
            tot = tot + x * y.conj() * len(cl)
        return tot.rational_value() / self.group.order

    def to_json(self) -> dict:
        return {
            "group": self.group.family or f"order-{self.group.order}",
            "label": self.label,
            "values": [[cl[0].word(), str(v)] for cl, v in zip(self.group.classes, self.values)],
        }

    def __repr__(self):
        return f"Character({self.label}, deg {self.degree})"


def _same_group(x: Character, y: Character):
    if x.group != y.group:
        raise NotASubgroup("characters live on different groups")


# ---------------------------------------------------------------- identification

@dataclass(frozen=True)
class Structure:
    kind: str                  # 'C', 'D', 'A4', 'S4', 'A5'
    size: int                  # N for C_N, k for D_k
    central: bool              # G = G_rot x {id, -id}
    base: Group                # group the table is built on
    gens: tuple                # canonical generators of base


def _power_list(g, identity):
    out, h = [identity], g
    while h != identity:
        out.append(h)
        h = h * g
    return out


def _axial_structure(G: Group) -> tuple[str, int, tuple]:
    G0 = [g for g in G.elements if not g.refl]
    rest = [g for g in G.elements if g.refl]
    nontriv = [g for g in G0 if g.angle]
    r = min(nontriv, key=lambda g: (g.angle, g)) if nontriv else G.identity
    k = len(G0)
    if not rest:
        return "C", k, (r,)
    return "D", k, (r, min(rest))


def _poly_structure(G: Group) -> tuple[str, int, tuple]:
    order = G.order
    by_order = {}
    for g in G.elements:
        by_order.setdefault(element_order(g), []).append(g)
    if order in by_order:
        return "C", order, (by_order[order][0],)
    if order % 2 == 0 and order // 2 in by_order:
        k = order // 2
        r = by_order[k][0]
        cyc = set(_power_list(r, G.identity))
        s0 = min(g for g in G.elements if g not in cyc)
        return "D", k, (r, s0)
    kind = {12: "A4", 24: "S4", 60: "A5"}.get(order)
    if kind is None:
        raise UnsupportedGroupType(f"no supported abstract type of order {order}")
    return kind, order, ()


@lru_cache(maxsize=None)
def structure(G: Group) -> Structure:
    central = G.has_minus_id()
    base = G.rotation_subgroup() if central else G
    if base.order == 1:
        return Structure("C", 1, central, base, (base.identity,))
    if isinstance(base.identity, AxialElement):
        kind, size, gens = _axial_structure(base)
    else:
        kind, size, gens = _poly_structure(base)
    return Structure(kind, size, central, base, gens)


def type_name(G: Group) -> str:
    s = structure(G)
    core = {"C": f"C{s.size}", "D": f"D{s.size}"}.get(s.kind, s.kind)
    return core + ("xZ2" if s.central else "")


# ---------------------------------------------------------------- tables

def _cyclic_table(base: Group, N: int, r):
    pw = {h: i for i, h in enumerate(_power_list(r, base.identity))}
    return [(f"C{N}:w{j}", (lambda j: lambda g: Cyclotomic.zeta(N, j * pw[g]))(j)) for j in range(N)]


def _dihedral_table(base: Group, k: int, r, s0):
    rot = _power_list(r, base.identity)
    idx = {}
    for i, h in enumerate(rot):
        idx[h] = (i, 0)
        idx[h * s0] = (i, 1)
    sgn = lambda e: -1 if e else 1
    table = [
        (f"D{k}:triv", lambda g: ONE),
        (f"D{k}:sgn", lambda g: Cyclotomic.rational(sgn(idx[g][1]))),
    ]
    if k % 2 == 0:
        table.append((f"D{k}:sgnp", lambda g: Cyclotomic.rational((-1) ** idx[g][0])))
        table.append((f"D{k}:sgnpp",
                      lambda g: Cyclotomic.rational((-1) ** idx[g][0] * sgn(idx[g][1]))))
    for j in range(1, (k + 1) // 2):
        def v(g, j=j):
            i, e = idx[g]
            if e:
                return ZERO
            return Cyclotomic.zeta(k, i * j) + Cyclotomic.zeta(k, -i * j)
        table.append((f"D{k}:V{j}", v))
    return table


def _a4_table(base: Group):
    c = min(g for g in base.elements if element_order(g) == 3)
    cls_c = set(base.classes[base.class_index(c)])
    w = Cyclotomic.zeta(3)

    def lin(power):
        def f(g):
            o = element_order(g)
            if o != 3:
                return ONE
            return w if g in cls_c else w * w
        return (lambda g: f(g) if power == 1 else f(g).conj())

    three = lambda g: Cyclotomic.rational({1: 3, 2: -1, 3: 0}[element_order(g)])
    return [("A4:1", lambda g: ONE), ("A4:1a", lin(1)), ("A4:1b", lin(2)), ("A4:3", three)]


def _s4_table(base: Group):
    size = {g: len(cl) for cl in base.classes for g in cl}

    def key(g):
        o = element_order(g)
        if o == 2:
            return "t" if size[g] == 6 else "dt"
        return {1: "e", 3: "c3", 4: "c4"}[o]

    rows = {
        "S4:1": {"e": 1, "t": 1, "dt": 1, "c3": 1, "c4": 1},
        "S4:sgn": {"e": 1, "t": -1, "dt": 1, "c3": 1, "c4": -1},
        "S4:2": {"e": 2, "t": 0, "dt": 2, "c3": -1, "c4": 0},
        "S4:3": {"e": 3, "t": 1, "dt": -1, "c3": 0, "c4": -1},
        "S4:3p": {"e": 3, "t": -1, "dt": -1, "c3": 0, "c4": 1},
    }
    return [(lab, (lambda r: lambda g: Cyclotomic.rational(r[key(g)]))(r)) for lab, r in rows.items()]


def _a5_table(base: Group):
    g5 = min(g for g in base.elements if element_order(g) == 5)
    cls5 = set(base.classes[base.class_index(g5)])
    z = lambda k: Cyclotomic.zeta(5, k)
    phi = ONE + z(1) + z(4)
    psi = ONE - phi

    def key(g):
        o = element_order(g)
        if o == 5:
            return "5A" if g in cls5 else "5B"
        return o

    def row(vals):
        return lambda g: vals[key(g)] if isinstance(vals[key(g)], Cyclotomic) else Cyclotomic.rational(vals[key(g)])

    return [
        ("A5:1", row({1: 1, 2: 1, 3: 1, "5A": 1, "5B": 1})),
        ("A5:3a", row({1: 3, 2: -1, 3: 0, "5A": phi, "5B": psi})),
        ("A5:3b", row({1: 3, 2: -1, 3: 0, "5A": psi, "5B": phi})),
        ("A5:4", row({1: 4, 2: 0, 3: 1, "5A": -1, "5B": -1})),
        ("A5:5", row({1: 5, 2: 1, 3: -1, "5A": 0, "5B": 0})),
    ]


@lru_cache(maxsize=None)
def irreducibles(G: Group) -> tuple[Character, ...]:
    """Complete list of irreducible characters with canonical labels."""
    s = structure(G)
    base = s.base
    if s.kind == "C":
        table = _cyclic_table(base, s.size, s.gens[0])
    elif s.kind == "D":
        table = _dihedral_table(base, s.size, *s.gens)
    elif s.kind == "A4":
        table = _a4_table(base)
    elif s.kind == "S4":
        table = _s4_table(base)
    elif s.kind == "A5":
        table = _a5_table(base)
    else:  # pragma: no cover
        raise UnsupportedGroupType(s.kind)
    if not s.central:
        return tuple(Character.from_function(G, f, lab) for lab, f in table)
    mid = G.minus_id()
    out = []
    for lab, f in table:
        for suffix, eps in ((":+", 1), (":-", -1)):
            def h(g, f=f, eps=eps):
                return f(g) if g.det == 1 else f(mid * g) * eps
            out.append(Character.from_function(G, h, lab + suffix))
    return tuple(out)


def irreducible(G: Group, label: str) -> Character:
    for chi in irreducibles(G):
        if chi.label == label:
            return chi
    raise KeyError(f"{label!r} is not an irreducible label of {type_name(G)}")


def labels(G: Group) -> list[str]:
    return [c.label for c in irreducibles(G)]


def identify(chi: Character) -> Character:
    """Attach the canonical label when chi is irreducible."""
    for irr in irreducibles(chi.group):
        if irr == chi:
            return irr
    return chi


def trivial(G: Group) -> Character:
    return irreducibles(G)[0]


# ---------------------------------------------------------------- decompositions

@dataclass(frozen=True)
class RepDecomposition:
    """A representation up to isomorphism: irreducible labels with multiplicities."""

    group: Group
    counts: tuple  # ((label, mult), ...) in table order, mult > 0

    @classmethod
    def of(cls, group: Group, mults: dict | Iterable) -> "RepDecomposition":
        mults = dict(mults)
        order = labels(group)
        for lab in mults:
            if lab not in order:
                raise KeyError(f"{lab!r} is not an irreducible label of {type_name(group)}")
        return cls(group, tuple((lab, int(mults[lab])) for lab in order if mults.get(lab, 0) > 0))

    @classmethod
    def single(cls, chi: Character) -> "RepDecomposition":
        return cls.of(chi.group, {chi.label: 1})

    def as_dict(self) -> dict:
        return dict(self.counts)

    @property
    def dim(self) -> int:
        return sum(irreducible(self.group, lab).degree * m for lab, m in self.counts)

    def character(self) -> Character:
        vals = [ZERO] * len(self.group.classes)
        for lab, m in self.counts:
            chi = irreducible(self.group, lab)
            vals = [v + x * m for v, x in zip(vals, chi.values)]
        return Character(self.group, vals)

    def __add__(self, other: "RepDecomposition") -> "RepDecomposition":
        if self.group != other.group:
            raise NotASubgroup("decompositions over different groups")
        d = self.as_dict()
        for lab, m in other.counts:
            d[lab] = d.get(lab, 0) + m
        return RepDecomposition.of(self.group, d)

    def to_json(self) -> list:
        return [[lab, m] for lab, m in self.counts]

    def __repr__(self):
        return "+".join(f"{m}*{lab}" if m > 1 else lab for lab, m in self.counts) or "0"


def decompose(chi: Character) -> RepDecomposition:
    mults = {}
    for irr in irreducibles(chi.group):
        m = chi.inner(irr)
        if m.denominator != 1 or m < 0:
            raise ValueError(f"{chi} is not a genuine character (multiplicity {m})")
        if m:
            mults[irr.label] = int(m)
    return RepDecomposition.of(chi.group, mults)


def restrict(chi: Character, H: Group) -> Character:
    if not H.issubset(chi.group):
        raise NotASubgroup("restriction to a non-subgroup")
    return identify(Character.from_function(H, chi))


def restrict_rep(W: RepDecomposition, H: Group) -> RepDecomposition:
    return decompose(restrict(W.character(), H))


def conjugate_character(chi: Character, g) -> Character:
    """(g.chi)(k) = chi(g^-1 k g) on gKg^-1."""
    K = chi.group
    Kg = K.conjugate(g)
    gi = g.inverse()
    return identify(Character.from_function(Kg, lambda k: chi(gi * k * g)))


def conjugate_rep(W: RepDecomposition, g) -> RepDecomposition:
    return decompose(conjugate_character(W.character(), g))


def tensor(x: RepDecomposition, y: RepDecomposition) -> RepDecomposition:
    return decompose(x.character() * y.character())


def induce(chi: Character, G: Group) -> Character:
    H = chi.group
    if not H.issubset(G):
        raise NotASubgroup("induction from a non-subgroup")

    def val(g):
        tot = ZERO
        for x in G.elements:
            y = x.inverse() * g * x
            if y in H:
                tot = tot + chi(y)
        return tot * Fraction(1, H.order)

    return Character.from_function(G, val)


# ---------------------------------------------------------------- extensions

def quotient_generator(N0: Group, N2: Group):
    """Least a0 in N2 generating the cyclic quotient N2/N0, with its order m."""
    if not N0.issubset(N2):
        raise NotASubgroup("N0 is not contained in N2")
    if not N0.is_normal_in(N2):
        raise NotNormal("N0 is not normal in N2")
    m = N2.order // N0.order
    for g in N2.elements:
        k, h = 1, g
        while h not in N0:
            h = h * g
            k += 1
        if k == m:
            return g, m
    raise QuotientNotCyclic("N2/N0 is not cyclic")


def coset_index(N0: Group, a0, m: int):
    """Map each element of N2 to j with g in a0^j N0."""
    powers = [N0.identity]
    for _ in range(m - 1):
        powers.append(powers[-1] * a0)
    out = {}
    for j, p in enumerate(powers):
        for x in N0.elements:
            out[p * x] = j
    return out


def omega(N0: Group, N2: Group, l: int) -> Character:
    """The linear character of N2 pulled back from N2/N0, a0 -> zeta_m^l."""
    a0, m = quotient_generator(N0, N2)
    idx = coset_index(N0, a0, m)
    return Character.from_function(N2, lambda g: Cyclotomic.zeta(m, l * idx[g]), f"Omega({l})")


def extensions_of_irreducible(U: Character, N2: Group) -> list[Character]:
    """All irreducibles of N2 restricting to U, listed as U_bar (x) Omega(l)."""
    N0 = U.group
    a0, m = quotient_generator(N0, N2)
    for g in N2.elements:
        if conjugate_character(U, g) != U:
            raise NotFixedByG(f"{U.label} is moved by {g.word()}")
    exts = [chi for chi in irreducibles(N2) if restrict(chi, N0) == U]
    if not exts:
        return []
    base = exts[0]
    out = [identify(base * omega(N0, N2, l)) for l in range(m)]
    assert sorted(c.label for c in out) == sorted(c.label for c in exts)
    return out


def _restriction_rows(N1: Group, N2: Group):
    irr1 = labels(N1)
    rows = []
    for chi in irreducibles(N2):
        d = restrict_rep(RepDecomposition.single(chi), N1).as_dict()
        rows.append((chi.label, tuple(d.get(lab, 0) for lab in irr1)))
    return irr1, rows


def extension_set(W: RepDecomposition, N2: Group) -> list[RepDecomposition]:
    """Every N2-representation whose restriction to W.group is W."""
    N1 = W.group
    if not N1.issubset(N2):
        raise NotASubgroup("W lives on a group not contained in N2")
    irr1, rows = _restriction_rows(N1, N2)
    target = tuple(W.as_dict().get(lab, 0) for lab in irr1)
    sols = []

    def rec(i, remaining, chosen):
        if not any(remaining):
            sols.append(dict(chosen))
            return
        if i == len(rows):
            return
        lab, vec = rows[i]
        cap = min((r // v for r, v in zip(remaining, vec) if v), default=0)
        for k in range(cap, -1, -1):
            rem = tuple(r - k * v for r, v in zip(remaining, vec))
            if k:
                chosen[lab] = k
            rec(i + 1, rem, chosen)
            chosen.pop(lab, None)

    rec(0, target, {})
    out = [RepDecomposition.of(N2, s) for s in sols]
    return sorted(out, key=lambda r: r.to_json())


def count_components_of_A(N2: Group, N1: Group, W: RepDecomposition, condition: str = "F2",
                          W_other: RepDecomposition | None = None) -> int:
    """Number of path components of the pointwise clutching space."""
    from .errors import ConditionViolation

    if condition == "F2":
        if not N1.issubset(N2) or W.group != N1:
            raise ConditionViolation("F2 needs W over a subgroup N1 of N2")
        return len(extension_set(W, N2))
    if condition == "F1":
        if N1 != N2 or W_other is None or W.group != N2 or W_other.group != N2:
            raise ConditionViolation("F1 needs two fibers over N2")
        return 1 if W == W_other else 0
    raise ConditionViolation(f"unknown condition {condition!r}")


# camel-case aliases matching the operation names used in the docs
extensionsOfIrreducible = extensions_of_irreducible
extensionSet = extension_set
countComponentsOfA = count_components_of_A
conjugateCharacter = conjugate_character


# ---------------------------------------------------------------- circle groups

DEFAULT_WINDOW = 16


@dataclass(frozen=True)
class CircleIrrep:
    """Irreducible of SO(2), of an O(2)-type group, or of their products with Z2.

    ``kind`` is 'SO2' (weight k), 'O2' (triv, det or V_k with k >= 1); ``eps`` is
    the sign on -id for the product types, 0 when -id is absent.
    """

    kind: str
    name: str
    weight: int = 0
    eps: int = 0

    @property
    def label(self) -> str:
        if self.kind == "SO2":
            base = f"SO2:w{self.weight}"
        else:
            base = f"O2:V{self.weight}" if self.name == "V" else f"O2:{self.name}"
        return base + {0: "", 1: ":+", -1: ":-"}[self.eps]

    @property
    def degree(self) -> int:
        return 2 if self.name == "V" else 1

    def value(self, g: AxialElement) -> Cyclotomic:
        sign = 1
        if g.sign and self.eps:
            sign = self.eps
            g = g * AxialElement(1, 0, Fraction(0))
        th = g.angle
        rot = lambda k: Cyclotomic.zeta(th.denominator, k * th.numerator)
        if self.kind == "SO2":
            return rot(self.weight) * sign
        if self.name == "triv":
            v = ONE
        elif self.name == "det":
            v = Cyclotomic.rational(-1 if g.refl else 1)
        else:
            v = ZERO if g.refl else rot(self.weight) + rot(-self.weight)
        return v * sign


def circle_kind(pairs: frozenset) -> tuple[str, bool]:
    """Abstract type of a 1-dim group given its (refl, sign) component pairs."""
    refl = any(r for r, _ in pairs)
    if len(pairs) == 4:
        return "O2", True
    if (0, 1) in pairs:
        return "SO2", True
    return ("O2" if refl else "SO2"), False


def circle_irreps(pairs: frozenset, window: int = DEFAULT_WINDOW) -> list[CircleIrrep]:
    kind, central = circle_kind(frozenset(pairs))
    if kind == "SO2":
        base = [CircleIrrep("SO2", "w", k) for k in range(-window, window + 1)]
    else:
        base = [CircleIrrep("O2", "triv"), CircleIrrep("O2", "det")]
        base += [CircleIrrep("O2", "V", k) for k in range(1, window + 1)]
    if not central:
        return base
    return [CircleIrrep(c.kind, c.name, c.weight, e) for c in base for e in (1, -1)]


def circle_irrep_from_label(label: str) -> CircleIrrep:
    import re as _re
    m = _re.fullmatch(r"(SO2|O2):(w-?\d+|triv|det|V\d+)(:[+-])?", label)
    if not m:
        raise KeyError(f"bad circle irrep label {label!r}")
    kind, body, suf = m.groups()
    eps = {None: 0, ":+": 1, ":-": -1}[suf]
    if body.startswith("w"):
        return CircleIrrep("SO2", "w", int(body[1:]), eps)
    if body.startswith("V"):
        return CircleIrrep("O2", "V", int(body[1:]), eps)
    return CircleIrrep("O2", body, 0, eps)


@dataclass(frozen=True)
class CircleRep:
    """Finite direct sum of circle irreducibles, as ((label, mult), ...)."""

    pairs: frozenset          # component pairs of the group it lives on
    counts: tuple

    @classmethod
    def of(cls, pairs, mults: dict) -> "CircleRep":
        return cls(frozenset(pairs), tuple(sorted((k, int(v)) for k, v in mults.items() if v > 0)))

    @property
    def dim(self) -> int:
        return sum(circle_irrep_from_label(lab).degree * m for lab, m in self.counts)

    def value(self, g) -> Cyclotomic:
        tot = ZERO
        for lab, m in self.counts:
            tot = tot + circle_irrep_from_label(lab).value(g) * m
        return tot

    def restrict(self, H: Group) -> RepDecomposition:
        return decompose(Character.from_function(H, self.value))

    def to_json(self) -> list:
        return [[lab, m] for lab, m in self.counts]

    def __repr__(self):
        return "+".join(f"{m}*{lab}" if m > 1 else lab for lab, m in self.counts) or "0"
