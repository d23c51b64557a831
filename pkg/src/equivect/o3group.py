"""Exact elements and finite subgroups of O(3), plus conjugacy recognition.

Axial elements are stored as ``(sign, refl, angle)`` meaning
``(-id)^sign * b^refl * a(angle)`` where ``a(angle)`` is the rotation about the
z-axis by ``angle`` full turns (an exact Fraction) and ``b`` is the half-turn
about the x-axis.  Polyhedral elements are a vertex permutation of the
octahedron or icosahedron together with a bit for ``-id``.
"""
from __future__ import annotations

import ast
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    AmbientMismatch,
    IllegalFamilyParameter,
    NotASubgroup,
    ParseError,
    UnknownPointLabel,
)

_TOL = 1e-9


# ---------------------------------------------------------------- points

@dataclass(frozen=True, order=True)
class AxialPoint:
    """Point of the sphere in (longitude, latitude) turns; poles have t = 0."""

    t: Fraction
    lat: Fraction = Fraction(0)

    def __post_init__(self):
        lat = Fraction(self.lat)
        t = Fraction(self.t) % 1
        if abs(lat) == Fraction(1, 4):
            t = Fraction(0)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "lat", lat)

    def vector(self) -> np.ndarray:
        th, ph = 2 * math.pi * float(self.t), 2 * math.pi * float(self.lat)
        return np.array([math.cos(ph) * math.cos(th), math.cos(ph) * math.sin(th), math.sin(ph)])


SOUTH = AxialPoint(Fraction(0), Fraction(-1, 4))
NORTH = AxialPoint(Fraction(0), Fraction(1, 4))

Point = Union[AxialPoint, frozenset]


# ---------------------------------------------------------------- axial elements

@dataclass(frozen=True, order=True)
class AxialElement:
    sign: int = 0
    refl: int = 0
    angle: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "sign", int(self.sign) % 2)
        object.__setattr__(self, "refl", int(self.refl) % 2)
        object.__setattr__(self, "angle", Fraction(self.angle) % 1)

    kind = "axial"

    def __mul__(self, other: "AxialElement") -> "AxialElement":
        if not isinstance(other, AxialElement):
            raise AmbientMismatch(f"cannot multiply {self!r} by {other!r}")
        ang = (-self.angle if other.refl else self.angle) + other.angle
        return AxialElement(self.sign ^ other.sign, self.refl ^ other.refl, ang)

    def inverse(self) -> "AxialElement":
        if self.refl:
            return self
        return AxialElement(self.sign, 0, -self.angle)

    @property
    def det(self) -> int:
        return -1 if self.sign else 1

    def is_identity(self) -> bool:
        return not (self.sign or self.refl or self.angle)

    def rot(self, N: int) -> int:
        k = self.angle * N
        if k.denominator != 1:
            raise AmbientMismatch(f"angle {self.angle} is not a multiple of 1/{N}")
        return int(k) % N

    def act(self, p: AxialPoint) -> AxialPoint:
        t, lat = p.t + self.angle, p.lat
        if self.refl:
            t, lat = -t, -lat
        if self.sign:
            t, lat = t + Fraction(1, 2), -lat
        return AxialPoint(t, lat)

    def matrix(self) -> np.ndarray:
        th = 2 * math.pi * float(self.angle)
        c, s = math.cos(th), math.sin(th)
        m = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        if self.refl:
            m = np.diag([1.0, -1.0, -1.0]) @ m
        return -m if self.sign else m

    def word(self) -> str:
        parts = []
        if self.angle:
            q = self.angle
            parts.append(f"a_{q.denominator}" + (f"^{q.numerator}" if q.numerator != 1 else ""))
        if self.refl:
            parts.append("b")
        body = " ".join(parts) if parts else ("id" if not self.sign else "")
        if self.sign:
            return "-id" if not parts else "-" + body
        return body

    def __repr__(self):
        return f"<{self.word()}>"


AXIAL_ID = AxialElement()
MINUS_ID = AxialElement(1, 0, 0)
B = AxialElement(0, 1, 0)


def a(n: int, k: int = 1) -> AxialElement:
    return AxialElement(0, 0, Fraction(k, n))


# ---------------------------------------------------------------- polyhedra

class _Solid:
    """Vertex data and rotation group of the octahedron ('O') or icosahedron ('I')."""

    def __init__(self, kind: str):
        self.kind = kind
        if kind == "O":
            pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)]
            self.coords = np.array(pts, dtype=float)
        else:
            phi = (1 + math.sqrt(5)) / 2
            pts = []
            for s1 in (1, -1):
                for s2 in (1, -1):
                    pts += [(0, s1, s2 * phi), (s1, s2 * phi, 0), (s2 * phi, 0, s1)]
            c = np.array(pts, dtype=float)
            self.coords = c / np.linalg.norm(c[0])
        nv = len(self.coords)
        self.antipode = tuple(self.index_of(-self.coords[i]) for i in range(nv))
        d = self.coords @ self.coords.T
        near = max(d[0][j] for j in range(1, nv) if j != self.antipode[0])
        self.neighbors = tuple(
            tuple(j for j in range(nv) if j != i and abs(d[i][j] - near) < 1e-6) for i in range(nv)
        )
        self.rotations: dict[tuple, np.ndarray] = {}
        src = self._frame(0, self.neighbors[0][0])
        for u in range(nv):
            for w in self.neighbors[u]:
                m = self._frame(u, w) @ src.T
                self.rotations[self.perm_of(m)] = m

    def _frame(self, u, w):
        p, q = self.coords[u], self.coords[w]
        q = q - (q @ p) * p
        q = q / np.linalg.norm(q)
        return np.column_stack([p, q, np.cross(p, q)])

    def index_of(self, v) -> int:
        for i, c in enumerate(self.coords):
            if np.linalg.norm(c - v) < _TOL:
                return i
        raise AmbientMismatch("vector is not a vertex")

    def perm_of(self, m: np.ndarray) -> tuple:
        return tuple(self.index_of(m @ c) for c in self.coords)


@lru_cache(maxsize=None)
def solid(kind: str) -> _Solid:
    return _Solid(kind)


@dataclass(frozen=True, order=True)
class PolyElement:
    kind: str
    sign: int
    perm: tuple

    def __mul__(self, other: "PolyElement") -> "PolyElement":
        if not isinstance(other, PolyElement) or other.kind != self.kind:
            raise AmbientMismatch(f"cannot multiply {self!r} by {other!r}")
        return PolyElement(self.kind, self.sign ^ other.sign, tuple(self.perm[i] for i in other.perm))

    def inverse(self) -> "PolyElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return PolyElement(self.kind, self.sign, tuple(inv))

    @property
    def det(self) -> int:
        return -1 if self.sign else 1

    def is_identity(self) -> bool:
        return not self.sign and all(i == j for i, j in enumerate(self.perm))

    def vertex_image(self, v: int) -> int:
        w = self.perm[v]
        return solid(self.kind).antipode[w] if self.sign else w

    def act(self, p: frozenset) -> frozenset:
        return frozenset(self.vertex_image(v) for v in p)

    def matrix(self) -> np.ndarray:
        m = solid(self.kind).rotations[self.perm]
        return -m if self.sign else m

    def word(self) -> str:
        m = self.matrix()
        rows = [",".join(_fmt_entry(x) for x in row) for row in m]
        return "[" + ";".join(rows) + "]"

    def __repr__(self):
        return f"<{self.kind}{'-' if self.sign else ''}{self.perm}>"


def _fmt_entry(x: float) -> str:
    r = round(x)
    if abs(x - r) < 1e-9:
        return str(int(r))
    return f"{x:.6f}"


def poly_identity(kind: str) -> PolyElement:
    return PolyElement(kind, 0, tuple(range(len(solid(kind).coords))))


def poly_from_matrix(kind: str, m) -> PolyElement | None:
    """Element of the full symmetry group of the solid with matrix m, or None."""
    m = np.asarray(m, dtype=float)
    sign = 1 if np.linalg.det(m) < 0 else 0
    rot = -m if sign else m
    try:
        perm = solid(kind).perm_of(rot)
    except AmbientMismatch:
        return None
    if perm not in solid(kind).rotations:
        return None
    return PolyElement(kind, sign, perm)


Element = Union[AxialElement, PolyElement]


def project_to_so3(g: Element) -> Element:
    """pr: drop the -id factor."""
    if isinstance(g, AxialElement):
        return AxialElement(0, g.refl, g.angle)
    return PolyElement(g.kind, 0, g.perm)


def minus_id_like(g: Element) -> Element:
    if isinstance(g, AxialElement):
        return MINUS_ID
    return PolyElement(g.kind, 1, poly_identity(g.kind).perm)


def identity_like(g: Element) -> Element:
    if isinstance(g, AxialElement):
        return AXIAL_ID
    return poly_identity(g.kind)


def element_order(g: Element) -> int:
    k, h = 1, g
    while not h.is_identity():
        h = h * g
        k += 1
    return k


def multiply(g: Element, h: Element) -> Element:
    return g * h


def act(g: Element, p):
    if isinstance(g, AxialElement) != isinstance(p, AxialPoint):
        raise AmbientMismatch("element and point live in different models")
    return g.act(p)


# ---------------------------------------------------------------- groups

def closure(gens: Iterable[Element], identity: Element, limit: int | None = None) -> frozenset:
    gens = list(gens)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if limit is not None and len(seen) > limit:
                        raise NotASubgroup("closure exceeds the ambient order")
        frontier = nxt
    return frozenset(seen)


class Group:
    """A finite group of O(3) elements given by its full element set."""

    def __init__(self, elements: Iterable[Element], family: str | None = None,
                 n: int | None = None, ambient: "Group | None" = None):
        self.elements = tuple(sorted(set(elements)))
        self._set = frozenset(self.elements)
        self.family = family
        self.n = n
        self._ambient = ambient
        self._classes = None
        self._cache = {}

    # basic protocol
    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __eq__(self, other):
        return isinstance(other, Group) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        tag = f"{self.family}" + (f"({self.n})" if self.n is not None else "")
        return f"Group[{tag or 'sub'}, order {self.order}]"

    @property
    def identity(self) -> Element:
        return self.elements[0]

    @property
    def is_axial(self) -> bool:
        return isinstance(self.elements[0], AxialElement)

    @property
    def ambient(self) -> "Group":
        if self._ambient is None:
            self._ambient = ambient_for(self)
        return self._ambient

    def issubset(self, other: "Group") -> bool:
        return self._set <= other._set

    def intersection(self, other: "Group") -> "Group":
        return Group(self._set & other._set, ambient=self._ambient)

    def minus_id(self) -> Element:
        return minus_id_like(self.identity)

    def has_minus_id(self) -> bool:
        return self.minus_id() in self._set

    def rotation_subgroup(self) -> "Group":
        return Group((g for g in self.elements if g.det == 1), ambient=self._ambient)

    def subgroup(self, gens: Iterable[Element]) -> "Group":
        gens = list(gens)
        for g in gens:
            if g not in self._set:
                raise NotASubgroup(f"{g!r} is not in {self!r}")
        return Group(closure(gens, self.identity), ambient=self._ambient or self)

    def conjugate(self, g: Element) -> "Group":
        gi = g.inverse()
        return Group((g * x * gi for x in self.elements), ambient=self._ambient)

    def is_normal_in(self, big: "Group") -> bool:
        return all(g * x * g.inverse() in self._set for g in big.elements for x in self.elements)

    def stabilizer(self, p) -> "Group":
        return Group((g for g in self.elements if g.act(p) == p), ambient=self._ambient)

    def setwise_stabilizer(self, pts: Iterable) -> "Group":
        pts = frozenset(pts)
        return Group((g for g in self.elements if frozenset(g.act(p) for p in pts) == pts),
                     ambient=self._ambient)

    def orbit(self, p) -> frozenset:
        return frozenset(g.act(p) for g in self.elements)

    def mapping_element(self, p, q):
        """Least element g with g.p = q, or None."""
        for g in self.elements:
            if g.act(p) == q:
                return g
        return None

    @property
    def classes(self) -> list[tuple]:
        if self._classes is None:
            seen, out = set(), []
            inv = {g: g.inverse() for g in self.elements}
            for x in self.elements:
                if x in seen:
                    continue
                cl = sorted({g * x * inv[g] for g in self.elements})
                seen.update(cl)
                out.append(tuple(cl))
            self._classes = out
        return self._classes

    def class_index(self, g) -> int:
        idx = self._cache.get("class_index")
        if idx is None:
            idx = {x: i for i, cl in enumerate(self.classes) for x in cl}
            self._cache["class_index"] = idx
        return idx[g]

    def is_abelian(self) -> bool:
        return all(x * y == y * x for x in self.elements for y in self.elements)

    def exponent(self) -> int:
        e = 1
        for g in self.elements:
            e = math.lcm(e, element_order(g))
        return e

    def generators(self) -> list[Element]:
        """A short generating list chosen greedily in element order."""
        gens, span = [], {self.identity}
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = closure(gens, self.identity)
            if len(span) == self.order:
                break
        return gens


# ---------------------------------------------------------------- families

AXIAL_FAMILIES = ("Dn", "Zn", "DnxZ", "an_minus_b", "minus_an_b", "minus_an_minus_b", "ZnxZ", "minus_an")
POLY_FAMILIES = ("T", "O", "I", "T_minus_o0", "TxZ", "OxZ", "IxZ")
ONE_DIM_FAMILIES = ("SO2", "O2", "SO2_minus_b", "SO2_minus_a2", "O2xZ", "SO3", "O3")
ALL_FAMILIES = AXIAL_FAMILIES + POLY_FAMILIES + ONE_DIM_FAMILIES

_SUFFIXES = {
    "odd": lambda n: n % 2 == 1,
    "even": lambda n: n % 2 == 0,
    "oddhalf": lambda n: n % 2 == 0 and (n // 2) % 2 == 1,
    "evenhalf": lambda n: n % 2 == 0 and (n // 2) % 2 == 0,
}


def canonical_family(family: str, n: int | None = None) -> str:
    """Strip a parity suffix such as ``DnxZ_odd`` after checking it against n."""
    if family in ALL_FAMILIES:
        return family
    base, _, suf = family.rpartition("_")
    if base in AXIAL_FAMILIES and suf in _SUFFIXES:
        if n is None or not _SUFFIXES[suf](n):
            raise IllegalFamilyParameter(f"{family} does not admit n={n}")
        return base
    raise IllegalFamilyParameter(f"unknown family tag {family!r}")


def check_legal(family: str, n: int | None) -> None:
    if family in AXIAL_FAMILIES:
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise IllegalFamilyParameter(f"{family} needs a positive integer n, got {n!r}")
        if family == "Dn" and n < 2:
            raise IllegalFamilyParameter("Dn needs n > 1")
        if family == "ZnxZ" and n % 2 == 0 and n <= 2:
            raise IllegalFamilyParameter("ZnxZ with even n needs n > 2")
        if family in ("minus_an", "minus_an_b", "minus_an_minus_b"):
            if n % 2:
                raise IllegalFamilyParameter(f"{family} needs even n")
            if (n // 2) % 2 == 1 and n <= 2:
                raise IllegalFamilyParameter(f"{family} with odd n/2 needs n > 2")
    elif family in POLY_FAMILIES or family in ONE_DIM_FAMILIES:
        if n is not None:
            raise IllegalFamilyParameter(f"{family} takes no parameter n")
    else:
        raise IllegalFamilyParameter(f"unknown family tag {family!r}")


def family_order(family: str, n: int | None) -> int | None:
    return {
        "Dn": lambda: 2 * n, "Zn": lambda: n, "DnxZ": lambda: 4 * n, "an_minus_b": lambda: 2 * n,
        "minus_an_b": lambda: 2 * n, "minus_an_minus_b": lambda: 2 * n, "ZnxZ": lambda: 2 * n,
        "minus_an": lambda: n, "T": lambda: 12, "O": lambda: 24, "I": lambda: 60,
        "T_minus_o0": lambda: 24, "TxZ": lambda: 24, "OxZ": lambda: 48, "IxZ": lambda: 120,
    }.get(family, lambda: None)()


def axial_generators(family: str, n: int) -> list[AxialElement]:
    an, m = a(n), MINUS_ID
    return {
        "Dn": [an, B],
        "Zn": [an],
        "DnxZ": [an, B, m],
        "an_minus_b": [an, m * B],
        "minus_an_b": [m * an, B],
        "minus_an_minus_b": [m * an, m * B],
        "ZnxZ": [an, m],
        "minus_an": [m * an],
    }[family]


# concrete matrices for the octahedral generators; o0 is the quarter turn about z
O0 = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]], dtype=float)
C3 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float)
A2 = np.diag([-1.0, -1.0, 1.0])


def poly_generators(family: str) -> list[PolyElement]:
    o = lambda mtx: poly_from_matrix("O", mtx)
    t_gens = [o(C3), o(A2)]
    if family == "T":
        return t_gens
    if family == "O":
        return [o(C3), o(O0)]
    if family == "T_minus_o0":
        return t_gens + [o(-O0)]
    if family == "TxZ":
        return t_gens + [o(-np.eye(3))]
    if family == "OxZ":
        return [o(C3), o(O0), o(-np.eye(3))]
    rots = [PolyElement("I", 0, p) for p in sorted(solid("I").rotations)]
    if family == "I":
        return rots
    if family == "IxZ":
        return rots + [PolyElement("I", 1, poly_identity("I").perm)]
    raise IllegalFamilyParameter(family)


@lru_cache(maxsize=None)
def construct_group(family: str, n: int | None = None) -> Group:
    """Standard-position subgroup for a row tag."""
    family = canonical_family(family, n)
    if family in ONE_DIM_FAMILIES:
        raise IllegalFamilyParameter(f"{family} is not finite; use one_dim_group")
    check_legal(family, n)
    if family in AXIAL_FAMILIES:
        els = closure(axial_generators(family, n), AXIAL_ID)
    else:
        gens = poly_generators(family)
        els = closure(gens, identity_like(gens[0]))
    g = Group(els, family=family, n=n)
    assert g.order == family_order(family, n), (family, n, g.order)
    return g


constructGroup = construct_group


def ambient_for(g: Group) -> Group:
    if g.family in ("DnxZ", "OxZ", "IxZ"):
        return g
    if g.is_axial:
        if g.family in AXIAL_FAMILIES:
            return construct_group("DnxZ", g.n)
        N = 1
        for x in g.elements:
            N = math.lcm(N, x.angle.denominator)
        return construct_group("DnxZ", N)
    return construct_group("OxZ" if g.elements[0].kind == "O" else "IxZ")


def legal_rows(max_n: int, families: Sequence[str] = AXIAL_FAMILIES + POLY_FAMILIES):
    """All legal (family, n) pairs, axial ones for 1 <= n <= max_n."""
    out = []
    for f in families:
        if f in POLY_FAMILIES:
            out.append((f, None))
            continue
        for n in range(1, max_n + 1):
            try:
                check_legal(f, n)
            except IllegalFamilyParameter:
                continue
            out.append((f, n))
    return out


def row_tag(family: str, n: int | None) -> str:
    """Row name refined by the parity split used in the classification tables."""
    if family in ("DnxZ", "an_minus_b", "ZnxZ"):
        return f"{family}_{'odd' if n % 2 else 'even'}"
    if family in ("minus_an", "minus_an_b", "minus_an_minus_b"):
        return f"{family}_{'oddhalf' if (n // 2) % 2 else 'evenhalf'}"
    return family


# ---------------------------------------------------------------- one-dimensional groups

_ONE_DIM_PAIRS = {
    # allowed (refl, sign) components
    "SO2": frozenset({(0, 0)}),
    "O2": frozenset({(0, 0), (1, 0)}),
    "SO2_minus_b": frozenset({(0, 0), (1, 1)}),
    "SO2_minus_a2": frozenset({(0, 0), (0, 1)}),
    "O2xZ": frozenset({(0, 0), (1, 0), (0, 1), (1, 1)}),
}


@dataclass(frozen=True)
class OneDimGroup:
    """A closed subgroup of O(3) containing SO(2), described by its components."""

    family: str

    @property
    def pairs(self) -> frozenset | None:
        return _ONE_DIM_PAIRS.get(self.family)

    @property
    def axial(self) -> bool:
        return self.family in _ONE_DIM_PAIRS

    def __contains__(self, g) -> bool:
        if not self.axial:
            if isinstance(g, AxialElement):
                return self.family == "O3" or g.sign == 0
            return self.family == "O3" or g.sign == 0
        return isinstance(g, AxialElement) and (g.refl, g.sign) in self.pairs

    def pole_stabilizer(self) -> "OneDimGroup":
        if not self.axial:
            raise UnknownPointLabel("pole stabilizers of SO3/O3 are not axial")
        sub = frozenset(p for p in self.pairs if p[0] == p[1])
        return one_dim_group(_tag_of_pairs(sub))

    def equator_stabilizer(self, t0) -> Group:
        t0 = Fraction(t0)
        out = []
        for sign in (0, 1):
            for refl in (0, 1):
                if (refl, sign) not in self.pairs:
                    continue
                th = (-1) ** refl * (t0 - Fraction(sign, 2)) - t0
                g = AxialElement(sign, refl, th)
                assert g.act(AxialPoint(t0)) == AxialPoint(t0)
                out.append(g)
        return Group(out)


def _tag_of_pairs(pairs: frozenset) -> str:
    for k, v in _ONE_DIM_PAIRS.items():
        if v == pairs:
            return k
    raise IllegalFamilyParameter(f"no one-dimensional family with components {sorted(pairs)}")


def one_dim_group(family: str) -> OneDimGroup:
    if family not in ONE_DIM_FAMILIES:
        raise IllegalFamilyParameter(f"{family!r} is not a one-dimensional tag")
    return OneDimGroup(family)


# ---------------------------------------------------------------- generator words

_WORD_RE = re.compile(
    r"^\s*(?P<neg>-)?\s*(?P<a>a(?:_(?P<sub>\d+|n|\{[^}]*\}))?(?:\^(?P<exp>-?\d+|n|\{[^}]*\}))?)?"
    r"\s*(?P<b>b)?\s*$"
)


def _eval_expr(text: str, n: int | None) -> int:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"bad exponent {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id == "n":
            if n is None:
                raise ParseError("word uses n but no n was given")
            return Fraction(n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            x, y = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return x + y
            if isinstance(node.op, ast.Sub):
                return x - y
            if isinstance(node.op, ast.Mult):
                return x * y
            if isinstance(node.op, ast.Div):
                return x / y
        raise ParseError(f"unsupported expression {text!r}")

    val = ev(tree)
    if val.denominator != 1:
        raise ParseError(f"{text!r} is not an integer for n={n}")
    return int(val)


def parse_word(word: str, n: int | None = None) -> AxialElement:
    """Parse words such as ``-a^{n/2}b``, ``a_4^2``, ``-id`` or ``id``."""
    w = word.strip()
    if w in ("id", "1"):
        return AXIAL_ID
    if w == "-id":
        return MINUS_ID
    m = _WORD_RE.match(w)
    if not m or not (m.group("a") or m.group("b")):
        raise ParseError(f"cannot parse word {word!r}")
    g = AXIAL_ID
    if m.group("a"):
        sub = _eval_expr(m.group("sub"), n) if m.group("sub") else n
        if sub is None:
            raise ParseError("bare 'a' needs n")
        k = _eval_expr(m.group("exp"), n) if m.group("exp") else 1
        g = a(sub, k)
    if m.group("b"):
        g = g * B
    if m.group("neg"):
        g = MINUS_ID * g
    return g


def embed(g: AxialElement, kind: str | None) -> Element | None:
    """Move an axial element into the polyhedral encoding (None if impossible)."""
    if kind is None:
        return g
    return poly_from_matrix(kind, g.matrix())


def subgroup_from_words(words: Sequence[str], n: int | None = None, kind: str | None = None) -> Group:
    els = []
    for w in words:
        e = embed(parse_word(w, n), kind)
        if e is None:
            raise NotASubgroup(f"{w} does not act on the {kind} solid")
        els.append(e)
    ident = AXIAL_ID if kind is None else poly_identity(kind)
    return Group(closure(els, ident))


# ---------------------------------------------------------------- recognition

@dataclass(frozen=True)
class RecognitionResult:
    family: str
    n: int | None
    conjugator: Element | None

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "conjugator": None if self.conjugator is None else self.conjugator.word(),
        }


def rotation_type(K: Sequence[Element]) -> tuple[str, int]:
    """Classify a finite rotation group: ('C', n), ('D', n), ('T',), ('O',), ('I',)."""
    order = len(K)
    orders = {element_order(g) for g in K}
    if order in orders:
        return ("C", order)
    if order % 2 == 0 and order // 2 in orders:
        return ("D", order // 2)
    return ({12: "T", 24: "O", 60: "I"}[order], order)


def _standard_in(family: str, n: int | None, ambient: Group) -> Group | None:
    std = construct_group(family, n)
    if ambient.is_axial == std.is_axial:
        if ambient.is_axial or ambient.elements[0].kind == std.elements[0].kind:
            return std if std.issubset(ambient) else None
        return None
    if ambient.is_axial:
        return None
    kind = ambient.elements[0].kind
    els = [embed(g, kind) for g in std.elements]
    if any(e is None for e in els):
        return None
    out = Group(els)
    return out if out.issubset(ambient) else None


def find_conjugator(S: Group, target: Group, ambient: Group) -> Element | None:
    if S.order != target.order:
        return None
    for g in ambient.elements:
        gi = g.inverse()
        if all(g * x * gi in target for x in S.elements):
            return g
    return None


def _candidates(S: Group) -> list[tuple[str, int | None]]:
    rot = [g for g in S.elements if g.det == 1]
    K = sorted({project_to_so3(g) for g in S.elements})
    has_z = S.has_minus_id()
    kt = rotation_type(K)
    if has_z:
        if kt[0] == "C":
            return [("DnxZ", 1)] if kt[1] == 2 else [("ZnxZ", kt[1])]
        if kt[0] == "D":
            return [("DnxZ", kt[1])]
        return [(kt[0] + "xZ", None)]
    if len(rot) == len(S.elements):
        if kt[0] == "C":
            return [("Zn", kt[1])]
        if kt[0] == "D":
            return [("Dn", kt[1])]
        return [(kt[0], None)]
    # index-2 rotation subgroup, pr injective
    if kt[0] == "C":
        return [("an_minus_b", 1)] if kt[1] == 2 else [("minus_an", kt[1])]
    if kt[0] == "D":
        k = kt[1]
        rt = rotation_type(rot)
        if rt[0] == "C":
            return [("an_minus_b", k)]
        return [("minus_an_b", k), ("minus_an_minus_b", k)]
    if kt[0] == "O":
        return [("T_minus_o0", None)]
    raise NotASubgroup("unexpected rotation type")


def recognize(gens: Sequence[Element], ambient: Group | None = None) -> RecognitionResult:
    """Identify the subgroup generated by gens up to conjugacy."""
    gens = list(gens)
    if not gens:
        gens = [AXIAL_ID if ambient is None else ambient.identity]
    if ambient is None:
        ambient = ambient_for(Group(gens))
    for g in gens:
        if g not in ambient:
            raise NotASubgroup(f"{g!r} is not in the ambient group")
    S = Group(closure(gens, ambient.identity, limit=ambient.order), ambient=ambient)
    cands = _candidates(S)
    for fam, n in cands:
        std = _standard_in(fam, n, ambient)
        if std is None:
            continue
        c = find_conjugator(S, std, ambient)
        if c is not None:
            return RecognitionResult(fam, n, c)
    fam, n = cands[0]
    return RecognitionResult(fam, n, None)


# ---------------------------------------------------------------- stabilizers

def stabilizer_of_point(R, label):
    """Stabilizer of a labeled point; labels are resolved by the cell complex."""
    from . import cellcomplex

    return cellcomplex.stabilizer_of_label(R, label)


stabilizerOfPoint = stabilizer_of_point
projectToSO3 = project_to_so3
