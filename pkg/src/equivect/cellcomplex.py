"""Equivariant triangulations of the sphere with labeled special points.

Axial groups act on K_m: m equator vertices v^i at longitude i/m plus the two
poles.  For m = 1, 2 the underlying triangulation is the one of K_4 (so that it
is a genuine simplicial complex) while the labels v^i, b(e^i) keep their K_m
meaning.  Polyhedral groups act on K_T, K_O, K_I, whose points are encoded as
frozensets of octahedron or icosahedron vertex indices (see ``o3group``).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import PreconditionViolation, UnknownPointLabel
from .o3group import (
    AxialElement,
    AxialPoint,
    Group,
    NORTH,
    OneDimGroup,
    SOUTH,
    solid,
)

_TOL = 1e-9

POLY_COMPLEX = {"T": "KT", "T_minus_o0": "KT", "O": "KO", "TxZ": "KO", "OxZ": "KO",
                "I": "KI", "IxZ": "KI"}


def point_vector(p, kind: str | None = None) -> np.ndarray:
    """Unit vector of a point; polyhedral points need the solid kind ('O' or 'I')."""
    if isinstance(p, AxialPoint):
        return p.vector()
    v = sum(solid(kind).coords[i] for i in p)
    return v / np.linalg.norm(v)


def point_name(p) -> str:
    if isinstance(p, AxialPoint):
        if p == SOUTH:
            return "S"
        if p == NORTH:
            return "N"
        return f"({p.t},{p.lat})"
    return "{" + ",".join(str(i) for i in sorted(p)) + "}"


@dataclass
class EquivComplex:
    name: str
    kind: str                      # 'axial', 'KT', 'KO', 'KI'
    m: int | None
    vertices: tuple                # points
    edges: tuple                   # tuples of vertex indices
    faces: tuple                   # outward counterclockwise vertex index triples
    labels: dict                   # label -> point
    edge_points: tuple = ()
    face_points: tuple = ()
    element_kind: str | None = None
    _vindex: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._vindex = {p: i for i, p in enumerate(self.vertices)}

    @property
    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def action(self, g) -> dict:
        """Permutations of vertices, edges and faces induced by g."""
        vp = [self._vindex[g.act(p)] for p in self.vertices]
        eidx = {frozenset(e): i for i, e in enumerate(self.edges)}
        fidx = {frozenset(f): i for i, f in enumerate(self.faces)}
        ep = [eidx[frozenset(vp[v] for v in e)] for e in self.edges]
        fp = [fidx[frozenset(vp[v] for v in f)] for f in self.faces]
        return {"vertices": vp, "edges": ep, "faces": fp}

    def half_edges(self) -> frozenset:
        """Halves of the subdivided equator polygon (axial) or of the 1-skeleton."""
        if self.kind == "axial":
            m = self.m
            return frozenset((AxialPoint(Fraction(2 * j + 1, 4 * m)),) for j in range(2 * m))
        out = set()
        for e, ep in zip(self.edges, self.edge_points):
            for v in e:
                out.add((self.vertices[v], ep))
        return frozenset(out)

    def segment_halves(self, path: Sequence) -> list:
        """Half-edges traversed by a path of consecutive key points."""
        out = []
        for p, q in zip(path, path[1:]):
            if self.kind == "axial":
                d = (q.t - p.t) % 1
                if d != Fraction(1, 2 * self.m):
                    raise UnknownPointLabel(f"{point_name(p)}-{point_name(q)} is not a half-edge")
                out.append((AxialPoint(p.t + Fraction(1, 4 * self.m)),))
            else:
                vp = p if p in self._vindex else q
                ep = q if vp is p else p
                out.append((vp, ep))
        return out

    def to_dict(self, group: Group | None = None) -> dict:
        d = {
            "name": self.name,
            "counts": {"V": len(self.vertices), "E": len(self.edges), "F": len(self.faces)},
            "euler": self.euler,
            "vertices": [point_name(p) for p in self.vertices],
            "edges": [list(e) for e in self.edges],
            "faces": [list(f) for f in self.faces],
            "labels": {k: point_name(v) for k, v in sorted(self.labels.items())},
        }
        if group is not None:
            d["action"] = [{"element": g.word(), **self.action(g)} for g in group.elements]
        return d


def act_half(g, h: tuple) -> tuple:
    return tuple(g.act(p) for p in h)


# ---------------------------------------------------------------- builders

def _orient(vs, tri, kind=None):
    a, b, c = (point_vector(vs[i], kind) for i in tri)
    if np.cross(b - a, c - a) @ (a + b + c) < 0:
        return (tri[0], tri[2], tri[1])
    return tri


def _clique_complex(vs, adjacent, kind):
    n = len(vs)
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if adjacent(i, j)]
    es = {frozenset(e) for e in edges}
    faces = [t for t in itertools.combinations(range(n), 3)
             if all(frozenset(p) in es for p in itertools.combinations(t, 2))]
    return tuple(edges), tuple(_orient(vs, t, kind) for t in faces)


@lru_cache(maxsize=None)
def axial_complex(m: int) -> EquivComplex:
    k = 4 if m < 3 else m
    eq = [AxialPoint(Fraction(i, k)) for i in range(k)]
    vs = eq + [SOUTH, NORTH]
    edges = [(i, (i + 1) % k) if i < (i + 1) % k else ((i + 1) % k, i) for i in range(k)]
    edges += [(i, k) for i in range(k)] + [(i, k + 1) for i in range(k)]
    faces = [_orient(vs, (i, (i + 1) % k, k + 1)) for i in range(k)]
    faces += [_orient(vs, (i, (i + 1) % k, k)) for i in range(k)]
    labels = {"S": SOUTH, "N": NORTH}
    for i in range(m):
        labels[f"v{i}"] = AxialPoint(Fraction(i, m))
        labels[f"b(e{i})"] = AxialPoint(Fraction(2 * i + 1, 2 * m))
    labels.setdefault("v1", AxialPoint(Fraction(1, m)))
    labels.setdefault("b(e1)", AxialPoint(Fraction(3, 2 * m)))
    return EquivComplex(f"K_{m}", "axial", m, tuple(vs), tuple(sorted(edges)), tuple(faces), labels,
                        element_kind=None)


_KT_VERTS = (frozenset({0, 1, 2}), frozenset({3, 4, 2}), frozenset({3, 1, 5}), frozenset({0, 4, 5}))


@lru_cache(maxsize=None)
def poly_complex(name: str) -> EquivComplex:
    if name == "KT":
        kind = "O"
        vs = list(_KT_VERTS)
        edges, faces = _clique_complex(vs, lambda i, j: True, kind)
        edge_point = lambda p, q: frozenset(p & q)
        ant = solid("O").antipode

        def face_point(p, q, r):
            (missing,) = [v for v in vs if v not in (p, q, r)]
            return frozenset(ant[i] for i in missing)
    else:
        kind = "O" if name == "KO" else "I"
        sol = solid(kind)
        vs = [frozenset({i}) for i in range(len(sol.coords))]
        edges, faces = _clique_complex(vs, lambda i, j: j in sol.neighbors[i], kind)
        edge_point = lambda p, q: p | q
        face_point = lambda p, q, r: p | q | r
    vindex = {p: i for i, p in enumerate(vs)}
    edge_points = tuple(edge_point(vs[i], vs[j]) for i, j in edges)
    face_points = tuple(face_point(*(vs[i] for i in f)) for f in faces)

    v0 = 0
    v1 = min(j for e in edges for j in e if v0 in e and j != v0)
    common = [f for f in faces if v0 in f and v1 in f]
    v2 = None
    for f in common:
        (c,) = [x for x in f if x not in (v0, v1)]
        if _orient(vs, (v0, v1, c), kind) != (v0, v1, c):  # clockwise seen from outside
            v2 = c
    fm1 = frozenset({v0, v1, v2})
    labels = {f"v{i}": vs[x] for i, x in enumerate((v0, v1, v2))}
    cyc = (v0, v1, v2)
    for i in range(3):
        p, q = vs[cyc[i]], vs[cyc[(i + 1) % 3]]
        labels[f"b(e{i})"] = edge_point(p, q)
        other = [f for f in faces if {cyc[i], cyc[(i + 1) % 3]} <= set(f) and frozenset(f) != fm1]
        labels[f"b(f{i})"] = face_point(*(vs[x] for x in other[0]))
    labels["b(f-1)"] = face_point(*(vs[x] for x in cyc))
    cx = EquivComplex(name.replace("K", "K_"), name, None, tuple(vs), edges, faces, labels,
                      edge_points, face_points, element_kind=kind)
    assert vindex == cx._vindex
    return cx


def complex_for(R) -> EquivComplex:
    if isinstance(R, OneDimGroup):
        return axial_complex(1)
    if R.family in POLY_COMPLEX:
        return poly_complex(POLY_COMPLEX[R.family])
    if not R.is_axial:
        raise PreconditionViolation("polyhedral subgroup without a family tag")
    v0 = AxialPoint(0)
    m = R.order // R.stabilizer(v0).order
    return axial_complex(m)


def build_complex(R):
    """Return the complex together with the action of every group element."""
    cx = complex_for(R)
    actions = {g: cx.action(g) for g in R.elements}
    return cx, actions


buildComplex = build_complex


# ---------------------------------------------------------------- fundamental domains

CANDIDATES = (
    ("half", ("v0", "b(e0)")),
    ("edge", ("v0", "b(e0)", "v1")),
    ("bridge", ("b(e0)", "v1", "b(e1)")),
)
PATH_LABELS = dict(CANDIDATES)
PATH_TEXT = {"half": "[v0,b(e0)]", "edge": "|e0|", "bridge": "[b(e0),v1]u[v1,b(e1)]", "point": "{v0}"}


@dataclass(frozen=True)
class FundamentalDomainData:
    shape: str                 # half | edge | bridge | point
    path: tuple                # key points
    path_labels: tuple
    d_minus1: object
    d0: object
    d1: object
    l_R: int | None
    d_minus1_label: str = "S"

    def to_dict(self) -> dict:
        return {
            "D_R": PATH_TEXT[self.shape],
            "path": list(self.path_labels),
            "d-1": self.d_minus1_label,
            "d0": self.path_labels[0],
            "d1": self.path_labels[-1],
            "l_R": self.l_R,
        }


def _covers(R: Group, cx: EquivComplex, halves) -> tuple[bool, object]:
    target = cx.half_edges()
    got = {act_half(g, h) for g in R.elements for h in halves}
    if cx.kind == "axial":
        missing = sorted(target - got)
    else:
        missing = sorted(target - got, key=lambda h: [sorted(p) for p in h])
    return (not missing), (missing[0] if missing else None)


def half_edge_name(cx: EquivComplex, h: tuple) -> str:
    if cx.kind == "axial":
        t = h[0].t
        lo = t - Fraction(1, 4 * cx.m)
        hi = t + Fraction(1, 4 * cx.m)
        return f"[{_axial_name(cx.m, lo)},{_axial_name(cx.m, hi)}]"
    inv = {v: k for k, v in cx.labels.items()}
    return "[" + ",".join(inv.get(p, point_name(p)) for p in h) + "]"


def _axial_name(m: int, t: Fraction) -> str:
    k = (t * 2 * m) % (2 * m)
    if k.denominator != 1:
        return str(t)
    k = int(k)
    return f"v{k // 2}" if k % 2 == 0 else f"b(e{k // 2})"


def verify_orbit_cover(R: Group, shape: str | None = None) -> tuple[bool, str | None]:
    """Does the orbit of the path cover, minimally?  Returns (ok, witness)."""
    cx = complex_for(R)
    if shape is None:
        shape = fundamental_domain(R).shape
    path = [cx.labels[x] for x in PATH_LABELS[shape]]
    halves = cx.segment_halves(path)
    ok, miss = _covers(R, cx, halves)
    if not ok:
        return False, half_edge_name(cx, miss)
    for h in halves if len(halves) > 1 else []:
        sub_ok, _ = _covers(R, cx, [h])
        if sub_ok:
            return False, half_edge_name(cx, h)
    return True, None


verifyOrbitCover = verify_orbit_cover


def _minimal_cover(R: Group, cx: EquivComplex, labs) -> bool:
    halves = cx.segment_halves([cx.labels[x] for x in labs])
    if not _covers(R, cx, halves)[0]:
        return False
    return not (len(halves) > 1 and any(_covers(R, cx, [h])[0] for h in halves))


def derive_domain_shape(R: Group) -> str:
    """First candidate path whose orbit covers minimally, found by search."""
    cx = complex_for(R)
    for shape, labs in CANDIDATES:
        if _minimal_cover(R, cx, labs):
            return shape
    raise PreconditionViolation(f"no candidate path covers for {R!r}")


@lru_cache(maxsize=None)
def _fundamental_domain_cached(R: Group) -> FundamentalDomainData:
    from .o3group import row_tag
    from .tables import TABLE1

    cx = complex_for(R)
    if R.family is not None:
        shape = TABLE1[row_tag(R.family, R.n)][1]
    else:
        shape = derive_domain_shape(R)
    labs = PATH_LABELS[shape]
    path = tuple(cx.labels[x] for x in labs)
    hs = frozenset(cx.segment_halves(path))
    setwise = [g for g in R.elements if frozenset(act_half(g, h) for h in hs) == hs]
    dm1_label = "S" if cx.kind == "axial" else "b(f-1)"
    return FundamentalDomainData(shape, path, labs, cx.labels[dm1_label], path[0], path[-1],
                                 R.order // len(setwise), dm1_label)


def fundamental_domain(R) -> FundamentalDomainData:
    if isinstance(R, OneDimGroup):
        v0 = AxialPoint(0)
        dm1 = v0 if R.family in ("SO3", "O3") else SOUTH
        return FundamentalDomainData("point", (v0,), ("v0",), dm1, v0, v0, None,
                                     "v0" if dm1 == v0 else "S")
    return _fundamental_domain_cached(R)


fundamentalDomain = fundamental_domain


# ---------------------------------------------------------------- labeled stabilizers

_SEG = re.compile(r"^\[\s*([^,\]]+)\s*,\s*([^\]]+)\s*\]$")


def resolve_label(R, label: str):
    """Map a label such as 'v0', 'b(e1)', 'd-1' or 'S' to a point of R's complex."""
    label = label.strip()
    cx = complex_for(R)
    fd = fundamental_domain(R)
    if label == "d-1":
        return fd.d_minus1
    if label == "d0":
        return fd.d0
    if label == "d1":
        return fd.d1
    if label in cx.labels:
        return cx.labels[label]
    raise UnknownPointLabel(f"unknown point label {label!r}")


def stabilizer_of_label(R, label: str):
    """Stabilizer subgroup of a labeled point.

    ``x`` is a generic interior point of the segment [v0, b(e0)]; a label of the
    form ``[p,q]`` is a generic interior point of the segment between p and q.
    Both are computed as pointwise stabilizers of the endpoints.
    """
    label = label.strip()
    if label == "x":
        label = "[v0,b(e0)]"
    m = _SEG.match(label)
    if m:
        a_, b_ = stabilizer_of_label(R, m.group(1)), stabilizer_of_label(R, m.group(2))
        return _meet(a_, b_)
    if isinstance(R, OneDimGroup):
        return _one_dim_stabilizer(R, label)
    return R.stabilizer(resolve_label(R, label))


def _meet(x, y):
    if isinstance(x, OneDimGroup) and isinstance(y, OneDimGroup):
        return x if x.family == y.family else OneDimGroup(_pair_tag(x.pairs & y.pairs))
    if isinstance(x, OneDimGroup):
        x, y = y, x
    if isinstance(y, OneDimGroup):
        return Group(g for g in x.elements if g in y)
    return x.intersection(y)


def _pair_tag(pairs):
    from .o3group import _tag_of_pairs
    return _tag_of_pairs(frozenset(pairs))


def _one_dim_stabilizer(R: OneDimGroup, label: str):
    if R.family in ("SO3", "O3"):
        raise UnknownPointLabel("SO3/O3 stabilizers are conjugates of O2-type groups; not materialized")
    if label in ("S", "N") or (label == "d-1"):
        return R.pole_stabilizer()
    if label in ("v0", "d0", "d1"):
        return R.equator_stabilizer(0)
    raise UnknownPointLabel(f"unknown point label {label!r} for {R.family}")


# ---------------------------------------------------------------- structural checks

def _interior_axial(p: AxialPoint, q: AxialPoint, frac: Fraction) -> AxialPoint:
    """Exact point a fraction of the way along a meridian or equator arc."""
    if p.lat == q.lat == 0:
        d = (q.t - p.t) % 1
        return AxialPoint(p.t + frac * d)
    if abs(p.lat) == Fraction(1, 4) and q.lat == 0:
        return AxialPoint(q.t, p.lat * (1 - frac))
    raise PreconditionViolation("unsupported arc")


def _vector_stabilizer(R: Group, v: np.ndarray) -> Group:
    return Group((g for g in R.elements if np.linalg.norm(g.matrix() @ v - v) < 1e-7))


def _arc_points(cx, p, q, frac=Fraction(1, 3)):
    if cx.kind == "axial":
        return _interior_axial(p, q, frac)
    u, w = point_vector(p, cx.element_kind), point_vector(q, cx.element_kind)
    v = (1 - float(frac)) * u + float(frac) * w
    return v / np.linalg.norm(v)


def _stab_interior(R, cx, pt):
    if isinstance(pt, AxialPoint):
        return R.stabilizer(pt)
    return _vector_stabilizer(R, pt)


def intersection_law(R: Group) -> bool:
    """Check R_{d-1} cap R_{d^i} and R_{d0} cap R_{d1} against segment stabilizers.

    The right-hand sides are computed from interior points of the segments only,
    so the comparison is not a tautology.
    """
    if R.family in ("Zn", "an_minus_b"):
        raise PreconditionViolation(f"intersection law is not asserted for {R.family}")
    cx = complex_for(R)
    fd = fundamental_domain(R)
    rdm1, rd0, rd1 = (R.stabilizer(p) for p in (fd.d_minus1, fd.d0, fd.d1))
    ok = True
    for rd, d in ((rd0, fd.d0), (rd1, fd.d1)):
        seg = _stab_interior(R, cx, _arc_points(cx, fd.d_minus1, d))
        ok &= rdm1.intersection(rd) == seg
    inner = None
    for p, q in zip(fd.path, fd.path[1:]):
        for fr in (Fraction(1, 3), Fraction(2, 3)):
            s = _stab_interior(R, cx, _arc_points(cx, p, q, fr))
            inner = s if inner is None else inner.intersection(s)
    ok &= rd0.intersection(rd1) == inner
    return bool(ok)


intersectionLaw = intersection_law
