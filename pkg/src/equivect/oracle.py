"""Numerical checks that do not go through the closed-form Chern formulas.

Line bundles over axial groups are glued from the two closed hemispheres along
the equator.  The clutching function phi maps the southern trivialization to
the northern one; it is fixed on the fundamental arc, spread over the equator
by equivariance, and its winding number (increasing longitude) is c1.

For polyhedral groups the oracle uses powers of the tangent line bundle twisted
by characters of R, whose Chern class 2k is known geometrically.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import chartheory as ct
from .bundleclass import BundleInvariant, fundamental_domain, point_groups
from .cellcomplex import complex_for, point_vector
from .cyclotomic import Cyclotomic
from .errors import (
    CapExceeded,
    DiscontinuousClutching,
    InvariantMismatch,
    NotASubgroup,
    UnsupportedFamily,
    WindingResidualTooLarge,
)
from .o3group import AxialElement, Group, OneDimGroup, element_order

DEFAULT_GRID = 2048
TOL = 1e-9
RESIDUAL_BOUND = 0.1


# ---------------------------------------------------------------- clutching data

@dataclass
class ClutchingData:
    group: Group
    M: int                       # samples on the whole equator, t_j = j / M
    values: np.ndarray           # complex, |phi| = 1
    domain: np.ndarray           # sample indices of the fundamental arc
    perms: dict                  # g -> (index map, swaps poles)
    cS: dict                     # g -> cocycle value on the southern piece
    cN: dict                     # g -> cocycle value on the northern piece
    grid: int

    def transport(self, g, v):
        idx, swap = self.perms[g]
        if swap:
            return self.cS[g] / (self.cN[g] * v)
        return self.cN[g] * v / self.cS[g]


def _c(z: Cyclotomic) -> complex:
    return complex(z.to_complex())


def _angle_den(R: Group, m: int) -> int:
    d = math.lcm(2, m)
    for g in R.elements:
        d = math.lcm(d, g.angle.denominator)
    return d


def _perm(g: AxialElement, M: int) -> tuple[np.ndarray, bool]:
    j = np.arange(M)
    shift = g.angle * M
    assert shift.denominator == 1
    img = j + int(shift)
    if g.refl:
        img = -img
    img = img + g.sign * (M // 2)
    return img % M, bool(g.refl ^ g.sign)


def _fixes_pole(g) -> bool:
    return not (g.refl ^ g.sign)


def _cocycles(R: Group, inv: BundleInvariant) -> tuple[dict, dict]:
    if inv.shape == "polar":
        chS = ct.irreducible(R, inv.entry("S").counts[0][0])
        chN = ct.irreducible(R, inv.entry("N").counts[0][0])
        return ({g: _c(chS(g)) for g in R.elements}, {g: _c(chN(g)) for g in R.elements})
    WS = inv.entry("d-1")
    chS = ct.irreducible(WS.group, WS.counts[0][0])
    swappers = [g for g in R.elements if not _fixes_pole(g)]
    if not swappers:
        raise UnsupportedFamily("triple-shaped row without a pole swapper")
    t = swappers[0]
    ti = t.inverse()
    cS, cN = {}, {}
    for g in R.elements:
        if _fixes_pole(g):
            cS[g] = _c(chS(g))
            cN[g] = _c(chS(ti * g * t))
        else:
            cS[g] = _c(chS(ti * g))
            cN[g] = _c(chS(g * t))
    return cS, cN


def _endpoint_value(R, inv, x, lab, cS, cN):
    """Forced value of phi at an arc end point, or None when it is free."""
    pinned = None
    H = R.stabilizer(x)
    chi = None
    if inv.shape == "triple":
        W = inv.entry(lab)
        chi = ct.irreducible(W.group, W.counts[0][0])
    for g in H.elements:
        if _fixes_pole(g):
            if chi is not None and abs(_c(chi(g)) - cS[g]) > TOL:
                raise InvariantMismatch(f"isotropy at {lab} disagrees with the southern fiber")
            continue
        val = cS[g] / _c(chi(g))
        if pinned is not None and abs(val - pinned) > TOL:
            raise InvariantMismatch(f"inconsistent pinning at {lab}")
        pinned = val
    return pinned


def build_line_clutching(R, inv: BundleInvariant, grid: int = DEFAULT_GRID,
                         extra_loops: int = 0) -> ClutchingData:
    """Clutching function of a line bundle with isotropy data inv.

    ``extra_loops`` adds that many full turns to phi along the fundamental arc;
    the resulting bundle has the same isotropy data.
    """
    if isinstance(R, OneDimGroup) or not R.is_axial:
        raise UnsupportedFamily("the clutching oracle handles finite axial groups only")
    if not inv.is_line():
        raise InvariantMismatch("line invariants only")
    fd = fundamental_domain(R)
    cx = complex_for(R)
    m = cx.m
    D = _angle_den(R, m)
    M = D * grid
    step = M // (2 * m)                     # samples per half edge
    start = int(fd.path[0].t * M)
    end = start + step * (len(fd.path) - 1)
    domain = np.arange(start, end + 1) % M
    cS, cN = _cocycles(R, inv)
    perms = {g: _perm(g, M) for g in R.elements}

    data = ClutchingData(R, M, np.zeros(M, dtype=complex), domain, perms, cS, cN, grid)
    p0 = _endpoint_value(R, inv, fd.d0, "d0", cS, cN)
    p1 = _endpoint_value(R, inv, fd.d1, "d1", cS, cN)
    p0 = 1.0 + 0j if p0 is None else p0
    if p1 is None:
        for g in R.elements:
            if perms[g][0][start % M] == end % M:
                p1 = data.transport(g, p0)
                break
    p1 = p0 if p1 is None else p1
    delta = math.atan2((p1 / p0).imag, (p1 / p0).real) + 2 * math.pi * extra_loops
    s = np.linspace(0.0, 1.0, len(domain))
    arc = p0 * np.exp(1j * delta * s)
    arc[-1] = p1
    return fill(data, arc)


buildLineClutching = build_line_clutching


def fill(data: ClutchingData, arc: np.ndarray) -> ClutchingData:
    """Spread arc values over the equator by equivariance, checking agreement."""
    M = data.M
    vals = np.zeros(M, dtype=complex)
    seen = np.zeros(M, dtype=bool)
    ident = [g for g in data.group.elements if g.is_identity()]
    order = ident + [g for g in data.group.elements if not g.is_identity()]
    worst = 0.0
    for g in order:
        idx = data.perms[g][0][data.domain]
        new = data.transport(g, arc)
        clash = seen[idx]
        if clash.any():
            worst = max(worst, float(np.max(np.abs(vals[idx][clash] - new[clash]))))
        fresh = ~clash
        vals[idx[fresh]] = new[fresh]
        seen[idx[fresh]] = True
    if not seen.all():
        raise DiscontinuousClutching("the orbit of the fundamental arc does not cover the equator")
    if worst > 1e-7:
        raise DiscontinuousClutching(f"equivariant copies disagree by {worst:.2e}")
    data.values = vals
    return data


def refill(data: ClutchingData) -> ClutchingData:
    """Rebuild from the fundamental-arc samples of an existing clutching."""
    fresh = ClutchingData(data.group, data.M, data.values.copy(), data.domain, data.perms,
                          data.cS, data.cN, data.grid)
    return fill(fresh, data.values[data.domain].copy())


def product(x: ClutchingData, y: ClutchingData) -> ClutchingData:
    if x.M != y.M or x.group != y.group:
        raise InvariantMismatch("clutchings sampled differently")
    cS = {g: x.cS[g] * y.cS[g] for g in x.cS}
    cN = {g: x.cN[g] * y.cN[g] for g in x.cN}
    return ClutchingData(x.group, x.M, x.values * y.values, x.domain, x.perms, cS, cN, x.grid)


def constant_clutching(R: Group, grid: int = DEFAULT_GRID) -> ClutchingData:
    m = complex_for(R).m
    M = _angle_den(R, m) * grid
    ones = {g: 1.0 + 0j for g in R.elements}
    return ClutchingData(R, M, np.ones(M, dtype=complex), np.arange(0), {g: _perm(g, M) for g in R.elements},
                         ones, dict(ones), grid)


# ---------------------------------------------------------------- conditions and degree

def check_conditions(data: ClutchingData) -> dict:
    """Residuals of the gluing conditions in the hemisphere model.

    N1: swapping elements send phi to the inverse (times cocycles).
    N2: the loop closes up continuously (largest jump between neighbours).
    E1: every group element transports phi correctly at every sample.
    """
    v = data.values
    e1 = n1 = 0.0
    for g, (idx, swap) in data.perms.items():
        err = float(np.max(np.abs(v[idx] - data.transport(g, v))))
        e1 = max(e1, err)
        if swap:
            n1 = max(n1, err)
    steps = np.abs(np.diff(np.append(v, v[0])))
    return {"N1": n1, "N2": float(np.max(steps)), "E1": e1, "unit": float(np.max(np.abs(np.abs(v) - 1)))}


@dataclass(frozen=True)
class DegreeResult:
    total: int
    perFace: tuple
    residual: float
    max_step: float

    def to_json(self) -> dict:
        return {"total": self.total, "perFace": list(self.perFace), "residual": self.residual}


def degree(data: ClutchingData, complex_=None) -> DegreeResult:
    """Winding number of phi along the equator in the direction of increasing longitude.

    There is one gluing loop, the common boundary of the two hemisphere faces, so
    perFace has a single entry.
    """
    v = data.values
    ratio = np.append(v[1:], v[:1]) / v
    steps = np.angle(ratio)
    w = float(np.sum(steps)) / (2 * math.pi)
    k = round(w)
    res = abs(w - k)
    mx = float(np.max(np.abs(steps)))
    if res >= RESIDUAL_BOUND or mx > math.pi / 2:
        raise WindingResidualTooLarge(f"winding residual {res:.3g}, largest step {mx:.3g}")
    return DegreeResult(int(k), (int(k),), res, mx)


def oracle_degree(R, inv: BundleInvariant, grid: int = DEFAULT_GRID, extra_loops: int = 0) -> int:
    return degree(build_line_clutching(R, inv, grid, extra_loops)).total


def dump_csv(data: ClutchingData, path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["j", "t", "re", "im"])
        for j, z in enumerate(data.values):
            w.writerow([j, j / data.M, z.real, z.imag])


# ---------------------------------------------------------------- tangent powers

def _rotation_turns(mat: np.ndarray, axis: np.ndarray) -> float:
    c = (np.trace(mat) - 1) / 2
    s = 0.5 * np.dot(axis, [mat[2, 1] - mat[1, 2], mat[0, 2] - mat[2, 0], mat[1, 0] - mat[0, 1]])
    return (math.atan2(s, c) / (2 * math.pi)) % 1.0


def _point_vector(R, p):
    return point_vector(p, complex_for(R).element_kind)


def tangent_character(R: Group, p, k: int = 1) -> ct.Character:
    """Character of the k-th power of the tangent line at p (rotation groups only)."""
    H = R.stabilizer(p)
    v = _point_vector(R, p)

    def val(h):
        if h.det != 1:
            raise UnsupportedFamily("tangent line needs orientation preserving stabilizers")
        o = element_order(h)
        j = round(_rotation_turns(h.matrix(), v) * o) % o
        return Cyclotomic.zeta(o, k * j)

    return ct.Character.from_function(H, val)


def tangent_power_invariant(R: Group, k: int, twist: ct.Character | None = None) -> BundleInvariant:
    """Isotropy data of T^k (x) C_twist, a line bundle with c1 = 2k."""
    fd = fundamental_domain(R)
    pts = {"d-1": fd.d_minus1, "d0": fd.d0, "d1": fd.d1}
    if R.is_axial and R.family == "Zn":
        cx = complex_for(R)
        pts = {"S": cx.labels["S"], "N": cx.labels["N"]}
    entries = []
    for lab, G in point_groups(R).items():
        chi = tangent_character(R, pts[lab], k)
        if G != chi.group:
            chi = ct.Character.from_function(G, chi)
        if twist is not None:
            chi = chi * ct.restrict(twist, G)
        entries.append((lab, ct.decompose(chi)))
    return BundleInvariant(R, tuple(entries))


def linear_characters(R: Group) -> list:
    return [c for c in ct.irreducibles(R) if c.degree == 1]


def tangent_power_table(R: Group) -> list[tuple[BundleInvariant, int]]:
    """(invariant, geometric c1) over one period of tangent powers and all twists."""
    period = 1
    for lab, G in point_groups(R).items():
        period = math.lcm(period, G.exponent() if G.order > 1 else 1)
    out = []
    for k in range(period):
        for chi in linear_characters(R):
            out.append((tangent_power_invariant(R, k, chi), 2 * k))
    return out


# ---------------------------------------------------------------- brute-force extensions

def brute_force_extensions(W: ct.RepDecomposition, N2: Group, max_dim: int = 6,
                           max_order: int = 48) -> list[ct.RepDecomposition]:
    if W.dim > max_dim or N2.order > max_order:
        raise CapExceeded(f"dim {W.dim} / order {N2.order} beyond the brute-force cap")
    N1 = W.group
    if not N1.issubset(N2):
        raise NotASubgroup("W lives on a group not contained in N2")
    irr = ct.irreducibles(N2)
    # only the values on elements of N1 matter; read them at N1's class representatives
    reps = [cl[0] for cl in N1.classes]
    cols = [N2.class_index(g) for g in reps]
    target = tuple(W.character().values)
    rows = [tuple(c.values[j] for j in cols) for c in irr]
    out = []

    def rec(i, left, vals, chosen):
        if left == 0:
            if all(x == y for x, y in zip(vals, target)):
                out.append(ct.RepDecomposition.of(N2, dict(chosen)))
            return
        if i == len(irr):
            return
        d = irr[i].degree
        for k in range(left // d + 1):
            nv = [x + y * k for x, y in zip(vals, rows[i])] if k else vals
            if k:
                chosen[irr[i].label] = k
            rec(i + 1, left - k * d, nv, chosen)
            chosen.pop(irr[i].label, None)

    rec(0, W.dim, [Cyclotomic.rational(0)] * len(cols), {})
    return sorted(out, key=lambda r: r.to_json())


bruteForceExtensions = brute_force_extensions
