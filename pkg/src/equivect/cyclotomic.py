"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is a polynomial in z = exp(2 pi i / N) of degree < phi(N) with
rational coefficients, reduced modulo the N-th cyclotomic polynomial.  The
reduced form is unique for a fixed N; values of different orders are lifted to
the lcm before comparing or combining.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import ParseError


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _polydiv_exact(p, list(cyclotomic_poly(d)))
    return tuple(p)


_Z = 0


def _num(x):
    # integers stay ints; everything else becomes a Fraction
    if type(x) is int:
        return x
    if type(x) is not Fraction:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs) + [_Z] * max(0, deg - len(coeffs))
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            # phi is monic
            for j in range(deg + 1):
                if phi[j]:
                    c[i - deg + j] -= lead * phi[j]
    return tuple(_num(x) for x in c[:deg])


class Cyclotomic:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = int(order)
        self.coeffs = _reduce([_num(x) for x in coeffs], self.order)

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "Cyclotomic":
        # coeffs already reduced
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    # constructors
    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls(1, [q])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        k %= n
        c = [0] * (k + 1)
        c[k] = 1
        return cls(n, c)

    # structure
    def lift(self, m: int) -> "Cyclotomic":
        if m == self.order:
            return self
        if m % self.order:
            raise ValueError(f"cannot lift order {self.order} to {m}")
        step = m // self.order
        c = [0] * (step * len(self.coeffs) + 1)
        for i, q in enumerate(self.coeffs):
            c[i * step] = q
        return Cyclotomic(m, c)

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        if self.order == other.order:
            return self, other, self.order
        m = math.lcm(self.order, other.order)
        return self.lift(m), other.lift(m), m

    def __add__(self, other):
        x, y, m = self._common(other)
        return Cyclotomic._raw(m, tuple(_num(p + q) for p, q in zip(x.coeffs, y.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-q for q in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else Cyclotomic.rational(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is int:
            return Cyclotomic._raw(self.order, tuple(_num(q * other) for q in self.coeffs))
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        if other.order == 1 or self.order == 1:
            k, v = (other, self) if other.order == 1 else (self, other)
            k = k.coeffs[0] if k.coeffs else 0
            return Cyclotomic._raw(v.order, tuple(_num(q * k) for q in v.coeffs))
        x, y, m = self._common(other)
        prod = [_Z] * (len(x.coeffs) + len(y.coeffs))
        for i, p in enumerate(x.coeffs):
            if p:
                for j, q in enumerate(y.coeffs):
                    if q:
                        prod[i + j] += p * q
        return Cyclotomic(m, prod)

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        n = self.order
        if n <= 2:
            return self
        c = [_Z] * n
        for i, q in enumerate(self.coeffs):
            c[(-i) % n] += q
        return Cyclotomic(n, c)

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        x, y, _ = self._common(other)
        return x.coeffs == y.coeffs

    def __hash__(self):
        z = self.to_complex()
        return hash((round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0]) if self.coeffs else Fraction(0)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return sum(complex(float(q)) * z ** i for i, q in enumerate(self.coeffs))

    def root_index(self, n: int) -> int | None:
        """k with self == zeta_n^k, or None."""
        for k in range(n):
            if self == Cyclotomic.zeta(n, k):
                return k
        return None

    def __str__(self):
        terms = []
        for i, q in enumerate(self.coeffs):
            if q or (i == 0 and not any(self.coeffs)):
                terms.append(str(q) if i == 0 else f"{q}*z^{i}")
        return " + ".join(terms or ["0"]) + f"; {self.order}"

    def __repr__(self):
        return f"Cyclotomic({self})"

    @classmethod
    def parse(cls, text: str) -> "Cyclotomic":
        body, _, order = text.rpartition(";")
        try:
            n = int(order)
        except ValueError as exc:
            raise ParseError(f"bad cyclotomic {text!r}") from exc
        c = []
        for term in body.split("+"):
            term = term.strip()
            m = re.fullmatch(r"(-?\d+(?:/\d+)?)(?:\*z\^(\d+))?", term)
            if not m:
                raise ParseError(f"bad term {term!r}")
            k = int(m.group(2) or 0)
            c += [Fraction(0)] * (k + 1 - len(c))
            c[k] += Fraction(m.group(1))
        return cls(n, c)


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)
