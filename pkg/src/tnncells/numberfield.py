"""Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).

The geometric representation of a Coxeter group needs the numbers
2cos(pi/m) for the finite bond labels m.  All of them live in the single
field Q(theta) with theta = 2cos(pi/N) and N a common multiple of the
labels, so group elements can be built with exact rational tuples instead
of floats.

Field elements are plain tuples of Fraction, little-endian in powers of
theta, always of length ``field.degree``.  Tuples are hashable, which is
what the root-system BFS needs for dedup.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

FieldElement = tuple  # tuple[Fraction, ...], length == field degree


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials, little-endian coefficients."""
    num = list(num)
    dd = len(den) - 1
    assert den[dd] in (1, -1), "divisor must have unit leading coefficient"
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k] * den[dd]  # den[dd] is +-1, so this is num[k]/den[dd]
        out[k - dd] = c
        if c:
            for j, dj in enumerate(den):
                num[k - dd + j] -= c * dj
    assert not any(num), "division was not exact"
    return out


def cyclotomic_poly(n: int) -> list[int]:
    """Integer coefficients of the n-th cyclotomic polynomial, little-endian."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d of n
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return poly


def _half_power_polys(h: int) -> list[list[int]]:
    """p_j with x^j + x^-j = p_j(x + 1/x), for j = 0..h."""
    polys = [[2], [0, 1]]
    while len(polys) <= h:
        prev, cur = polys[-2], polys[-1]
        nxt = [0] + list(cur)  # y * p_j
        for i, c in enumerate(prev):
            nxt[i] -= c
        polys.append(nxt)
    return polys[: h + 1]


def real_cyclotomic_minpoly(n: int) -> list[int]:
    """Minimal polynomial of 2cos(2pi/n) over Q, monic, little-endian ints."""
    if n == 1:
        return [-2, 1]
    if n == 2:
        return [2, 1]
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    h = deg // 2
    # Phi_n is palindromic for n >= 3: fold it through x^j + x^-j = p_j(y).
    polys = _half_power_polys(h)
    acc = [phi[h]]
    for j in range(1, h + 1):
        term = [phi[h + j] * c for c in polys[j]]
        if len(term) > len(acc):
            acc += [0] * (len(term) - len(acc))
        for i, c in enumerate(term):
            acc[i] += c
    assert acc[h] == 1, "folded polynomial should be monic"
    return acc


class RealCyclotomicField:
    """Q(theta) with theta = 2cos(pi/N), exact tuple arithmetic."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError("N must be positive")
        self.N = N
        self.minpoly = real_cyclotomic_minpoly(2 * N)
        self.degree = len(self.minpoly) - 1
        self.zero = (Fraction(0),) * self.degree
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = tuple(one)
        self._theta_float = 2.0 * math.cos(math.pi / N)
        self._two_cos_cache: dict[int, FieldElement] = {}

    def from_int(self, k: int) -> FieldElement:
        out = [Fraction(0)] * self.degree
        out[0] = Fraction(k)
        return tuple(out)

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a: FieldElement) -> FieldElement:
        return tuple(-x for x in a)

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        # reduce modulo the monic minimal polynomial
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = Fraction(0)
                for j in range(d):
                    prod[k - d + j] -= c * self.minpoly[j]
        return tuple(prod[:d])

    def scal(self, q, a: FieldElement) -> FieldElement:
        q = Fraction(q)
        return tuple(q * x for x in a)

    def theta(self) -> FieldElement:
        if self.degree == 1:
            # theta is rational: the minpoly is y - theta
            return (Fraction(-self.minpoly[0]),)
        out = [Fraction(0)] * self.degree
        out[1] = Fraction(1)
        return tuple(out)

    def two_cos(self, m: int) -> FieldElement:
        """2cos(pi/m) as a field element; requires m | N."""
        if m in self._two_cos_cache:
            return self._two_cos_cache[m]
        if self.N % m != 0:
            raise ValueError(f"2cos(pi/{m}) does not lie in Q(2cos(pi/{self.N}))")
        # 2cos(pi/m) = 2cos(k * pi/N) = p_k(theta) with k = N/m
        k = self.N // m
        p_prev, p_cur = self.from_int(2), self.theta()
        for _ in range(k):
            p_prev, p_cur = p_cur, self.sub(self.mul(self.theta(), p_cur), p_prev)
        self._two_cos_cache[m] = p_prev
        return p_prev

    def to_float(self, a: FieldElement) -> float:
        t = self._theta_float
        out = 0.0
        for c in reversed(a):
            out = out * t + float(c)
        return out

    def __repr__(self):
        return f"RealCyclotomicField(N={self.N}, degree={self.degree})"
