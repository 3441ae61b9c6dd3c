import math
from fractions import Fraction

import pytest

from tnncells.numberfield import (
    RealCyclotomicField,
    cyclotomic_poly,
    real_cyclotomic_minpoly,
)

# little-endian, from the standard tables
KNOWN_CYCLOTOMIC = {
    1: [-1, 1],
    2: [1, 1],
    3: [1, 1, 1],
    4: [1, 0, 1],
    5: [1, 1, 1, 1, 1],
    6: [1, -1, 1],
    8: [1, 0, 0, 0, 1],
    12: [1, 0, -1, 0, 1],
}

# minimal polynomials of 2cos(2pi/n), worked out by hand
KNOWN_MINPOLY = {
    1: [-2, 1],
    2: [2, 1],
    3: [1, 1],        # 2cos(2pi/3) = -1
    4: [0, 1],        # 2cos(pi/2) = 0
    5: [-1, 1, 1],    # y^2 + y - 1
    6: [-1, 1],       # 2cos(pi/3) = 1
    7: [-1, -2, 1, 1],
    8: [-2, 0, 1],
    10: [-1, -1, 1],  # golden ratio
    12: [-3, 0, 1],
    14: [1, -2, -1, 1],
}


def _euler_phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@pytest.mark.parametrize("n", sorted(KNOWN_CYCLOTOMIC))
def test_cyclotomic_known(n):
    assert cyclotomic_poly(n) == KNOWN_CYCLOTOMIC[n]


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_degree_and_root(n):
    poly = cyclotomic_poly(n)
    assert len(poly) - 1 == _euler_phi(n)
    # e^(2pi i/n) is a root; check numerically
    re = sum(c * math.cos(2 * math.pi * k / n) for k, c in enumerate(poly))
    im = sum(c * math.sin(2 * math.pi * k / n) for k, c in enumerate(poly))
    assert abs(re) < 1e-9 and abs(im) < 1e-9


@pytest.mark.parametrize("n", sorted(KNOWN_MINPOLY))
def test_minpoly_known(n):
    assert real_cyclotomic_minpoly(n) == KNOWN_MINPOLY[n]


@pytest.mark.parametrize("n", range(1, 31))
def test_minpoly_numeric_root(n):
    poly = real_cyclotomic_minpoly(n)
    if n >= 3:
        assert len(poly) - 1 == _euler_phi(n) // 2
    assert poly[-1] == 1
    x = 2 * math.cos(2 * math.pi / n)
    val = 0.0
    for c in reversed(poly):
        val = val * x + c
    assert abs(val) < 1e-8


def _poly_mul_slow(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


@pytest.mark.parametrize("n", range(3, 61))
def test_minpoly_folds_back_to_cyclotomic(n):
    # exact identity: x^h * p(x + 1/x) == Phi_n(x), h = deg(p)
    poly = real_cyclotomic_minpoly(n)
    h = len(poly) - 1
    acc = [0] * (2 * h + 1)
    for j, c in enumerate(poly):
        # c * (x^2 + 1)^j * x^(h - j)
        term = [1]
        for _ in range(j):
            term = _poly_mul_slow(term, [1, 0, 1])
        for i, t in enumerate(term):
            acc[h - j + i] += c * t
    assert acc == cyclotomic_poly(n)


def test_golden_field_arithmetic():
    F = RealCyclotomicField(5)
    t = F.theta()
    # theta = 2cos(pi/5) satisfies theta^2 = theta + 1
    assert F.mul(t, t) == F.add(t, F.one)
    assert F.two_cos(5) == t
    assert F.to_float(t) == pytest.approx(2 * math.cos(math.pi / 5))


def test_two_cos_values():
    F = RealCyclotomicField(12)
    assert F.two_cos(2) == F.zero
    assert F.two_cos(3) == F.one
    root3 = F.two_cos(6)
    assert F.mul(root3, root3) == F.from_int(3)
    root2 = F.two_cos(4)
    assert F.mul(root2, root2) == F.from_int(2)
    with pytest.raises(ValueError):
        F.two_cos(5)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7, 12, 15, 30])
def test_field_ops_match_floats(N):
    F = RealCyclotomicField(N)
    t = F.theta()
    a = F.add(F.mul(t, t), F.scal(Fraction(1, 2), t))
    b = F.sub(F.mul(a, t), F.from_int(3))
    fa = F.to_float(t) ** 2 + 0.5 * F.to_float(t)
    fb = fa * F.to_float(t) - 3
    assert F.to_float(a) == pytest.approx(fa)
    assert F.to_float(b) == pytest.approx(fb)
    assert F.add(b, F.neg(b)) == F.zero
