"""Laguerre and ultraspherical (Gegenbauer) families with exact coefficients.

Both families follow the three-term recurrences

    i L_i(z) = (2i - 1 + alpha - z) L_{i-1}(z) - (i + alpha - 1) L_{i-2}(z)
    i C_i(z) = 2 (i + lambda - 1) z C_{i-1}(z) - (i + 2 lambda - 2) C_{i-2}(z)

with L_0 = 1, L_1 = 1 + alpha - z and C_0 = 1, C_1 = 2 lambda z.  For work in
R^n the parameters are always alpha = lambda = n/2 - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gmpy2 import mpq, mpz

from .exactarith import Q, UniPoly, to_q

__all__ = [
    "laguerre", "gegenbauer", "normalized_gegenbauer", "gegenbauer_expand",
    "PiScaledPoly", "harmonic_dimension", "sphere_volume_rational",
    "weight_moment_reduced",
]

_LAG_CACHE: dict[mpq, list[UniPoly]] = {}
_GEG_CACHE: dict[mpq, list[UniPoly]] = {}


def laguerre(i: int, alpha) -> UniPoly:
    """Laguerre polynomial L_i^alpha with exact rational coefficients."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    alpha = to_q(alpha)
    fam = _LAG_CACHE.setdefault(alpha, [UniPoly.one(), UniPoly((1 + alpha, -1))])
    while len(fam) <= i:
        k = len(fam)
        a, b = fam[k - 1], fam[k - 2]
        nxt = (UniPoly((2 * k - 1 + alpha, -1)) * a - (k + alpha - 1) * b) * Q(1, k)
        fam.append(nxt)
    return fam[i]


def gegenbauer(i: int, lam) -> UniPoly:
    """Ultraspherical polynomial C_i^lambda with exact rational coefficients."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    lam = to_q(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    fam = _GEG_CACHE.setdefault(lam, [UniPoly.one(), UniPoly((0, 2 * lam))])
    while len(fam) <= i:
        k = len(fam)
        a, b = fam[k - 1], fam[k - 2]
        nxt = (UniPoly((0, 2 * (k + lam - 1))) * a - (k + 2 * lam - 2) * b) * Q(1, k)
        fam.append(nxt)
    return fam[i]


def harmonic_dimension(i: int, n: int) -> int:
    """Dimension of the space of degree-i spherical harmonics on S^(n-1)."""
    if i < 2:
        return 1 if i == 0 else n
    return math.comb(n + i - 1, i) - math.comb(n + i - 3, i - 2)


def sphere_volume_rational(n: int) -> mpq:
    """vol(S^(n-1)) / pi^(n/2) for even n, i.e. n / (n/2)!."""
    if n % 2:
        raise ValueError("even dimension required")
    return Q(n, math.factorial(n // 2))


@dataclass(frozen=True)
class PiScaledPoly:
    """A polynomial times an exact power of pi: poly(x) * pi**pi_power.

    Keeps normalization constants exact; identities that are homogeneous in
    pi can be checked on the rational part alone.
    """

    poly: UniPoly
    pi_power: int

    def __call__(self, x):
        return self.poly(x), self.pi_power

    def __mul__(self, other):
        if isinstance(other, PiScaledPoly):
            return PiScaledPoly(self.poly * other.poly, self.pi_power + other.pi_power)
        return PiScaledPoly(self.poly * other, self.pi_power)

    __rmul__ = __mul__


def normalized_gegenbauer(i: int, n: int) -> PiScaledPoly:
    """Addition-theorem normalization of C_i for S^(n-1).

    Returns (h_i / vol(S^(n-1))) * C_i^lambda(x) / C_i^lambda(1) with the
    pi-power of 1/vol carried symbolically; h_i is the dimension of the
    degree-i harmonics.  With this normalization, for any finite code C,
    sum_{x,y in C} C_i(<x,y>) equals |sum_z ev_i(z)|^2 >= 0.
    """
    if n % 2 or n < 2:
        raise ValueError("even dimension >= 2 required")
    lam = Q(n, 2) - 1
    c = gegenbauer(i, lam)
    c1 = c(Q(1))
    scale = Q(harmonic_dimension(i, n)) / (c1 * sphere_volume_rational(n))
    return PiScaledPoly(c * scale, -(n // 2))


def gegenbauer_expand(p: UniPoly, lam) -> list[mpq]:
    """Exact ultraspherical coefficients f_0..f_d with p = sum f_i C_i^lambda.

    Solved by back-substitution against the triangular change of basis.
    """
    lam = to_q(lam)
    if p.is_zero():
        return [Q(0)]
    coeffs = [Q(0)] * (p.degree + 1)
    rem = p
    for i in range(p.degree, -1, -1):
        if rem.degree < i:
            continue
        ci = gegenbauer(i, lam)
        f = rem.coeffs[i] / ci.coeffs[i]
        coeffs[i] = f
        rem = rem - f * ci
    if not rem.is_zero():
        raise AssertionError("triangular expansion left a remainder")
    return coeffs


def weight_moment_reduced(k: int, lam) -> mpq:
    """integral of x^k (1-x^2)^(lambda - 1/2) dx over [-1, 1], divided by pi.

    Only half-integer lambda - 1/2 is supported (lambda integral), where the
    moment is an exact rational multiple of pi:
        int x^(2a) (1-x^2)^(b - 1/2) dx = g(a) g(b) pi / (a + b)!
    with g(m) = (2m)! / (4^m m!) (so Gamma(m + 1/2) = g(m) sqrt(pi)).
    """
    lam = to_q(lam)
    if lam.denominator != 1:
        raise ValueError("integral lambda required for exact pi-reduced moments")
    if k % 2:
        return Q(0)
    a = k // 2
    b = int(lam)

    def g(m: int) -> mpq:
        return Q(math.factorial(2 * m), mpz(4) ** m * math.factorial(m))

    return g(a) * g(b) / math.factorial(a + b)
