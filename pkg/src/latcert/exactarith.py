"""Exact rational arithmetic, certified enclosures, and rigorous real-root counting.

Rationals are GMP-backed (gmpy2.mpq); every public function also accepts ints,
fractions.Fraction, and exact decimal strings such as "6.733e-27".  All results
are exact or two-sided certified enclosures -- no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Rational

import gmpy2
from gmpy2 import mpq, mpz

Q = mpq  # the rational type used throughout the package

__all__ = [
    "Q", "to_q", "q_from_decimal", "RatInterval", "UniPoly",
    "pi_enclosure", "exp_neg_enclosure", "sqrt_enclosure",
    "sturm_root_count", "jacobi_root_bound", "isolate_roots",
    "certify_sign_ray", "certify_sign_interval",
    "DomainError", "EndpointRootError", "NotSquarefreeError", "SignViolation",
]


class DomainError(ValueError):
    """Input outside the supported domain of a certified routine."""


class EndpointRootError(ValueError):
    """The polynomial vanishes at an interval endpoint; caller must perturb."""


class NotSquarefreeError(ValueError):
    """gcd(p, p') is nonconstant on the requested domain."""


class SignViolation(Exception):
    """A claimed sign condition fails; carries a witness interval."""

    def __init__(self, side, witness):
        self.side = side
        self.witness = witness
        super().__init__(f"sign condition violated on {side} near {witness}")


def q_from_decimal(s: str) -> mpq:
    """Parse a decimal literal (optionally with exponent) as an exact rational."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return mpq(mpz(num.strip()), mpz(den.strip()))
    mant, _, exp = s.partition("e") if "e" in s else s.partition("E")
    exp = int(exp) if exp else 0
    neg = mant.startswith("-")
    mant = mant.lstrip("+-")
    if "." in mant:
        intpart, frac = mant.split(".")
        exp -= len(frac)
        mant = (intpart + frac) or "0"
    v = mpq(mpz(mant or "0"))
    v = v * mpq(10) ** exp if exp >= 0 else v / mpq(10) ** (-exp)
    return -v if neg else v


def to_q(x) -> mpq:
    """Coerce to an exact rational; floats are rejected (lossy by construction)."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string, int, or rational")
    if isinstance(x, str):
        return q_from_decimal(x)
    if isinstance(x, (int, Rational)) or type(x) in (mpq, mpz):
        return mpq(x)
    return mpq(x)


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: mpq
    hi: mpq

    def __post_init__(self):
        object.__setattr__(self, "lo", to_q(self.lo))
        object.__setattr__(self, "hi", to_q(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "RatInterval":
        x = to_q(x)
        return cls(x, x)

    @property
    def width(self) -> mpq:
        return self.hi - self.lo

    @property
    def mid(self) -> mpq:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        x = to_q(x)
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other):
        other = _as_interval(other)
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) + (-self)

    def __mul__(self, other):
        other = _as_interval(other)
        cands = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return RatInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("division by interval containing zero")
        cands = (self.lo / other.lo, self.lo / other.hi,
                 self.hi / other.lo, self.hi / other.hi)
        return RatInterval(min(cands), max(cands))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers unsupported; divide explicitly")
        out = RatInterval(mpq(1), mpq(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_interval(x) -> RatInterval:
    if isinstance(x, RatInterval):
        return x
    return RatInterval.point(x)


# ---------------------------------------------------------------------------
# certified constants


_PI_CACHE: dict[int, RatInterval] = {}


def _arctan_inv_enclosure(x: int, tail_bound: mpq) -> RatInterval:
    """Enclosure of arctan(1/x) for integer x >= 2 via the alternating series."""
    xsq = mpz(x) * x
    term = mpq(1, x)
    s = mpq(0)
    k = 0
    while term > tail_bound:
        s = s + term if k % 2 == 0 else s - term
        k += 1
        term = term * (2 * k - 1) / ((2 * k + 1) * xsq)
    # the error of the truncated alternating series has the sign of the next term
    if k % 2 == 0:
        return RatInterval(s, s + term)
    return RatInterval(s - term, s)


def pi_enclosure(bits: int) -> RatInterval:
    """Certified enclosure of pi with width below 2**-bits (Machin's formula)."""
    if bits < 8:
        raise DomainError("bits must be at least 8")
    if bits in _PI_CACHE:
        return _PI_CACHE[bits]
    tail = mpq(1, mpz(2) ** (bits + 6))
    enc = 16 * _arctan_inv_enclosure(5, tail) - 4 * _arctan_inv_enclosure(239, tail)
    assert enc.width < mpq(1, mpz(2) ** bits)
    _PI_CACHE[bits] = enc
    return enc


def exp_neg_enclosure(z, even_order: int = 350, odd_order: int = 351) -> RatInterval:
    """Certified enclosure of e**-z for rational 0 <= z <= 60.

    Adjacent truncations of the alternating series: the sum through an odd
    order is a lower bound and through an even order an upper bound, valid
    once the term magnitudes are decreasing past both truncation points.
    """
    z = to_q(z)
    if z < 0 or z > 60:
        raise DomainError(f"z={z} outside [0, 60]")
    if even_order % 2 or odd_order % 2 == 0:
        raise ValueError("orders must be (even, odd)")
    if min(even_order, odd_order) + 1 <= z:
        raise DomainError("truncation order too small for alternating-tail bound")
    hi_order = max(even_order, odd_order)
    term = mpq(1)
    s = mpq(1)
    lo = hi = None
    if even_order == 0:
        hi = s
    for i in range(1, hi_order + 1):
        term = term * (-z) / i
        s += term
        if i == even_order:
            hi = s
        if i == odd_order:
            lo = s
    assert lo is not None and hi is not None and lo <= hi
    return RatInterval(lo, hi)


def sqrt_enclosure(x, rel_bits: int = 96) -> RatInterval:
    """Two-sided rational enclosure of sqrt(x) for x >= 0 (Newton iteration).

    The relative width of the result is below 2**-rel_bits.
    """
    if isinstance(x, RatInterval):
        lo_enc = sqrt_enclosure(x.lo, rel_bits)
        hi_enc = sqrt_enclosure(x.hi, rel_bits)
        return RatInterval(lo_enc.lo, hi_enc.hi)
    x = to_q(x)
    if x < 0:
        raise DomainError("sqrt of negative rational")
    if x == 0:
        return RatInterval(mpq(0), mpq(0))
    # integer sqrt of scaled numerator gives a good certified start
    scale = mpz(2) ** (2 * rel_bits)
    n = mpz(x.numerator) * scale // mpz(x.denominator)
    r = gmpy2.isqrt(n)
    lo = mpq(r, mpz(2) ** rel_bits)
    hi = mpq(r + 1, mpz(2) ** rel_bits)
    assert lo * lo <= x <= hi * hi
    return RatInterval(lo, hi)


# ---------------------------------------------------------------------------
# polynomials


class UniPoly:
    """Dense univariate polynomial with exact rational coefficients.

    coeffs[k] is the coefficient of z**k; the zero polynomial has coeffs == ().
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [to_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def from_roots(cls, roots):
        p = cls.one()
        for r in roots:
            p = p * cls((-to_q(r), 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if self.is_zero() or other.is_zero():
                return UniPoly.zero()
            out = [mpq(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return UniPoly(out)
        c = to_q(other)
        return UniPoly([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __call__(self, x):
        if isinstance(x, RatInterval):
            acc = RatInterval.point(0)
            for c in reversed(self.coeffs):
                acc = acc * x + RatInterval.point(c)
            return acc
        x = to_q(x)
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift(self, a) -> "UniPoly":
        """Taylor shift: returns q with q(z) = p(z + a)."""
        a = to_q(a)
        out = list(self.coeffs)
        n = len(out)
        for i in range(n - 1):           # synthetic-division Horner cascade
            for j in range(n - 2, i - 1, -1):
                out[j] += a * out[j + 1]
        return UniPoly(out)

    def scale_arg(self, a) -> "UniPoly":
        """Returns q with q(z) = p(a*z)."""
        a = to_q(a)
        pw = mpq(1)
        out = []
        for c in self.coeffs:
            out.append(c * pw)
            pw *= a
        return UniPoly(out)

    def reverse(self) -> "UniPoly":
        """Coefficient reversal: z**deg * p(1/z)."""
        return UniPoly(list(reversed(self.coeffs)))

    def deflate(self, root, multiplicity: int = 1) -> "UniPoly":
        """Exact division by (z - root)**multiplicity; raises if not a root."""
        root = to_q(root)
        p = list(self.coeffs)
        for _ in range(multiplicity):
            out = [mpq(0)] * (len(p) - 1)
            acc = p[-1]
            for k in range(len(p) - 2, -1, -1):
                out[k] = acc
                acc = p[k] + acc * root
            if acc != 0:
                raise ValueError(f"{root} is not a root (remainder {acc})")
            p = out
        return UniPoly(p)

    def int_coeffs(self):
        """Primitive integer coefficient list with the same sign pattern."""
        den = mpz(1)
        for c in self.coeffs:
            den = gmpy2.lcm(den, c.denominator)
        ints = [mpz(c * den) for c in self.coeffs]
        g = mpz(0)
        for c in ints:
            g = gmpy2.gcd(g, c)
        if g > 1:
            ints = [c // g for c in ints]
        return ints

    def sign_at(self, x) -> int:
        """Sign of p(x), using integer-only evaluation for large degrees."""
        x = to_q(x)
        if self.is_zero():
            return 0
        if self.degree > 100:
            v = _int_eval_scaled(self.int_coeffs(), mpz(x.numerator), mpz(x.denominator))
            return gmpy2.sign(v)
        return gmpy2.sign(self(x))

    def cauchy_root_bound(self) -> mpq:
        """All real roots lie in (-B, B) for the returned B >= 1."""
        if self.degree < 1:
            return mpq(1)
        lc = abs(self.coeffs[-1])
        mx = max((abs(c) for c in self.coeffs[:-1]), default=mpq(0))
        return mpq(1) + mx / lc

    def __repr__(self):
        return f"UniPoly(degree={self.degree})"


def _int_eval_scaled(ints, num: mpz, den: mpz) -> mpz:
    """p(num/den) * den**deg over the integers (sign-faithful for den > 0)."""
    deg = len(ints) - 1
    if deg < 0:
        return mpz(0)
    acc = ints[deg]
    dpow = mpz(1)
    for k in range(deg - 1, -1, -1):
        dpow *= den
        acc = acc * num + ints[k] * dpow
    return acc


# ---------------------------------------------------------------------------
# root counting and isolation


def _prim(ints):
    g = mpz(0)
    for c in ints:
        g = gmpy2.gcd(g, c)
    if g > 1:
        return [c // g for c in ints]
    return list(ints)


def _sturm_chain(ints):
    """Sturm chain over Z via primitive pseudo-remainders (positive scalings only)."""
    p = _prim(ints)
    dp = _prim([k * c for k, c in enumerate(p)][1:])
    chain = [p, dp]
    while True:
        a, b = chain[-2], chain[-1]
        da, db = len(a) - 1, len(b) - 1
        if db <= 0:
            break
        lcb = b[-1]
        scale = abs(lcb) ** (da - db + 1)
        r = [c * scale for c in a]
        for i in range(da, db - 1, -1):
            coef = r[i]
            if coef == 0:
                continue
            q = coef // lcb
            for j in range(db + 1):
                r[i - db + j] -= q * b[j]
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
        chain.append(_prim([-c for c in r]))
    return chain


def _sign_changes(vals) -> int:
    signs = [gmpy2.sign(v) for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _chain_variations(chain, x: mpq) -> int:
    num, den = mpz(x.numerator), mpz(x.denominator)
    return _sign_changes([_int_eval_scaled(p, num, den) for p in chain])


class _SturmContext:
    """Reusable Sturm chain for repeated counts on the same polynomial."""

    def __init__(self, p: UniPoly):
        if p.is_zero():
            raise ValueError("zero polynomial")
        self.poly = p
        self.ints = p.int_coeffs()
        self.chain = _sturm_chain(self.ints)

    def count(self, a, b) -> int:
        """Distinct real roots in (a, b]; endpoints must not be roots of p."""
        a, b = to_q(a), to_q(b)
        return _chain_variations(self.chain, a) - _chain_variations(self.chain, b)


def sturm_root_count(p: UniPoly, interval: RatInterval) -> int:
    """Exact number of distinct real roots of p in the open interval.

    Raises EndpointRootError if p vanishes at either endpoint.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.sign_at(interval.lo) == 0 or p.sign_at(interval.hi) == 0:
        raise EndpointRootError("polynomial vanishes at an endpoint")
    # Sturm counts (a, b]; the right endpoint is not a root, so (a, b) agrees
    return _SturmContext(p).count(interval.lo, interval.hi)


def jacobi_root_bound(p: UniPoly, interval) -> tuple[int, int]:
    """Sign-variation bound on the root count, with matching parity.

    interval: RatInterval for (a, b), or a rational a for the ray (a, inf).
    Returns (bound, bound mod 2); the true count is <= bound and congruent
    to it modulo 2.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if isinstance(interval, RatInterval):
        a, b = interval.lo, interval.hi
        if not a < b:
            raise ValueError("need a < b")
        # coefficients of p((a + b z)/(1 + z)) (1 + z)^deg
        q = p.shift(a)                     # p(z + a)
        q = q.scale_arg(b - a)             # p((b-a) z + a)
        q = q.reverse()                    # z^d p(1/z ...) -> Moebius to (a, b)
        q = q.shift(1)                     # z -> z + 1
        ints = q.int_coeffs()
    else:
        a = to_q(interval)
        ints = p.shift(a).int_coeffs()
    bound = _sign_changes(ints)
    return bound, bound % 2


def _nonroot_point(p: UniPoly, lo: mpq, hi: mpq) -> mpq:
    """A rational point interior to (lo, hi) where p does not vanish."""
    mid = (lo + hi) / 2
    if p.sign_at(mid) != 0:
        return mid
    step = (hi - lo) / 4
    while True:
        for cand in (mid + step, mid - step):
            if lo < cand < hi and p.sign_at(cand) != 0:
                return cand
        step /= 2


def isolate_roots(p: UniPoly, domain: RatInterval, width=Q(1, 1 << 32)) -> list[RatInterval]:
    """Disjoint isolating intervals for the roots of a squarefree p in domain.

    Each returned interval contains exactly one root, has width below the
    threshold, and p is nonzero at all interval endpoints.
    """
    width = to_q(width)
    gcd = poly_gcd(p, p.derivative())
    if gcd.degree > 0:
        ctx = _SturmContext(gcd)
        lo = _nonroot_point(gcd, domain.lo - 1, domain.lo) if gcd.sign_at(domain.lo) == 0 else domain.lo
        hi = _nonroot_point(gcd, domain.hi, domain.hi + 1) if gcd.sign_at(domain.hi) == 0 else domain.hi
        if ctx.count(lo, hi) > 0:
            raise NotSquarefreeError("gcd(p, p') has a root in the domain")
    a, b = domain.lo, domain.hi
    if p.sign_at(a) == 0 or p.sign_at(b) == 0:
        raise EndpointRootError("polynomial vanishes at a domain endpoint")
    ctx = _SturmContext(p)
    out = []

    def rec(lo, hi, cnt):
        if cnt == 0:
            return
        if cnt == 1 and hi - lo < width:
            out.append(RatInterval(lo, hi))
            return
        mid = _nonroot_point(p, lo, hi)
        left = ctx.count(lo, mid)
        rec(lo, mid, left)
        rec(mid, hi, cnt - left)

    rec(a, b, ctx.count(a, b))
    return sorted(out, key=lambda iv: iv.lo)


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd via the primitive pseudo-remainder sequence."""
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    a, b = p.int_coeffs(), q.int_coeffs()
    if len(a) < len(b):
        a, b = b, a
    while b:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return UniPoly.one()
        lcb = b[-1]
        scale = abs(lcb) ** (da - db + 1)
        r = [c * scale for c in a]
        for i in range(da, db - 1, -1):
            coef = r[i]
            if coef == 0:
                continue
            quo = coef // lcb
            for j in range(db + 1):
                r[i - db + j] -= quo * b[j]
        while r and r[-1] == 0:
            r.pop()
        a, b = b, _prim(r)
    lc = a[-1]
    return UniPoly([mpq(c, lc) for c in a])


# ---------------------------------------------------------------------------
# certified sign conditions on rays and intervals


def _certify_sign(p: UniPoly, lo: mpq, hi, sign: int, side: str, strict=False):
    """Certify sign*p >= 0 on [lo, hi] (hi=None for a ray to +infinity).

    Roots of even multiplicity are allowed unless strict is set, in which
    case any root in the region is a violation.  Raises SignViolation with
    a rational witness on failure.
    """
    if p.is_zero():
        if strict:
            raise SignViolation(side, lo)
        return
    q = p if sign > 0 else -p
    # divide out exact endpoint roots; the removed factors have known sign
    while q.degree > 0 and q.sign_at(lo) == 0:
        if strict:
            raise SignViolation(side, lo)
        q = q.deflate(lo)                       # (z - lo) >= 0 on the region
    if hi is not None:
        hi = to_q(hi)
        while q.degree > 0 and q.sign_at(hi) == 0:
            if strict:
                raise SignViolation(side, hi)
            q = q.deflate(hi)
            q = -q                              # (z - hi) <= 0 on [lo, hi]
    if q.degree <= 0:
        v = q.coeffs[0] if q.coeffs else mpq(0)
        if v < 0 or (strict and v == 0):
            raise SignViolation(side, lo)
        return
    if q.sign_at(lo) < 0:
        raise SignViolation(side, lo)
    if hi is None:
        if q.coeffs[-1] < 0:
            raise SignViolation(side, "leading coefficient at +infinity")
        hi_eff = max(q.cauchy_root_bound(), lo) + 1
    else:
        hi_eff = hi
        if not lo < hi_eff:
            return
    if q.sign_at(hi_eff) < 0:
        raise SignViolation(side, hi_eff)
    ctx = _SturmContext(q)
    total = ctx.count(lo, hi_eff)
    if strict and total > 0:
        raise SignViolation(side, RatInterval(lo, hi_eff))

    def rec(a, b, cnt):
        # invariant: q(a) > 0, q(b) > 0, cnt distinct roots in (a, b].
        # one distinct root between positive endpoints cannot be a crossing,
        # so q >= 0 there; only multi-root stretches need splitting.
        if cnt <= 1:
            return
        mid = _nonroot_point(q, a, b)
        if q.sign_at(mid) < 0:
            raise SignViolation(side, mid)
        left = ctx.count(a, mid)
        rec(a, mid, left)
        rec(mid, b, cnt - left)

    rec(lo, hi_eff, total)


def certify_sign_ray(p: UniPoly, lo, sign: int, side: str = "ray", strict=False):
    """Certify sign*p >= 0 on [lo, +infinity); raises SignViolation on failure."""
    _certify_sign(p, to_q(lo), None, sign, side, strict=strict)


def certify_sign_interval(p: UniPoly, interval: RatInterval, sign: int,
                          side: str = "interval", strict=False):
    """Certify sign*p >= 0 on the closed interval; raises SignViolation on failure."""
    _certify_sign(p, interval.lo, interval.hi, sign, side, strict=strict)
