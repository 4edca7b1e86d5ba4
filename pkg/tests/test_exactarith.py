import math
import random

import gmpy2
import pytest
from gmpy2 import mpfr, mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from latcert.exactarith import (
    DomainError,
    EndpointRootError,
    NotSquarefreeError,
    Q,
    RatInterval,
    SignViolation,
    UniPoly,
    certify_sign_interval,
    certify_sign_ray,
    exp_neg_enclosure,
    isolate_roots,
    jacobi_root_bound,
    pi_enclosure,
    poly_gcd,
    q_from_decimal,
    sturm_root_count,
    to_q,
)


def test_q_from_decimal():
    assert q_from_decimal("6.733e-27") == Q(6733, 10**30)
    assert q_from_decimal("25.13274122") == Q(2513274122, 10**8)
    assert q_from_decimal("-1.5") == Q(-3, 2)
    assert q_from_decimal("3/7") == Q(3, 7)
    assert q_from_decimal("1e3") == 1000


def test_to_q_rejects_floats():
    with pytest.raises(TypeError):
        to_q(0.1)


class TestPiEnclosure:
    # pi bracket frozen from MPFR const_pi at 120 bits
    PI_LO_REF = q_from_decimal("3.14159265358979323846264338327")
    PI_HI_REF = q_from_decimal("3.14159265358979323846264338328")

    def test_width_and_containment_8(self):
        enc = pi_enclosure(8)
        assert enc.width < Q(1, 256)
        assert enc.lo < self.PI_LO_REF and self.PI_HI_REF < enc.hi

    def test_64_bits_matches_independent_pi(self):
        # oracle: MPFR's pi implementation at 200 bits, independent of Machin
        enc = pi_enclosure(64)
        gmpy2.get_context().precision = 200
        ref = gmpy2.const_pi()
        assert mpfr(enc.lo) <= ref <= mpfr(enc.hi)
        assert f"{float(enc.lo):.15f}" == f"{float(enc.hi):.15f}" == "3.141592653589793"

    def test_nesting(self):
        assert pi_enclosure(8).contains_interval(pi_enclosure(64))

    def test_bits_too_small(self):
        with pytest.raises(DomainError):
            pi_enclosure(4)


class TestExpNegEnclosure:
    def test_zero(self):
        enc = exp_neg_enclosure(0)
        assert enc.lo == enc.hi == 1

    def test_one_contains_reference(self):
        # oracle: independent summation at much higher order
        ref = exp_neg_enclosure(1, even_order=700, odd_order=701)
        enc = exp_neg_enclosure(1)
        assert enc.lo <= ref.lo <= ref.hi <= enc.hi
        # e^-1 = 0.36787944117...
        assert q_from_decimal("0.36787944") < enc.lo
        assert enc.hi < q_from_decimal("0.36787945")

    def test_sixty_certified_width(self):
        enc = exp_neg_enclosure(60)
        assert enc.lo >= 0
        assert enc.hi - enc.lo < Q(1, 10**30)
        # independent bound on the first omitted term
        assert Q(60**351, math.factorial(351)) < Q(1, 10**30)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            exp_neg_enclosure(61)
        with pytest.raises(DomainError):
            exp_neg_enclosure(-1)

    def test_higher_order_nested(self):
        outer = exp_neg_enclosure(Q(7, 2), even_order=30, odd_order=31)
        inner = exp_neg_enclosure(Q(7, 2), even_order=60, odd_order=61)
        assert outer.contains_interval(inner)


class TestSturm:
    def test_sqrt2(self):
        p = UniPoly((-2, 0, 1))
        assert sturm_root_count(p, RatInterval(0, 2)) == 1

    def test_three_roots(self):
        p = UniPoly.from_roots([1, 2, 3])
        assert sturm_root_count(p, RatInterval(0, 10)) == 3

    def test_no_real_roots(self):
        p = UniPoly((1, 0, 1))
        assert sturm_root_count(p, RatInterval(-10, 10)) == 0

    def test_endpoint_root(self):
        p = UniPoly.from_roots([2])
        with pytest.raises(EndpointRootError):
            sturm_root_count(p, RatInterval(2, 3))

    def test_planted_roots_random(self):
        rng = random.Random(7)
        for _ in range(200):
            deg = rng.randint(1, 12)
            roots = sorted(Q(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(deg))
            p = UniPoly.from_roots(roots)
            lo, hi = Q(-50), Q(50)
            distinct = sorted(set(roots))
            assert sturm_root_count(p, RatInterval(lo, hi)) == len(distinct)


class TestJacobi:
    def test_bounded_interval(self):
        p = UniPoly((2, -3, 1))  # (z-1)(z-2)
        bound, parity = jacobi_root_bound(p, RatInterval(0, Q(3, 2)))
        assert (bound, parity) == (1, 1)

    def test_ray(self):
        p = UniPoly((2, -3, 1))
        bound, parity = jacobi_root_bound(p, Q(3))
        assert (bound, parity) == (0, 0)

    def test_sound_vs_sturm_random(self):
        rng = random.Random(12)
        for _ in range(100):
            deg = rng.randint(1, 10)
            p = UniPoly([Q(rng.randint(-9, 9)) for _ in range(deg)] + [Q(rng.choice([1, -1, 2]))])
            a, b = Q(rng.randint(-12, -1)), Q(rng.randint(1, 12))
            if p.sign_at(a) == 0 or p.sign_at(b) == 0:
                continue
            bound, parity = jacobi_root_bound(p, RatInterval(a, b))
            exact = sturm_root_count(p, RatInterval(a, b))
            # jacobi bounds the count WITH multiplicity; compare to distinct count
            assert bound >= exact
            if bound == 0:
                assert exact == 0


class TestIsolateRoots:
    def test_sqrt2(self):
        p = UniPoly((-2, 0, 1))
        ivs = isolate_roots(p, RatInterval(0, 10))
        assert len(ivs) == 1
        iv = ivs[0]
        assert p.sign_at(iv.lo) * p.sign_at(iv.hi) < 0

    def test_two_roots(self):
        p = UniPoly.from_roots([1, 4])
        ivs = isolate_roots(p, RatInterval(0, 10))
        assert len(ivs) == 2
        assert Q(1) in ivs[0] and Q(4) in ivs[1]

    def test_eight_roots(self):
        p = UniPoly.from_roots(range(1, 9))
        ivs = isolate_roots(p, RatInterval(0, 9))
        assert len(ivs) == 8

    def test_not_squarefree(self):
        p = UniPoly.from_roots([2, 2])
        with pytest.raises(NotSquarefreeError):
            isolate_roots(p, RatInterval(0, 10))


class TestSignCertification:
    def test_ray_with_double_roots(self):
        # -(z-1)^2 (z-3)^2 <= 0 everywhere
        p = -(UniPoly.from_roots([1, 3]) * UniPoly.from_roots([1, 3]))
        certify_sign_ray(p, 0, -1)

    def test_ray_violation(self):
        p = UniPoly.from_roots([1, 3])  # positive beyond 3, dips negative
        with pytest.raises(SignViolation):
            certify_sign_ray(p, 0, -1)

    def test_interval_strict(self):
        p = UniPoly((1, 0, 1))
        certify_sign_interval(p, RatInterval(-5, 5), 1, strict=True)
        with pytest.raises(SignViolation):
            certify_sign_interval(UniPoly.from_roots([0]), RatInterval(-5, 5), 1, strict=True)

    def test_endpoint_root_allowed_when_not_strict(self):
        p = UniPoly.from_roots([0]) * UniPoly.from_roots([0])
        certify_sign_ray(p, 0, 1)


class TestPolyOps:
    def test_shift(self):
        p = UniPoly((1, 2, 3))
        q = p.shift(5)
        for x in (Q(0), Q(1), Q(-7, 3)):
            assert q(x) == p(x + 5)

    def test_deflate(self):
        p = UniPoly.from_roots([Q(1, 3), Q(1, 3), 5])
        q = p.deflate(Q(1, 3), 2)
        assert q == UniPoly.from_roots([5])

    def test_gcd(self):
        p = UniPoly.from_roots([1, 2, 2, 3])
        d = poly_gcd(p, p.derivative())
        assert d.degree == 1
        assert d(Q(2)) == 0

    def test_interval_evaluation_contains_true_value(self):
        p = UniPoly((1, -4, 2))
        iv = RatInterval(Q(1, 2), Q(2, 3))
        out = p(iv)
        for x in (iv.lo, iv.mid, iv.hi):
            assert p(x) in out


@given(st.integers(min_value=-10**30, max_value=10**30),
       st.integers(min_value=1, max_value=10**30),
       st.integers(min_value=-10**30, max_value=10**30),
       st.integers(min_value=1, max_value=10**30))
@settings(max_examples=200, deadline=None)
def test_rational_addition_exact(an, ad, bn, bd):
    a, b = Q(an, ad), Q(bn, bd)
    assert (a + b) - b == a


def test_sqrt_enclosure():
    from latcert.exactarith import sqrt_enclosure
    enc = sqrt_enclosure(2)
    assert enc.lo * enc.lo <= 2 <= enc.hi * enc.hi
    assert enc.width < Q(1, 2**90)
    assert sqrt_enclosure(0).lo == sqrt_enclosure(0).hi == 0
    enc2 = sqrt_enclosure(RatInterval(2, 3))
    assert enc2.lo * enc2.lo <= 2 and 3 <= enc2.hi * enc2.hi
