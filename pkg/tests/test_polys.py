"""Polynomial toolkits versus independent oracles (sympy, brute force)."""

import random

import pytest
import sympy

from twistcensus import fppoly, intpoly


def brute_pattern(coeffs, p):
    """Factor pattern oracle via sympy over GF(p)."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([c % p for c in reversed(coeffs)], x, modulus=p,
                      symmetric=False)
    _, factors = poly.factor_list()
    return tuple(sorted((f.degree(), m) for f, m in factors))


class TestFpPoly:
    def test_mul_divmod_roundtrip(self):
        rng = random.Random(0)
        for _ in range(100):
            p = rng.choice([2, 3, 5, 7, 101])
            f = fppoly.normalize([rng.randrange(p) for _ in range(5)], p)
            g = fppoly.normalize([rng.randrange(p) for _ in range(3)], p)
            if not g:
                continue
            q, r = fppoly.divmod_poly(f, g, p)
            back = fppoly.add(fppoly.mul(q, g, p), r, p)
            assert back == f

    def test_count_roots_vs_brute(self):
        rng = random.Random(1)
        for _ in range(60):
            p = rng.choice([3, 5, 7, 11, 13])
            f = [rng.randrange(p) for _ in range(4)] + [1]
            assert fppoly.count_roots(f, p) == len(set(fppoly.roots(f, p)))

    def test_count_roots_quadratic_extension(self):
        # x^2 + 1 over F_3 has roots only in F_9
        assert fppoly.count_roots([1, 0, 1], 3, 1) == 0
        assert fppoly.count_roots([1, 0, 1], 3, 2) == 2

    def test_pattern_cubic_spec_cases(self):
        # x^3 - x - 1 mod 5: root x=2 and an irreducible quadratic
        assert fppoly.factor_pattern([-1, -1, 0, 1], 5) == ((1, 1), (2, 1))
        # mod 3: irreducible
        assert fppoly.factor_pattern([-1, -1, 0, 1], 3) == ((3, 1),)
        # mod 23 (the discriminant prime): a repeated factor appears
        pat = fppoly.factor_pattern([-1, -1, 0, 1], 23)
        assert any(m > 1 for _, m in pat)

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
    def test_pattern_matches_sympy_cubics(self, p):
        rng = random.Random(p)
        for _ in range(40):
            coeffs = [rng.randrange(-10, 10) for _ in range(3)] + [1]
            assert fppoly.factor_pattern(coeffs, p) == brute_pattern(coeffs, p)

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
    def test_pattern_matches_sympy_quartics(self, p):
        rng = random.Random(100 + p)
        for _ in range(40):
            coeffs = [rng.randrange(-10, 10) for _ in range(4)] + [1]
            assert fppoly.factor_pattern(coeffs, p) == brute_pattern(coeffs, p)

    def test_pattern_large_prime(self):
        # patterns stay cheap for five-digit primes
        pat = fppoly.factor_pattern([-1, -1, 0, 1], 99991)
        assert sum(d * m for d, m in pat) == 3


class TestIntPoly:
    def test_squares(self):
        assert intpoly.is_square(0) and intpoly.is_square(81)
        assert not intpoly.is_square(-4) and not intpoly.is_square(2)
        assert intpoly.isqrt_exact(144) == 12
        with pytest.raises(ValueError):
            intpoly.isqrt_exact(5)

    def test_cubic_disc_examples(self):
        assert intpoly.cubic_disc(0, -1, -1) == -23
        assert intpoly.cubic_disc(0, -3, -1) == 81
        assert intpoly.cubic_disc(0, 1, 1) == -31

    def test_disc_vs_sympy(self):
        x = sympy.Symbol("x")
        rng = random.Random(5)
        for _ in range(30):
            a, b, c = (rng.randrange(-9, 10) for _ in range(3))
            expect = sympy.discriminant(x ** 3 + a * x * x + b * x + c, x)
            assert intpoly.cubic_disc(a, b, c) == expect
        for _ in range(30):
            a, b, c, d = (rng.randrange(-9, 10) for _ in range(4))
            expect = sympy.discriminant(
                x ** 4 + a * x ** 3 + b * x * x + c * x + d, x)
            assert intpoly.quartic_disc(a, b, c, d) == expect

    def test_resolvent_disc_equals_quartic_disc(self):
        rng = random.Random(6)
        for _ in range(40):
            a, b, c, d = (rng.randrange(-9, 10) for _ in range(4))
            A, B, C = intpoly.resolvent_cubic(a, b, c, d)
            assert intpoly.cubic_disc(A, B, C) == \
                intpoly.quartic_disc(a, b, c, d)

    def test_cubic_irreducibility(self):
        assert intpoly.monic_cubic_irreducible(0, -1, -1)
        assert not intpoly.monic_cubic_irreducible(0, -1, 0)  # x^3 - x

    def test_quartic_irreducibility_vs_sympy(self):
        x = sympy.Symbol("x")
        rng = random.Random(7)
        hits = 0
        for _ in range(80):
            a, b, c, d = (rng.randrange(-6, 7) for _ in range(4))
            poly = sympy.Poly(x ** 4 + a * x ** 3 + b * x * x + c * x + d, x)
            expect = poly.is_irreducible
            got = intpoly.monic_quartic_irreducible(a, b, c, d)
            assert got == expect, (a, b, c, d)
            hits += got
        assert 0 < hits < 80  # fixture mix is non-degenerate

    def test_known_quartics(self):
        assert intpoly.monic_quartic_irreducible(0, 0, -1, -1)  # x^4 - x - 1
        assert intpoly.monic_quartic_irreducible(0, 0, 8, 12)   # x^4 + 8x + 12
        assert not intpoly.monic_quartic_irreducible(0, 0, 0, -1)  # x^4 - 1

    def test_integer_roots(self):
        assert intpoly.integer_roots([-6, 11, -6, 1]) == [1, 2, 3]
        assert intpoly.integer_roots([0, -1, 0, 1]) == [-1, 0, 1]
        assert intpoly.integer_roots([-1, -1, 0, 1]) == []
