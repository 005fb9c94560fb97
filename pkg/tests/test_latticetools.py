"""Lattice utilities against brute-force membership and sympy SNF."""

import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from twistcensus.latticetools import hnf, hnf_solve, lll_reduce, snf_invariants


class TestHNF:
    def test_identity(self):
        H = hnf([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
        assert H == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_membership_brute(self):
        rng = random.Random(2)
        for _ in range(40):
            rows = [[rng.randrange(-5, 6) for _ in range(3)] for _ in range(4)]
            try:
                H = hnf(rows, 3)
            except ValueError:
                continue
            # every original row is in the lattice
            for r in rows:
                assert hnf_solve(H, r) is not None
            # lattice combinations round-trip
            for _ in range(10):
                cs = [rng.randrange(-3, 4) for _ in range(3)]
                v = [sum(c * H[i][k] for i, c in enumerate(cs))
                     for k in range(3)]
                x = hnf_solve(H, v)
                assert x is not None
                back = [sum(xi * H[i][k] for i, xi in enumerate(x))
                        for k in range(3)]
                assert back == v

    def test_determinant_preserved(self):
        rows = [[2, 1, 0], [0, 3, 1], [1, 1, 5]]
        H = hnf(rows, 3)
        det_in = sympy.Matrix(rows).det()
        det_out = H[0][0] * H[1][1] * H[2][2]
        assert abs(det_in) == det_out

    def test_non_member_rejected(self):
        H = hnf([[2, 0], [0, 2]], 2)
        assert hnf_solve(H, [1, 0]) is None
        assert hnf_solve(H, [2, 2]) is not None

    def test_rank_deficient_raises(self):
        with pytest.raises(ValueError):
            hnf([[1, 2, 3], [2, 4, 6]], 3)


class TestSNF:
    def test_simple(self):
        assert snf_invariants([[2, 0], [0, 3]]) == [1, 6]

    def test_vs_sympy(self):
        rng = random.Random(4)
        for _ in range(30):
            rows = rng.randrange(1, 5)
            cols = rng.randrange(1, 5)
            m = [[rng.randrange(-6, 7) for _ in range(cols)]
                 for _ in range(rows)]
            got = snf_invariants(m)
            s = smith_normal_form(sympy.Matrix(m))
            expect = [abs(s[i, i]) for i in range(min(rows, cols))
                      if s[i, i] != 0]
            assert got == expect, (m, got, expect)


class TestLLL:
    def test_reduces_skewed_basis(self):
        def gram(u, v):
            return sum(a * b for a, b in zip(u, v))

        rows = [[1, 0, 0], [100, 1, 0], [10000, 100, 1]]
        red = lll_reduce(rows, gram)
        # same lattice: determinant magnitude 1 and all rows integral
        m = sympy.Matrix(red)
        assert abs(m.det()) == 1
        assert max(abs(x) for r in red for x in r) < 100
