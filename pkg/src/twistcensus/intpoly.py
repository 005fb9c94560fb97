"""Exact integer polynomial utilities: discriminants, irreducibility of
monic cubics and quartics over Q, resolvent cubics, and square testing."""

from __future__ import annotations

import math

__all__ = [
    "is_square", "isqrt_exact", "cubic_disc", "quartic_disc",
    "monic_cubic_irreducible", "monic_quartic_irreducible",
    "resolvent_cubic", "eval_poly", "integer_roots", "divisors",
]


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def isqrt_exact(n: int) -> int:
    """The integer square root of a perfect square; raises otherwise."""
    if n < 0:
        raise ValueError(f"{n} is negative")
    r = math.isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square")
    return r


def eval_poly(coeffs: list[int], x: int) -> int:
    """Evaluate a little-endian integer polynomial at an integer."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integer_roots(coeffs: list[int]) -> list[int]:
    """Integer roots of a monic integer polynomial (little-endian)."""
    if coeffs[-1] != 1:
        raise ValueError("monic polynomial required")
    if coeffs[0] == 0:
        reduced = list(coeffs)
        out = [0]
        while reduced[0] == 0:
            reduced = reduced[1:]
        return sorted(set(out + integer_roots(reduced)))
    out = []
    for d in divisors(coeffs[0]):
        for r in (d, -d):
            if eval_poly(coeffs, r) == 0:
                out.append(r)
    return sorted(set(out))


def cubic_disc(a: int, b: int, c: int) -> int:
    """Discriminant of x^3 + a x^2 + b x + c."""
    return (18 * a * b * c - 4 * a ** 3 * c + a * a * b * b
            - 4 * b ** 3 - 27 * c * c)


def quartic_disc(a: int, b: int, c: int, d: int) -> int:
    """Discriminant of x^4 + a x^3 + b x^2 + c x + d."""
    return (
        256 * d ** 3 - 192 * a * c * d * d - 128 * b * b * d * d
        + 144 * a * a * b * d * d - 27 * a ** 4 * d * d
        + 144 * b * c * c * d - 6 * a * a * c * c * d
        - 80 * a * b * b * c * d + 18 * a ** 3 * b * c * d
        + 16 * b ** 4 * d - 4 * a * a * b ** 3 * d
        - 27 * c ** 4 + 18 * a * b * c ** 3
        - 4 * a ** 3 * c ** 3 - 4 * b ** 3 * c * c
        + a * a * b * b * c * c
    )


def monic_cubic_irreducible(a: int, b: int, c: int) -> bool:
    """A monic integral cubic is reducible over Q iff it has an integer
    root (Gauss + degree count)."""
    return not integer_roots([c, b, a, 1])


def resolvent_cubic(a: int, b: int, c: int, d: int) -> tuple[int, int, int]:
    """Coefficients (A, B, C) of the resolvent y^3 + A y^2 + B y + C of
    x^4 + a x^3 + b x^2 + c x + d, with roots x1x2+x3x4 etc.  Its
    discriminant equals the quartic's."""
    return (-b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c))


def monic_quartic_irreducible(a: int, b: int, c: int, d: int) -> bool:
    """Irreducibility over Q of x^4 + a x^3 + b x^2 + c x + d: no integer
    root and no factorization into two monic integral quadratics."""
    if integer_roots([d, c, b, a, 1]):
        return False
    if d == 0:
        return False  # root at 0
    # (x^2 + s x + t)(x^2 + u x + v) with t v = d
    for t in divisors(d):
        for tt in (t, -t):
            if d % tt != 0:
                continue
            v = d // tt
            # s + u = a, t + v + s u = b, s v + u t = c
            su = b - tt - v
            # s and u are roots of z^2 - a z + su
            disc = a * a - 4 * su
            if not is_square(disc):
                continue
            r = isqrt_exact(disc)
            for s2 in ((a + r), (a - r)):
                if s2 % 2 != 0:
                    continue
                s = s2 // 2
                u = a - s
                if s * v + u * tt == c:
                    return False
    return True
