"""Dense polynomial arithmetic over F_p, sized for factor-pattern work.

Polynomials are little-endian integer lists with coefficients reduced
mod p and no trailing zeros; [] is the zero polynomial.  All pattern
computations go through x^q mod f power maps, so primes up to about
10^6 are cheap; explicit root extraction brute-forces only small p.
"""

from __future__ import annotations

__all__ = [
    "normalize", "add", "sub", "mul", "divmod_poly", "gcd",
    "powmod_x", "count_roots", "roots", "is_squarefree",
    "factor_pattern", "monic",
]

_ROOT_BRUTE_CAP = 200_000


def normalize(f: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: list[int]) -> int:
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return normalize(out, p)


def sub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return normalize(out, p)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return normalize(out, p)


def divmod_poly(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = degree(g)
    inv_lead = pow(g[-1], -1, p)
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        c = (f[-1] * inv_lead) % p
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - c * b) % p
        while f and f[-1] == 0:
            f.pop()
    return normalize(q, p), normalize(f, p)


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return normalize([c * inv for c in f], p)


def gcd(f, g, p):
    while g:
        f, g = g, divmod_poly(f, g, p)[1]
    return monic(f, p)


def mulmod(f, g, m, p):
    return divmod_poly(mul(f, g, p), m, p)[1]


def powmod_x(e: int, f, p):
    """x^e mod f over F_p by square and multiply."""
    result = [1]
    base = normalize([0, 1], p)
    base = divmod_poly(base, f, p)[1]
    while e:
        if e & 1:
            result = mulmod(result, base, f, p)
        base = mulmod(base, base, f, p)
        e >>= 1
    return result


def count_roots(f, p, power: int = 1) -> int:
    """Number of roots of f in the field of p^power elements,
    counted without multiplicity."""
    f = monic(normalize(f, p), p)
    if degree(f) < 1:
        return 0
    frob = powmod_x(p ** power, f, p)
    frob_minus_x = sub(frob, [0, 1], p)
    return degree(gcd(frob_minus_x, f, p)) if frob_minus_x else degree(f)


def roots(f, p) -> list[int]:
    """All roots in F_p by brute force; only for small p."""
    if p > _ROOT_BRUTE_CAP:
        raise ValueError(f"brute-force roots capped at p <= {_ROOT_BRUTE_CAP}")
    f = normalize(f, p)
    out = []
    for r in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * r + c) % p
        if acc == 0:
            out.append(r)
    return out


def is_squarefree(f, p) -> bool:
    f = normalize(f, p)
    deriv = normalize([(i * c) % p for i, c in enumerate(f)][1:], p)
    if not deriv:
        return False
    return degree(gcd(f, deriv, p)) == 0


def factor_pattern(f, p) -> tuple[tuple[int, int], ...]:
    """The multiset of (degree, multiplicity) of the irreducible factors
    of a monic f of degree <= 4 over F_p, as a sorted tuple.

    Squarefree patterns come from root counts over F_p and F_{p^2};
    repeated-factor cases are resolved by explicit gcd splitting.
    """
    f = monic(normalize(f, p), p)
    d = degree(f)
    if d < 1:
        raise ValueError("constant polynomial")
    if d > 4:
        raise ValueError("factor_pattern handles degree <= 4 only")

    if is_squarefree(f, p):
        r1 = count_roots(f, p, 1)
        if d == 1:
            return ((1, 1),)
        if d == 2:
            return ((1, 1), (1, 1)) if r1 == 2 else ((2, 1),)
        if d == 3:
            if r1 == 3:
                return ((1, 1),) * 3
            if r1 == 1:
                return ((1, 1), (2, 1))
            return ((3, 1),)
        if r1 == 4:
            return ((1, 1),) * 4
        if r1 == 2:
            return ((1, 1), (1, 1), (2, 1))
        if r1 == 1:
            return ((1, 1), (3, 1))
        # no roots in F_p: a quadratic factor shows up over F_{p^2}
        return ((2, 1), (2, 1)) if count_roots(f, p, 2) == 4 else ((4, 1),)

    # repeated factors: split off the radical and recurse
    deriv = normalize([(i * c) % p for i, c in enumerate(f)][1:], p)
    if not deriv:
        # f = g(x^p) = g(x)^p over F_p (Frobenius fixes coefficients)
        base = normalize([f[i] for i in range(0, len(f), p)], p)
        inner = factor_pattern(base, p)
        return tuple(sorted((dd, m * p) for dd, m in inner))
    g = gcd(f, deriv, p)
    h = divmod_poly(f, g, p)[0]  # the radical of f
    rest = f
    factors = _split_squarefree(h, p)
    pattern = []
    for q in factors:
        m = 0
        while True:
            quo, remn = divmod_poly(rest, q, p)
            if remn:
                break
            rest = quo
            m += 1
        pattern.append((degree(q), m))
    if degree(rest) >= 1:
        # factors with multiplicity divisible by p fall out of f/gcd(f,f')
        pattern.extend(factor_pattern(rest, p))
    return tuple(sorted(pattern))


def _split_squarefree(f, p) -> list[list[int]]:
    """Split a squarefree monic f of degree <= 4 into irreducible factors.
    Linear factors come from explicit roots; the rest splits by degree."""
    d = degree(f)
    if d == 0:
        return []
    if d == 1:
        return [f]
    out = []
    rest = f
    if p <= _ROOT_BRUTE_CAP:
        for r in roots(rest, p):
            out.append(normalize([-r, 1], p))
            rest = divmod_poly(rest, out[-1], p)[0]
    else:
        # large p: find linear factors via gcd with x^p - x, then roots of
        # the small gcd are still needed; large-p callers only require
        # patterns, which never reach here
        raise ValueError("explicit splitting needs small p")
    d = degree(rest)
    if d == 0:
        return out
    if d in (2, 3):
        out.append(rest)  # no roots left, so irreducible for degree 2 or 3
        return out
    # degree 4 remainder with no roots: either irreducible or two quadratics
    if count_roots(rest, p, 2) == 0:
        out.append(rest)
        return out
    # split into two quadratics by trying monic quadratic divisors built
    # from pairs of conjugate roots in F_{p^2}: cheaper to search directly
    for b in range(p):
        for c in range(p):
            q = [c, b, 1]
            quo, remn = divmod_poly(rest, q, p)
            if not remn:
                return out + [q, quo]
    raise AssertionError("quartic with F_{p^2} roots must split")
