"""Cubic number fields at desk scale: splitting of rational primes with a
Dedekind index guard, square-norm prime censuses with asymptotic fits,
naive class-group 2-rank by relation saturation, and principality testing
with ray-style congruence and sign constraints.

Everything is exact integer arithmetic except where noted: embeddings are
high-precision numerics used only for sign certification (with explicit
margins) and for steering LLL; all consumed results are re-verified
exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from . import fppoly, intpoly
from .latticetools import hnf, hnf_solve, lll_reduce, snf_invariants

__all__ = [
    "CubicField", "SplitType", "PrimeIdealData", "CensusRecord",
    "CensusResult", "FitResult", "PrincipalityResult", "PrimeIdeal",
    "cubic_field", "split_type", "degree2_primes", "frobenius_order_in_M",
    "census", "fit_exponent", "class_group_2_rank",
    "is_principal_with_congruence", "field_equal_cubics",
    "IndexPrimeError", "InconclusiveError",
]


class IndexPrimeError(ValueError):
    """The prime divides the index [O_K : Z[theta]]; callers exclude it."""


class InconclusiveError(RuntimeError):
    """A budgeted search ended without a definite answer."""


def _primes_below(n: int) -> list[int]:
    if n < 3:
        return [2] if n == 2 else []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n - 1) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [i for i, b in enumerate(sieve) if b]


def _factorize(n: int, cap: int | None = None) -> dict[int, int] | None:
    """Trial-division factorization; None when a cofactor above cap
    remains (cap=None factors completely)."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
        if cap is not None and d > cap and n > 1:
            break
    if n > 1:
        if cap is not None and n > cap:
            return None
        out[n] = out.get(n, 0) + 1
    return out


class CubicField:
    """Q[x]/(x^3 + a x^2 + b x + c) with exact power-basis arithmetic.

    Elements are integer (or Fraction) triples (u0, u1, u2) standing for
    u0 + u1*theta + u2*theta^2.
    """

    def __init__(self, a: int, b: int, c: int):
        if not intpoly.monic_cubic_irreducible(a, b, c):
            raise ValueError(
                f"x^3 + {a}x^2 + {b}x + {c} is reducible over Q")
        self.a, self.b, self.c = a, b, c
        self.disc = intpoly.cubic_disc(a, b, c)
        self.galois_type = "C3" if intpoly.is_square(self.disc) else "S3"
        # theta^3 = -(a t^2 + b t + c); theta^4 = theta * theta^3
        self._red3 = (-c, -b, -a)
        self._red4 = (a * c, a * b - c, a * a - b)
        self._embeddings = None

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def poly_coeffs_le(self) -> list[int]:
        """Little-endian coefficients of the defining cubic."""
        return [self.c, self.b, self.a, 1]

    @property
    def signature(self) -> tuple[int, int]:
        """(real embeddings, complex pairs): (3,0) iff disc > 0."""
        return (3, 0) if self.disc > 0 else (1, 1)

    # -- power-basis arithmetic ---------------------------------------

    def mul(self, u, v):
        u0, u1, u2 = u
        v0, v1, v2 = v
        w0 = u0 * v0
        w1 = u0 * v1 + u1 * v0
        w2 = u0 * v2 + u1 * v1 + u2 * v0
        w3 = u1 * v2 + u2 * v1
        w4 = u2 * v2
        r3, r4 = self._red3, self._red4
        return (w0 + w3 * r3[0] + w4 * r4[0],
                w1 + w3 * r3[1] + w4 * r4[1],
                w2 + w3 * r3[2] + w4 * r4[2])

    def pow(self, u, n: int):
        r = (1, 0, 0)
        while n:
            if n & 1:
                r = self.mul(r, u)
            u = self.mul(u, u)
            n >>= 1
        return r

    def mul_matrix(self, u):
        cols = [u, self.mul(u, (0, 1, 0)), self.mul(self.mul(u, (0, 1, 0)),
                                                    (0, 1, 0))]
        return [[cols[j][i] for j in range(3)] for i in range(3)]

    def norm(self, u) -> int:
        m = self.mul_matrix(u)
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def trace(self, u) -> int:
        a, b = self.a, self.b
        return 3 * u[0] - a * u[1] + (a * a - 2 * b) * u[2]

    def second_symmetric(self, u) -> int:
        """e2 of the conjugates of u: (tr(u)^2 - tr(u^2)) / 2."""
        t1 = self.trace(u)
        t2 = self.trace(self.mul(u, u))
        val = (t1 * t1 - t2)
        assert val % 2 == 0
        return val // 2

    # -- embeddings -----------------------------------------------------

    def embeddings(self, precision: int = 60):
        """Roots of the defining cubic as sympy numbers, real roots first;
        cached at the default precision."""
        if self._embeddings is None:
            x = sympy.Symbol("x")
            poly = sympy.Poly(
                x ** 3 + self.a * x * x + self.b * x + self.c, x)
            roots = poly.all_roots()
            evaled = [sympy.N(r, precision) for r in roots]
            real = [r for r in evaled if r.is_real]
            cplx = [r for r in evaled if not r.is_real]
            self._embeddings = real + cplx
        return self._embeddings

    def embed(self, u, root):
        return u[0] + u[1] * root + u[2] * root * root

    def _real_roots_float(self) -> list[float]:
        return [float(r) for r in self.embeddings() if r.is_real]

    def real_signs(self, u) -> list[int]:
        """Signs of u at the real embeddings.  Fast float path with a
        relative margin; high-precision fallback; raises when a value is
        too close to zero to certify."""
        out = []
        fallback = None
        for idx, r in enumerate(self._real_roots_float()):
            val = u[0] + u[1] * r + u[2] * r * r
            scale = abs(u[0]) + abs(u[1] * r) + abs(u[2] * r * r) + 1.0
            if abs(val) > 1e-9 * scale:
                out.append(1 if val > 0 else -1)
                continue
            if fallback is None:
                fallback = [rr for rr in self.embeddings() if rr.is_real]
            precise = self.embed(u, sympy.N(fallback[idx], 80))
            if abs(precise) < sympy.Float(10) ** (-40):
                if self.norm(u) == 0:
                    raise ValueError("zero element has no sign")
                raise InconclusiveError(
                    f"sign of {u} not certified at working precision")
            out.append(1 if precise > 0 else -1)
        return out

    def _embedding_matrix(self):
        roots = [complex(r) for r in self.embeddings()]
        v = np.array([[1.0, r, r * r] for r in roots], dtype=complex)
        return roots, np.linalg.inv(v)

    def is_square_element(self, u) -> bool:
        """Whether u is a square in the field: real-embedding obstruction
        first, then exact verification of rounded square-root candidates
        built from the numeric embeddings."""
        u = tuple(u)
        if all(x == 0 for x in u):
            return True
        if any(s < 0 for s in self.real_signs(u)):
            return False
        roots, vinv = self._embedding_matrix()
        vals = [complex(u[0] + u[1] * r + u[2] * r * r) for r in roots]
        sqrts = [complex(v) ** 0.5 for v in vals]
        for signs in itertools.product((1, -1), repeat=len(roots)):
            vec = np.array([s * w for s, w in zip(signs, sqrts)])
            coords = vinv @ vec
            base = [round(c.real) for c in coords]
            for jitter in itertools.product((-1, 0, 1), repeat=3):
                cand = tuple(int(b + j) for b, j in zip(base, jitter))
                if self.mul(cand, cand) == u:
                    return True
        return False

    def __repr__(self):
        return (f"CubicField(x^3 + {self.a}x^2 + {self.b}x + {self.c}, "
                f"disc={self.disc}, {self.galois_type})")

    def to_json(self):
        return {"coeffs": [self.a, self.b, self.c], "disc": self.disc,
                "galois_type": self.galois_type}


def cubic_field(coeffs) -> CubicField:
    """Constructor from (a, b, c) for x^3 + a x^2 + b x + c."""
    a, b, c = (int(x) for x in coeffs)
    return CubicField(a, b, c)


# -- splitting of rational primes ------------------------------------------


def _factor_cubic_full(fbar, p) -> list[tuple[list[int], int]]:
    """Complete factorization of a monic cubic over F_p as
    (irreducible factor, multiplicity) pairs.  Linear factors come from
    explicit roots (needs p within the brute cap); any rootless
    remainder of degree 2 or 3 is irreducible."""
    rest = list(fbar)
    out = []
    for r in sorted(set(fppoly.roots(fbar, p))):
        lin = fppoly.normalize([-r, 1], p)
        m = 0
        while True:
            quo, rem = fppoly.divmod_poly(rest, lin, p)
            if rem:
                break
            rest, m = quo, m + 1
        out.append((lin, m))
    if fppoly.degree(rest) >= 1:
        out.append((rest, 1))
    return out


def index_divides(K3: CubicField, p: int) -> bool:
    """Dedekind's criterion: whether p divides [O_K : Z[theta]].
    Cheap exit when p^2 does not divide disc(f)."""
    if K3.disc % (p * p) != 0:
        return False
    fle = K3.poly_coeffs_le
    fbar = fppoly.normalize(fle, p)
    factors = _factor_cubic_full(fbar, p)
    if all(m == 1 for _, m in factors):
        return False
    g = [1]
    for q, _ in factors:
        g = fppoly.mul(g, q, p)
    hbar = fppoly.divmod_poly(fbar, g, p)[0]
    # integral lifts with centered coefficients
    g_lift = [x if x <= p // 2 else x - p for x in g]
    h_lift = [x if x <= p // 2 else x - p for x in hbar]
    prod = [0] * (len(g_lift) + len(h_lift) - 1)
    for i, x in enumerate(g_lift):
        for j, y in enumerate(h_lift):
            prod[i + j] += x * y
    assert len(prod) == 4  # g*h is monic of the same degree as f
    diff = [prod[i] - fle[i] for i in range(4)]
    assert all(x % p == 0 for x in diff)
    tbar = fppoly.normalize([x // p for x in diff], p)
    ggt = fppoly.gcd(fppoly.gcd(tbar, g, p), hbar, p)
    return fppoly.degree(ggt) > 0


@dataclass(frozen=True)
class SplitType:
    """Factor shape of a rational prime in the cubic field."""

    p: int
    pattern: tuple[tuple[int, int], ...]  # (degree, multiplicity) pairs
    factors: tuple[tuple[int, ...], ...] = ()  # explicit when p is small

    @property
    def label(self) -> str:
        parts = []
        for d, m in self.pattern:
            parts.append(str(d) if m == 1 else f"{d}^{m}")
        return "(" + ",".join(parts) + ")"

    @property
    def ramified(self) -> bool:
        return any(m > 1 for _, m in self.pattern)

    def to_json(self):
        return {"p": self.p, "pattern": list(self.pattern),
                "label": self.label}


def split_type(K3: CubicField, p: int,
               want_factors: bool = False) -> SplitType:
    """Factorization shape of p in K3, guarded by Dedekind's criterion."""
    if index_divides(K3, p):
        raise IndexPrimeError(
            f"p={p} divides the index; use a p-maximal model or exclude p")
    pat = fppoly.factor_pattern(K3.poly_coeffs_le, p)
    factors: tuple = ()
    if want_factors:
        fbar = fppoly.normalize(K3.poly_coeffs_le, p)
        factors = tuple(tuple(q) for q, _ in _factor_cubic_full(fbar, p))
    return SplitType(p, pat, factors)


@dataclass(frozen=True)
class PrimeIdealData:
    """A prime of K3 above p with residue degree f (norm p^f)."""

    p: int
    residue_degree: int
    ram_index: int = 1
    local_factor: tuple[int, ...] | None = None
    frob_order_in_M: int | None = None

    @property
    def norm(self) -> int:
        return self.p ** self.residue_degree

    @property
    def has_square_norm(self) -> bool:
        return self.residue_degree == 2

    def to_json(self):
        return {"p": self.p, "f": self.residue_degree, "e": self.ram_index,
                "norm": self.norm, "frob_order_in_M": self.frob_order_in_M}


def degree2_primes(K3: CubicField, X: int) -> list[PrimeIdealData]:
    """All unramified degree-2 primes of norm p^2 < X, i.e. p with the
    (1,2) split pattern.  Index-divisor primes are skipped (finitely
    many; callers see them in census flags)."""
    if X < 4:
        return []
    out = []
    bound = math.isqrt(X - 1)  # p^2 < X  iff  p <= isqrt(X-1)
    for p in _primes_below(bound + 1):
        if K3.disc % p == 0:
            continue
        try:
            st = split_type(K3, p)
        except IndexPrimeError:
            continue
        if st.pattern == ((1, 1), (2, 1)):
            factor = None
            if p <= 20000:
                rts = fppoly.roots(K3.poly_coeffs_le, p)
                quad = fppoly.divmod_poly(
                    fppoly.normalize(K3.poly_coeffs_le, p),
                    [(-rts[0]) % p, 1], p)[0]
                factor = tuple(quad)
            out.append(PrimeIdealData(p, 2, 1, factor))
    return out


def frobenius_order_in_M(q: PrimeIdealData, curve) -> int:
    """Order of Frobenius at q in Gal(K3(E[2])/K3), read off from the
    factorization of the 2-division cubic over the residue field F_{p^f}:
    irreducible -> 3, fully split -> 1, root + quadratic -> 2."""
    p, f = q.p, q.residue_degree
    g = [curve.a6, curve.a4, 0, 1]
    if p == 2:
        raise ValueError("p=2 excluded (wild place)")
    gdisc = intpoly.cubic_disc(0, curve.a4, curve.a6)
    if gdisc % p == 0:
        raise ValueError(f"p={p} ramifies in the 2-division field")
    nroots = fppoly.count_roots(g, p, power=f)
    if nroots == 3:
        return 1
    if nroots == 1:
        return 2
    assert nroots == 0
    return 3


# -- the censuses ------------------------------------------------------------


@dataclass(frozen=True)
class CensusRecord:
    X: int
    count: int
    S_size: int
    M_over_K3: int
    mode: str
    count_with_surrogate: int | None = None

    def to_json(self):
        return {"X": self.X, "count": self.count, "S_size": self.S_size,
                "M_over_K3": self.M_over_K3, "mode": self.mode,
                "count_with_surrogate": self.count_with_surrogate}


@dataclass(frozen=True)
class CensusResult:
    records: tuple[CensusRecord, ...]
    qualifying_primes: tuple[int, ...]
    excluded_primes: tuple[int, ...]
    mode: str

    def to_json(self):
        return {"mode": self.mode,
                "records": [r.to_json() for r in self.records],
                "qualifying_primes": list(self.qualifying_primes),
                "excluded_primes": list(self.excluded_primes)}


def division_field_degree_over_K3(K3: CubicField, curve) -> int:
    """[K3(E[2]) : K3], exact: 6 or 3 when the division cubic stays
    irreducible and K3 is not the division field, else 2 or 1."""
    a, b = curve.a4, curve.a6
    gdisc = intpoly.cubic_disc(0, a, b)
    if not intpoly.monic_cubic_irreducible(0, a, b):
        # E[2] generates at most a quadratic extension
        return 1 if intpoly.is_square(gdisc) else 2
    if field_equal_cubics(K3, CubicField(0, a, b)):
        return 1 if intpoly.is_square(gdisc) else 2
    return 3 if intpoly.is_square(gdisc) else 6


def census(K3: CubicField, curve, X_max: int, mode: str,
           ladder: list[int] | None = None) -> CensusResult:
    """Counts of square-norm ideals built from primes whose Frobenius in
    K3(E[2])/K3 has order 3.

    S3 mode (Lemma-4.2 shape): nonempty squarefree products of degree-2
    primes.  C3 mode (Lemma-4.3 shape): products of pairs of distinct
    degree-1 primes over fully split rational primes (3 choices per p).
    Norm bound is strict: N(b) < X.
    """
    if mode not in ("S3", "C3"):
        raise ValueError("mode must be S3 or C3")
    if mode != K3.galois_type:
        raise ValueError(
            f"mode {mode} does not match field type {K3.galois_type}")
    ladder = sorted(set(ladder or
                        [2 ** k for k in range(10, 25)
                         if 2 ** k <= X_max] + [X_max]))
    ladder = [x for x in ladder if x <= X_max]
    m_deg = division_field_degree_over_K3(K3, curve)
    s_size = 2 if m_deg in (3, 6) else 0
    gdisc = intpoly.cubic_disc(0, curve.a4, curve.a6)

    B = math.isqrt(X_max - 1) if X_max > 1 else 0
    qualifying: list[int] = []
    excluded: list[int] = []
    target_pattern = ((1, 1), (2, 1)) if mode == "S3" else ((1, 1),) * 3
    for p in _primes_below(B + 1):
        if p == 2 or K3.disc % p == 0 or gdisc % p == 0:
            excluded.append(p)
            continue
        try:
            st = split_type(K3, p)
        except IndexPrimeError:
            excluded.append(p)
            continue
        if st.pattern != target_pattern:
            continue
        if s_size == 0:
            continue  # no order-3 Frobenius targets exist
        probe = PrimeIdealData(p, 2 if mode == "S3" else 1)
        if frobenius_order_in_M(probe, curve) == 3:
            qualifying.append(p)

    # dp[m] = number of qualifying ideals whose norm is m^2
    dp = [0] * (B + 1)
    if B >= 1:
        dp[1] = 1
        weight = 1 if mode == "S3" else 3
        for p in qualifying:
            for m in range(B // p, 0, -1):
                if dp[m]:
                    dp[m * p] += weight * dp[m]
    records = []
    for X in ladder:
        bx = math.isqrt(X - 1) if X > 1 else 0
        cnt = sum(dp[2: bx + 1]) if bx >= 2 else 0
        records.append(CensusRecord(X, cnt, s_size, m_deg, mode))
    return CensusResult(tuple(records), tuple(qualifying), tuple(excluded),
                        mode)


def chebotarev_fraction(K3: CubicField, bound: int) -> dict[str, Fraction]:
    """Fractions of unramified primes below `bound` by split pattern."""
    counts: dict[str, int] = {}
    total = 0
    for p in _primes_below(bound):
        if K3.disc % p == 0:
            continue
        try:
            st = split_type(K3, p)
        except IndexPrimeError:
            continue
        total += 1
        counts[st.label] = counts.get(st.label, 0) + 1
    return {k: Fraction(v, total) for k, v in counts.items()}


@dataclass(frozen=True)
class FitResult:
    half_power_slope: float
    log_exponent: float
    slope_residual: float
    log_residual: float

    def to_json(self):
        return {"half_power_slope": self.half_power_slope,
                "log_exponent": self.log_exponent,
                "slope_residual": self.slope_residual,
                "log_residual": self.log_residual}


def fit_exponent(records) -> FitResult:
    """Least-squares slope of log count vs log X (target 1/2), and the
    fitted log-power exponent after removing the X^(1/2) factor."""
    pts = [(r.X, r.count) for r in records if r.count > 0]
    if len(pts) < 5:
        raise ValueError("need at least 5 records with positive counts")
    xs = [x for x, _ in pts]
    if max(xs) < 100 * min(xs):
        raise ValueError("records must span at least two decades in X")

    def least_squares(ts, ys):
        n = len(ts)
        tbar = sum(ts) / n
        ybar = sum(ys) / n
        num = sum((t - tbar) * (y - ybar) for t, y in zip(ts, ys))
        den = sum((t - tbar) ** 2 for t in ts)
        slope = num / den
        resid = max(abs(y - (ybar + slope * (t - tbar)))
                    for t, y in zip(ts, ys))
        return slope, resid

    slope, sres = least_squares([math.log(x) for x, _ in pts],
                                [math.log(c) for _, c in pts])
    lslope, lres = least_squares(
        [math.log(math.log(x)) for x, _ in pts],
        [math.log(c) - 0.5 * math.log(x) for x, c in pts])
    return FitResult(slope, -lslope, sres, lres)


# -- ideals as lattices ------------------------------------------------------


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal (p, g(theta)) of Z[theta], as an HNF row lattice."""

    field: CubicField
    p: int
    residue_degree: int
    ram_index: int
    gen_poly: tuple[int, ...]  # monic factor of f mod p, little-endian
    lattice: tuple[tuple[int, ...], ...]

    @property
    def norm(self) -> int:
        return self.p ** self.residue_degree

    def data(self) -> PrimeIdealData:
        return PrimeIdealData(self.p, self.residue_degree, self.ram_index,
                              self.gen_poly)


def prime_ideals_above(K3: CubicField, p: int) -> list[PrimeIdeal]:
    """The primes of Z[theta] above p, via the factorization of f mod p;
    raises IndexPrimeError when p divides the index."""
    st = split_type(K3, p, want_factors=True)
    fbar = fppoly.normalize(K3.poly_coeffs_le, p)
    out = []
    for g in st.factors:
        glist = list(g)
        mult = 0
        rest = fbar
        while True:
            quo, rem = fppoly.divmod_poly(rest, glist, p)
            if rem:
                break
            rest = quo
            mult += 1
        elem = _poly_of_theta(K3, glist, p)
        rows = [[p, 0, 0], [0, p, 0], [0, 0, p]]
        for k in range(3):
            rows.append(list(K3.mul(elem, _theta_power(k))))
        out.append(PrimeIdeal(K3, p, len(glist) - 1, mult, tuple(glist),
                              _hnf_rows(rows)))
    return out


def _theta_power(k: int):
    return tuple(1 if i == k else 0 for i in range(3))


def _poly_of_theta(K3: CubicField, coeffs_le, p: int):
    """Evaluate a mod-p polynomial at theta with centered lifts."""
    lifted = [x if x <= p // 2 else x - p for x in coeffs_le]
    acc = (0, 0, 0)
    for k, cc in enumerate(lifted):
        if cc:
            term = tuple(cc * x for x in K3.pow((0, 1, 0), k))
            acc = tuple(a + t for a, t in zip(acc, term))
    return acc


def _hnf_rows(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in hnf(rows, 3))


def ideal_product(K3: CubicField, lat1, lat2) -> tuple[tuple[int, ...], ...]:
    rows = []
    for u in lat1:
        for v in lat2:
            rows.append(list(K3.mul(u, v)))
    return _hnf_rows(rows)


def ideal_norm(lattice) -> int:
    return lattice[0][0] * lattice[1][1] * lattice[2][2]


def element_in_lattice(u, lattice) -> bool:
    return hnf_solve([list(r) for r in lattice], list(u)) is not None


def valuation(K3: CubicField, u, P: PrimeIdeal, cap: int = 60) -> int:
    """v_P(u) by ideal-power membership."""
    if all(x == 0 for x in u):
        raise ValueError("zero element")
    power = P.lattice
    v = 0
    while v < cap and element_in_lattice(u, power):
        v += 1
        power = ideal_product(K3, power, P.lattice)
    return v


# -- class group -------------------------------------------------------------


def minkowski_bound(K3: CubicField) -> int:
    _, r2 = K3.signature
    bound = (6.0 / 27.0) * (4.0 / math.pi) ** r2 * math.sqrt(abs(K3.disc))
    return math.ceil(bound)


def class_group_2_rank(K3: CubicField, disc_cap: int = 10 ** 6,
                       max_radius: int = 40) -> int:
    """2-rank of the class group by the naive relation-lattice method:
    factor-base primes up to the Minkowski bound, relations from
    factorizations of small elements, Smith reduction, growth until the
    quotient stabilizes across two box doublings."""
    if abs(K3.disc) > disc_cap:
        raise ValueError(
            f"|disc| = {abs(K3.disc)} exceeds the bound {disc_cap}")
    B = minkowski_bound(K3)
    base: list[PrimeIdeal] = []
    for p in _primes_below(B + 1):
        if index_divides(K3, p):
            raise InconclusiveError(
                f"index prime p={p} below the Minkowski bound")
        for P in prime_ideals_above(K3, p):
            if P.norm <= B:
                base.append(P)
    if not base:
        return 0

    relations: list[list[int]] = []
    # relations from rational primes fully accounted for inside the base
    for p in sorted({P.p for P in base}):
        ideals_above = prime_ideals_above(K3, p)
        if all(Q.norm <= B for Q in ideals_above):
            vec = [0] * len(base)
            ok = True
            for Q in ideals_above:
                idx = next(i for i, P in enumerate(base)
                           if P.lattice == Q.lattice)
                vec[idx] = Q.ram_index
            relations.append(vec)

    seen_invariants: list[list[int]] = []
    radius = 2
    while radius <= max_radius:
        for u in _box_elements(radius):
            n = K3.norm(u)
            if n == 0:
                continue
            fac = _factorize(n, cap=B)
            if fac is None or any(p > B for p in fac):
                continue
            vec = [0] * len(base)
            ok = True
            for p in fac:
                above = [(i, P) for i, P in enumerate(base) if P.p == p]
                if not above:
                    ok = False
                    break
                acc = 0
                for i, P in enumerate(base):
                    if P.p != p:
                        continue
                    v = valuation(K3, u, P)
                    vec[i] = v
                    acc += v * P.residue_degree
                if acc != fac[p]:
                    ok = False  # supported on a prime outside the base
                    break
            if ok:
                relations.append(vec)
        inv = _quotient_invariants(relations, len(base))
        if inv is not None:
            seen_invariants.append(inv)
            if len(seen_invariants) >= 2 and \
                    seen_invariants[-1] == seen_invariants[-2]:
                return sum(1 for d in inv if d % 2 == 0)
        radius *= 2
    raise InconclusiveError(
        f"class group relations did not stabilize within radius {max_radius}")


def _box_elements(radius: int):
    rng = range(-radius, radius + 1)
    for x in rng:
        for y in rng:
            for z in rng:
                if (x, y, z) > (0, 0, 0):  # skip 0 and one of each +/- pair
                    yield (x, y, z)


def _quotient_invariants(relations, k) -> list[int] | None:
    """Invariant factors of Z^k / <relations>, or None while infinite."""
    if not relations:
        return None
    inv = snf_invariants([list(r) for r in relations])
    if len(inv) < k:
        return None  # free part remains: not saturated yet
    return inv


# -- units and principality --------------------------------------------------


@lru_cache(maxsize=32)
def _units_cached(coeffs) -> tuple[tuple[int, int, int], ...]:
    K3 = cubic_field(coeffs)
    rank = K3.signature[0] + (1 if K3.signature[1] else 0) - 1
    found: list[tuple[int, int, int]] = []
    for radius in (1, 2, 3, 5, 8, 13):
        for u in _box_elements(radius):
            if abs(K3.norm(u)) == 1 and u != (1, 0, 0):
                if u not in found and tuple(-x for x in u) not in found:
                    found.append(u)
        if _independent_rank(K3, found) >= rank:
            break
    return tuple(found[:8])


def _independent_rank(K3: CubicField, units) -> int:
    """Rank of the log-embedding images (numeric, wide margin)."""
    if not units:
        return 0
    rows = []
    for u in units:
        logs = []
        for r in K3.embeddings():
            mult = 1 if r.is_real else 2
            logs.append(mult * math.log(abs(complex(K3.embed(u, r)))))
        rows.append(logs[:-1])
    a = np.array(rows, dtype=float)
    return int(np.linalg.matrix_rank(a, tol=1e-8))


@dataclass(frozen=True)
class PrincipalityResult:
    ideal_norm: int
    status: str  # found | inconclusive | nonprincipal
    h: int | None = None
    generator: tuple[int, int, int] | None = None
    congruence_ok: bool | None = None
    signs_ok: bool | None = None
    note: str = ""

    @property
    def principal(self) -> bool:
        return self.status == "found"

    def to_json(self):
        return {"ideal_norm": self.ideal_norm, "status": self.status,
                "h": self.h,
                "generator": list(self.generator) if self.generator else None,
                "congruence_ok": self.congruence_ok,
                "signs_ok": self.signs_ok, "note": self.note}


def _find_generator(K3: CubicField, lattice, target: int,
                    coeff_radius: int):
    """A lattice element of absolute norm `target` (then (elem) equals
    the ideal), from a bounded box over an LLL-reduced basis."""
    roots = [complex(r) for r in K3.embeddings()]

    def gram(u, v):
        total = 0.0
        for r in roots:
            eu = u[0] + u[1] * r + u[2] * r * r
            ev = v[0] + v[1] * r + v[2] * r * r
            total += (eu * ev.conjugate()).real
        return total

    reduced = lll_reduce([list(r) for r in lattice], gram)
    for coeffs in _sorted_boxes(coeff_radius):
        cand = tuple(
            sum(c * reduced[i][k] for i, c in enumerate(coeffs))
            for k in range(3))
        if abs(K3.norm(cand)) == target:
            return cand
    return None


def _sorted_boxes(radius: int):
    combos = sorted(
        itertools.product(range(-radius, radius + 1), repeat=3),
        key=lambda c: (max(abs(x) for x in c), c))
    for c in combos:
        if any(c):
            yield c


def _sign_vector(K3: CubicField, u, v0_real_index):
    signs = K3.real_signs(u)
    return tuple(s for i, s in enumerate(signs)
                 if v0_real_index is None or i != v0_real_index)


class _UnitResidueGroup:
    """The image of <-1, units> in (O/M)^x together with sign vectors at
    the real places away from v0: a dictionary from (residue, signs) to a
    generator word, enumerated once by closure."""

    def __init__(self, K3: CubicField, modulus, v0_real_index,
                 cap: int = 300_000):
        self.K3 = K3
        self.modulus = [list(r) for r in modulus]
        self.v0 = v0_real_index
        gens = [(-1, 0, 0)]
        for u in _units_cached(K3.coeffs):
            gens.append(u)
            gens.append(_unit_inverse(K3, u))
        self.gens = gens
        ident_key = (self._reduce((1, 0, 0)),
                     _sign_vector(K3, (1, 0, 0), v0_real_index))
        self.table: dict[tuple, tuple] = {ident_key: ()}
        elements = {ident_key: (1, 0, 0)}
        frontier = [ident_key]
        while frontier:
            new = []
            for key in frontier:
                elem = elements[key]
                word = self.table[key]
                for gi, g in enumerate(gens):
                    nxt = K3.mul(elem, g)
                    nkey = (self._reduce(nxt),
                            _sign_vector(K3, _small_sign_proxy(nxt), None)
                            if False else self._key_signs(nxt))
                    if nkey not in self.table:
                        if len(self.table) >= cap:
                            raise InconclusiveError(
                                "unit residue group exceeds cap")
                        self.table[nkey] = word + (gi,)
                        elements[nkey] = nxt
                        new.append(nkey)
            frontier = new
        self._elements = elements

    def _key_signs(self, u):
        return _sign_vector(self.K3, u, self.v0)

    def _reduce(self, u):
        v = list(u)
        H = self.modulus
        for j in range(3):
            q = v[j] // H[j][j]
            if q:
                v = [a - q * b for a, b in zip(v, H[j])]
        return tuple(v)

    def lookup(self, residue, signs):
        """The exact element u0 with matching (residue, signs), or None."""
        return self._elements.get((tuple(residue), tuple(signs)))


@lru_cache(maxsize=16)
def _unit_residue_group_cached(coeffs, modulus_rows, v0_real_index, cap):
    K3 = cubic_field(coeffs)
    return _UnitResidueGroup(K3, modulus_rows, v0_real_index, cap)


def is_principal_with_congruence(
        K3: CubicField, prime_ideals: list[PrimeIdeal],
        modulus_lattice=None, v0_real_index: int | None = None,
        h_cap: int = 9, coeff_radius: int = 6,
        unit_group_cap: int = 300_000) -> PrincipalityResult:
    """Search for the smallest odd h with (prod ideals)^h = (alpha),
    alpha = 1 mod the modulus lattice and positive at every real place
    except possibly index v0_real_index.

    Generators come from an LLL-steered box over the ideal lattice, then
    congruence and sign compliance is decided exactly against the image
    of the unit group in (O/M)^x x signs.  Exhausted budgets report as
    inconclusive, never as non-principality.
    """
    lat = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for P in prime_ideals:
        lat = ideal_product(K3, lat, P.lattice)
    n_ideal = ideal_norm(lat)

    g1 = _find_generator(K3, lat, n_ideal, coeff_radius)
    unconstrained = modulus_lattice is None and v0_real_index is None
    if unconstrained:
        if g1 is not None:
            return PrincipalityResult(n_ideal, "found", 1, g1, None, None)
        power = lat
        lat2 = ideal_product(K3, lat, lat)
        for h in range(3, h_cap + 1, 2):
            power = ideal_product(K3, power, lat2)
            g = _find_generator(K3, power, n_ideal ** h, coeff_radius)
            if g is not None:
                return PrincipalityResult(n_ideal, "found", h, g,
                                          None, None)
        return PrincipalityResult(
            n_ideal, "inconclusive",
            note=f"no generator within h<={h_cap}, box {coeff_radius}")

    group = _unit_residue_group_cached(
        K3.coeffs, tuple(tuple(r) for r in modulus_lattice),
        v0_real_index, unit_group_cap)
    power = lat
    lat2 = ideal_product(K3, lat, lat)
    base_sign = _sign_vector(K3, g1, v0_real_index) if g1 is not None else ()
    for h in range(1, h_cap + 1, 2):
        if h > 1:
            power = ideal_product(K3, power, lat2)
        if g1 is not None:
            gh = K3.pow(g1, h)
            sign_h = tuple(s ** h for s in base_sign)
        else:
            gh = _find_generator(K3, power, n_ideal ** h, coeff_radius)
            if gh is None:
                continue
            sign_h = _sign_vector(K3, gh, v0_real_index)
        residue = group._reduce(gh)
        u0 = group.lookup(residue, sign_h)
        if u0 is None:
            continue
        alpha = K3.mul(gh, _unit_inverse(K3, u0))
        # exact verification of everything the result claims
        assert abs(K3.norm(alpha)) == n_ideal ** h
        shifted = (alpha[0] - 1, alpha[1], alpha[2])
        cong = element_in_lattice(shifted, modulus_lattice)
        sgn = all(s > 0 for s in _sign_vector(K3, alpha, v0_real_index))
        if cong and sgn:
            return PrincipalityResult(n_ideal, "found", h, alpha, True, True)
    return PrincipalityResult(
        n_ideal, "inconclusive", note=(
            f"no compliant generator within h<={h_cap}, "
            f"box {coeff_radius}"))


def _unit_inverse(K3: CubicField, u):
    n = K3.norm(u)
    assert abs(n) == 1
    # u^-1 = N(u)^-1 * (second row of adjugate action): compute by solving
    # u * x = 1 in the power basis via the multiplication matrix
    m = K3.mul_matrix(u)
    det = n
    adj = [[(m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
             - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3])
            for i in range(3)] for j in range(3)]
    inv_col = [adj[i][0] * (1 if det == 1 else -1) for i in range(3)]
    result = tuple(inv_col)
    assert K3.mul(u, result) == (1, 0, 0)
    return result


def _check_conditions(K3, alpha, modulus_lattice, v0_real_index):
    cong = True
    if modulus_lattice is not None:
        shifted = (alpha[0] - 1, alpha[1], alpha[2])
        cong = element_in_lattice(shifted, modulus_lattice)
    try:
        signs = K3.real_signs(alpha)
    except InconclusiveError:
        return None
    sgn = all(s > 0 for i, s in enumerate(signs)
              if v0_real_index is None or i != v0_real_index)
    if cong and sgn:
        return alpha, cong, sgn
    return None


def modulus_lattice_8d(K3: CubicField, odd_primes: list[int]):
    """The lattice of 8 * prod(primes above each listed odd p), the
    finite part of the ray modulus used by the principality surrogate."""
    lat = ((8, 0, 0), (0, 8, 0), (0, 0, 8))
    for p in sorted(set(odd_primes)):
        for P in prime_ideals_above(K3, p):
            lat = ideal_product(K3, lat, P.lattice)
    return lat


# -- cubic field equality ----------------------------------------------------


def field_equal_cubics(K1: CubicField, K2: CubicField,
                       witnesses: int = 50) -> bool:
    """Monte Carlo field equality: same Galois type, compatible
    discriminant class (product is a square), and identical split
    patterns at `witnesses` unramified primes."""
    if K1.coeffs == K2.coeffs:
        return True
    if K1.galois_type != K2.galois_type:
        return False
    if not intpoly.is_square(K1.disc * K2.disc):
        return False
    checked = 0
    p = 2
    while checked < witnesses:
        p = _next_prime(p)
        if (K1.disc * K2.disc) % p == 0:
            continue
        try:
            s1 = split_type(K1, p)
            s2 = split_type(K2, p)
        except IndexPrimeError:
            continue
        if s1.pattern != s2.pattern:
            return False
        checked += 1
    return True


def _next_prime(p: int) -> int:
    candidate = p + 1
    while True:
        if candidate > 2 and candidate % 2 == 0:
            candidate += 1
            continue
        if all(candidate % q for q in range(3, math.isqrt(candidate) + 1, 2)) \
                and candidate > 1:
            return candidate
        candidate += 1
