"""Small exact integer-lattice utilities: Hermite and Smith normal forms
for the ideal and class-group bookkeeping, and a compact LLL reduction
used to steer generator searches (reduction is float-assisted, every
consumer re-verifies candidates exactly)."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["hnf", "hnf_solve", "snf_invariants", "lll_reduce"]


def hnf(rows: list[list[int]], dim: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by `rows`
    inside Z^dim: returns an upper-triangular dim x dim basis with
    positive diagonal and reduced off-diagonal entries.  Raises if the
    rows do not span a full-rank sublattice."""
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int] | None] = [None] * dim

    def insert(v: list[int]):
        for i in range(dim):
            if v[i] == 0:
                continue
            if basis[i] is None:
                if v[i] < 0:
                    v = [-x for x in v]
                basis[i] = v
                return
            b = basis[i]
            # replace (b, v) by (gcd combination, reduced remainder)
            while v[i]:
                q = b[i] // v[i]
                b, v = v, [x - q * y for x, y in zip(b, v)]
            basis[i] = b if b[i] > 0 else [-x for x in b]
        # fully reduced to zero: drop

    for r in work:
        insert(r)
    if any(b is None for b in basis):
        raise ValueError("rows do not span a full-rank lattice")
    out = [list(b) for b in basis]  # type: ignore[arg-type]
    # reduce entries above each pivot
    for j in range(dim):
        for i in range(j):
            q = out[i][j] // out[j][j]
            if q:
                out[i] = [x - q * y for x, y in zip(out[i], out[j])]
    return out


def hnf_solve(H: list[list[int]], v: list[int]) -> list[int] | None:
    """Solve x * H = v over Z for upper-triangular H with positive
    diagonal; None when v is not in the row lattice."""
    n = len(H)
    x = [0] * n
    r = list(v)
    for j in range(n):
        if r[j] % H[j][j] != 0:
            return None
        x[j] = r[j] // H[j][j]
        if x[j]:
            r = [a - x[j] * b for a, b in zip(r, H[j])]
    return x if not any(r) else None


def snf_invariants(mat: list[list[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix
    (rows = relations); trailing zero rows/columns are implicit."""
    a = [list(r) for r in mat]
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    invariants = []
    top = 0
    while top < min(rows, cols):
        # find the smallest nonzero pivot in the remaining block
        pivot = None
        for i in range(top, rows):
            for j in range(top, cols):
                if a[i][j] and (pivot is None or
                                abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[top], a[pi] = a[pi], a[top]
        for r in a:
            r[top], r[pj] = r[pj], r[top]
        changed = True
        while changed:
            changed = False
            for i in range(top + 1, rows):
                if a[i][top]:
                    q = a[i][top] // a[top][top]
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
                        changed = True
            for j in range(top + 1, cols):
                col = [a[i][j] for i in range(rows)]
                if col[top]:
                    q = col[top] // a[top][top]
                    if q:
                        for i in range(rows):
                            a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for i in range(rows):
                            a[i][top], a[i][j] = a[i][j], a[i][top]
                        changed = True
        # ensure pivot divides the rest of the block
        d = abs(a[top][top])
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if a[i][j] % d != 0:
                    a[top] = [x + y for x, y in zip(a[top], a[i])]
                    changed = True
                    break
            else:
                continue
            break
        if changed:
            continue
        invariants.append(d)
        top += 1
    return invariants


def lll_reduce(rows: list[list[int]], gram) -> list[list[int]]:
    """LLL-reduce integer basis rows with respect to a positive-definite
    quadratic form given by gram(u, v) -> float.  Returns new integer
    rows spanning the same lattice; quality is heuristic, callers verify
    anything they consume."""
    b = [list(r) for r in rows]
    n = len(b)
    delta = 0.99

    def gso():
        mu = [[0.0] * n for _ in range(n)]
        bstar_norm = [0.0] * n
        bstar: list[list[float]] = []
        for i in range(n):
            vi = [float(x) for x in b[i]]
            for j in range(i):
                if bstar_norm[j] < 1e-300:
                    mu[i][j] = 0.0
                    continue
                mu[i][j] = _form_dot(b[i], bstar[j], gram) / bstar_norm[j]
                vi = [x - mu[i][j] * y for x, y in zip(vi, bstar[j])]
            bstar.append(vi)
            bstar_norm[i] = _form_dot(vi, vi, gram)
        return mu, bstar_norm

    k = 1
    mu, bn = gso()
    guard = 0
    while k < n and guard < 10_000:
        guard += 1
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, bn = gso()
        if bn[k] >= (delta - mu[k][k - 1] ** 2) * bn[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, bn = gso()
            k = max(k - 1, 1)
    return b


def _form_dot(u, v, gram) -> float:
    return gram([float(x) for x in u], [float(y) for y in v])
