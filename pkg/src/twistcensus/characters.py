"""Exact character theory for S4 and A4: tables computed from scratch,
induced trivial characters, inner products, and the four-term induced
identity that converts subgroup data into rank bookkeeping.

Values live in Z[w], w a primitive cube root of unity, represented
exactly; S4 tables are rational, A4 needs w for its two nontrivial
linear characters.  Tables are derived by orthogonality-driven
splitting of natural characters (never hardcoded) and snapshot-tested.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .permgroup import PermGroup, Permutation, symmetric_group, alternating_group

__all__ = [
    "Cyc3", "ClassFunction", "SubgroupHandle", "CharacterContext",
    "character_table", "induce_trivial", "inner_product",
    "rank_growth_identity", "context_for", "quadratic_layer_subgroup",
]


class Cyc3:
    """An element a + b*w of Q(w), w^2 + w + 1 = 0, with exact arithmetic."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, other):
        other = _coerce(other)
        return Cyc3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Cyc3(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, w^2 = -1 - w
        a, b, c, d = self.a, self.b, other.a, other.b
        return Cyc3(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyc3):
            raise TypeError("division by Cyc3 not needed")
        return Cyc3(self.a / other, self.b / other)

    def __neg__(self):
        return Cyc3(-self.a, -self.b)

    def conj(self):
        # w -> w^2 = -1 - w
        return Cyc3(self.a - self.b, -self.b)

    def __eq__(self, other):
        other = _coerce(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}w" if self.b != 1 else "w"
        sign = "+" if self.b > 0 else "-"
        bb = abs(self.b)
        return f"{self.a}{sign}{bb if bb != 1 else ''}w"

    def to_json(self):
        if self.b == 0 and self.a.denominator == 1:
            return int(self.a)
        return {"a": str(self.a), "b": str(self.b)}


def _coerce(x) -> Cyc3:
    return x if isinstance(x, Cyc3) else Cyc3(x)


W = Cyc3(0, 1)
W_BAR = W.conj()


class CharacterContext:
    """Conjugacy-class data for one of the supported groups."""

    def __init__(self, group_id: str, group: PermGroup):
        self.group_id = group_id
        self.group = group
        self.classes = group.conjugacy_classes()
        self._class_of: dict[tuple, int] = {}
        for idx, (rep, _) in enumerate(self.classes):
            orbit = {rep._img}
            frontier = [rep._img]
            gens = [g._img for g in group.generators]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    ginv = tuple(sorted(range(len(g)), key=g.__getitem__))
                    y = tuple(g[x[ginv[i]]] for i in range(len(g)))
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            for t in orbit:
                self._class_of[t] = idx

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def class_index(self, p: Permutation) -> int:
        return self._class_of[p._img]

    def class_sizes(self) -> list[int]:
        return [s for _, s in self.classes]

    def cycle_types(self) -> list[tuple[int, ...]]:
        out = []
        for rep, _ in self.classes:
            seen = [False] * rep.degree
            lens = []
            for i in range(rep.degree):
                if seen[i]:
                    continue
                n, j = 0, i
                while not seen[j]:
                    seen[j] = True
                    j = rep._img[j]
                    n += 1
                lens.append(n)
            out.append(tuple(sorted(lens, reverse=True)))
        return out


@lru_cache(maxsize=None)
def context_for(group_id: str) -> CharacterContext:
    if group_id == "S4":
        return CharacterContext("S4", symmetric_group(4))
    if group_id == "A4":
        return CharacterContext("A4", alternating_group(4))
    raise ValueError(f"unsupported group {group_id!r} (S4 or A4)")


@dataclass(frozen=True)
class ClassFunction:
    """An exact-valued function on the conjugacy classes of S4 or A4,
    ordered to match the context's class list."""

    group_id: str
    values: tuple[Cyc3, ...]

    def __post_init__(self):
        ctx = context_for(self.group_id)
        if len(self.values) != ctx.n_classes:
            raise ValueError(
                f"expected {ctx.n_classes} values, got {len(self.values)}")

    @classmethod
    def from_values(cls, group_id: str, vals) -> "ClassFunction":
        return cls(group_id, tuple(_coerce(v) for v in vals))

    @classmethod
    def of_element_function(cls, group_id: str, fn) -> "ClassFunction":
        ctx = context_for(group_id)
        return cls(group_id, tuple(_coerce(fn(rep)) for rep, _ in ctx.classes))

    @property
    def dim(self) -> Cyc3:
        ctx = context_for(self.group_id)
        ident_idx = ctx.class_index(Permutation.identity(ctx.group.degree))
        return self.values[ident_idx]

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group_id, tuple(
            a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group_id, tuple(
            a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group_id, tuple(
                a * b for a, b in zip(self.values, other.values)))
        return ClassFunction(self.group_id,
                             tuple(v * _coerce(other) for v in self.values))

    def _check(self, other):
        if not isinstance(other, ClassFunction) or \
                other.group_id != self.group_id:
            raise ValueError("class functions on different groups")

    def is_zero(self) -> bool:
        return all(v == Cyc3(0) for v in self.values)

    def to_json(self):
        return {"group": self.group_id,
                "values": [v.to_json() for v in self.values]}


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup presented inside its ambient group."""

    ambient: PermGroup
    subgroup: PermGroup

    def __post_init__(self):
        if not self.subgroup.is_subgroup(self.ambient):
            raise ValueError("not a subgroup of the ambient group")


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyc3:
    """(1/|G|) sum over classes of size * a * conj(b)."""
    if a.group_id != b.group_id:
        raise ValueError("class functions on different groups")
    ctx = context_for(a.group_id)
    total = Cyc3(0)
    for size, x, y in zip(ctx.class_sizes(), a.values, b.values):
        total = total + (x * y.conj()) * size
    return total / ctx.group.order()


def induce_trivial(G: PermGroup, H: SubgroupHandle,
                   group_id: str | None = None) -> ClassFunction:
    """Ind_H^G of the trivial character, by the Frobenius fixed-coset
    count: value at g is |{x in G : x^-1 g x in H}| / |H|."""
    if H.ambient is not G and H.ambient.to_json() != G.to_json():
        raise ValueError("handle's ambient group differs from G")
    gid = group_id or _group_id_of(G)
    ctx = context_for(gid)
    elems = list(G.elements())
    vals = []
    for rep, _ in ctx.classes:
        cnt = sum(1 for x in elems if (x.inverse() * rep * x) in H.subgroup)
        vals.append(Cyc3(Fraction(cnt, H.subgroup.order())))
    return ClassFunction(gid, tuple(vals))


def _group_id_of(G: PermGroup) -> str:
    if G.degree == 4 and G.order() == 24:
        return "S4"
    if G.degree == 4 and G.order() == 12:
        return "A4"
    raise ValueError("only S4 and A4 carry character contexts here")


# -- table construction ----------------------------------------------------


def _linear_characters(ctx: CharacterContext) -> list[ClassFunction]:
    """Lifts of the characters of the (cyclic) abelianization."""
    G = ctx.group
    elems = list(G.elements())
    comms = {x * y * x.inverse() * y.inverse() for x in elems for y in elems}
    derived = PermGroup(list(comms) or [Permutation.identity(G.degree)],
                        degree=G.degree)
    k = G.order() // derived.order()
    if k == 1:
        return [ClassFunction.from_values(ctx.group_id,
                                          [1] * ctx.n_classes)]
    # coset discrete log for a cyclic quotient
    cosets: list[set[Permutation]] = []
    seen: set[Permutation] = set()
    for x in elems:
        if x in seen:
            continue
        coset = {x * d for d in derived.elements()}
        seen |= coset
        cosets.append(coset)
    gen_coset = next(
        c for c in cosets
        if _coset_order(c, cosets, elems[0].degree) == k)
    gen = min(gen_coset, key=lambda p: p._img)
    dlog: dict[int, int] = {}
    power = Permutation.identity(G.degree)
    for i in range(k):
        idx = next(j for j, c in enumerate(cosets) if power in c)
        dlog[idx] = i
        power = power * gen
    if k == 2:
        zeta = [Cyc3(1), Cyc3(-1)]
    elif k == 3:
        zeta = [Cyc3(1), W, W_BAR]
    else:
        raise ValueError(f"unsupported abelianization order {k}")
    out = []
    for j in range(k):
        vals = []
        for rep, _ in ctx.classes:
            idx = next(i for i, c in enumerate(cosets) if rep in c)
            vals.append(zeta[(j * dlog[idx]) % k])
        out.append(ClassFunction(ctx.group_id, tuple(vals)))
    return out


def _coset_order(coset, cosets, degree) -> int:
    rep = min(coset, key=lambda p: p._img)
    power = Permutation.identity(degree)
    for i in range(1, len(cosets) + 1):
        power = power * rep
        if any(power in c for c in cosets if
               Permutation.identity(degree) in c):
            return i
    raise AssertionError


def _natural_character(ctx: CharacterContext) -> ClassFunction:
    return ClassFunction.of_element_function(
        ctx.group_id,
        lambda rep: sum(1 for x in range(1, rep.degree + 1) if rep(x) == x))


@lru_cache(maxsize=None)
def character_table(group_id: str) -> tuple[ClassFunction, ...]:
    """All irreducible characters, sorted by (dimension, values)."""
    ctx = context_for(group_id)
    found: list[ClassFunction] = []
    pool: list[ClassFunction] = []
    pool.extend(_linear_characters(ctx))
    pool.append(_natural_character(ctx))

    def reduce(f: ClassFunction) -> ClassFunction:
        for chi in found:
            m = inner_product(f, chi)
            if m != Cyc3(0):
                f = f - chi * m
        return f

    guard = 0
    while len(found) < ctx.n_classes:
        guard += 1
        if guard > 500:
            raise AssertionError("character search did not terminate")
        if not pool:
            pool = [a * b for a, b in
                    itertools.product(found, repeat=2)]
        f = reduce(pool.pop(0))
        if f.is_zero():
            continue
        norm = inner_product(f, f)
        if norm == Cyc3(1):
            found.append(f)
            pool.extend(f * g for g in list(found))
        else:
            pool.append(f * f)

    found.sort(key=lambda chi: (chi.dim.a, [(
        v.a, v.b) for v in chi.values]))
    total = sum((chi.dim * chi.dim for chi in found), Cyc3(0))
    assert total == Cyc3(ctx.group.order()), "sum of squares check failed"
    return tuple(found)


def named_irreducibles(group_id: str) -> dict[str, ClassFunction]:
    """Stable names for the irreducibles the rank identity consumes."""
    ctx = context_for(group_id)
    table = character_table(group_id)
    types = ctx.cycle_types()
    out: dict[str, ClassFunction] = {}
    if group_id == "S4":
        transposition = types.index((2, 1, 1))
        for chi in table:
            d = chi.dim.as_fraction()
            if d == 1:
                out["sign" if chi.values[transposition] == Cyc3(-1)
                    else "trivial"] = chi
            elif d == 2:
                out["twodim"] = chi
            elif d == 3:
                key = "std" if chi.values[transposition] == Cyc3(1) \
                    else "std_sign"
                out[key] = chi
    else:
        threecycle = next(i for i, t in enumerate(types) if t == (3, 1))
        for chi in table:
            d = chi.dim.as_fraction()
            if d == 3:
                out["std"] = chi
            elif chi.values.count(Cyc3(1)) == ctx.n_classes:
                out["trivial"] = chi
            elif chi.values[threecycle] == W:
                out["omega"] = chi
            else:
                out["omega_bar"] = chi
    return out


def decompose(chi: ClassFunction) -> dict[str, Cyc3]:
    """Multiplicities of chi against the named irreducible basis."""
    named = named_irreducibles(chi.group_id)
    return {name: inner_product(chi, irr) for name, irr in named.items()}


# -- the subgroups of the induced identity ---------------------------------


@lru_cache(maxsize=None)
def _identity_subgroups(group_id: str):
    """The three subgroup layers: point stabilizer (quartic field),
    index-3 layer (cubic resolvent), and the quadratic layer H_M found
    by testing every subgroup class of the right order."""
    ctx = context_for(group_id)
    G = ctx.group
    named = named_irreducibles(group_id)
    if group_id == "S4":
        point_stab = G.pointwise_stabilizer([4])          # S3, order 6
        classes = G.subgroup_classes()
        cubic_layer = next(c.representative for c in classes if c.order == 8)
        target = named["trivial"] + named["twodim"] + named["std"]
        candidates = [c.representative for c in classes if c.order == 4]
    else:
        point_stab = G.pointwise_stabilizer([4])          # C3, order 3
        classes = G.subgroup_classes()
        cubic_layer = next(c.representative for c in classes if c.order == 4)
        target = (named["trivial"] + named["omega"] + named["omega_bar"]
                  + named["std"])
        candidates = [c.representative for c in classes if c.order == 2]
    matched = [H for H in candidates
               if induce_trivial(G, SubgroupHandle(G, H), group_id).values
               == target.values]
    if not matched:
        raise AssertionError("no quadratic-layer subgroup matches")
    return point_stab, cubic_layer, matched


def quadratic_layer_subgroup(group_id: str) -> list[PermGroup]:
    """The subgroup class(es) whose induced trivial character equals
    trivial + twodim + std (the quadratic layer of the field diagram)."""
    return list(_identity_subgroups(group_id)[2])


def rank_growth_identity(chi: ClassFunction) -> tuple[Cyc3, Cyc3]:
    """Both sides of the four-term identity:
    lhs = <Ind from point stabilizer, chi> - <1, chi>,
    rhs = <Ind from quadratic layer, chi> - <Ind from cubic layer, chi>.
    The contract is lhs == rhs for every class function."""
    gid = chi.group_id
    ctx = context_for(gid)
    G = ctx.group
    point_stab, cubic_layer, matched = _identity_subgroups(gid)
    ind_k = induce_trivial(G, SubgroupHandle(G, point_stab), gid)
    ind_k3 = induce_trivial(G, SubgroupHandle(G, cubic_layer), gid)
    ind_m = induce_trivial(G, SubgroupHandle(G, matched[0]), gid)
    trivial = named_irreducibles(gid)["trivial"]
    lhs = inner_product(ind_k, chi) - inner_product(trivial, chi)
    rhs = inner_product(ind_m, chi) - inner_product(ind_k3, chi)
    return lhs, rhs
