"""Permutation groups at desk scale: exact orders, membership, conjugacy
classes, subgroup lattices, and the fiber/wreath constructions the audit
engine is built on.

Points are 1-indexed {1..degree} in the public API and in all serialized
output; internal arrays are 0-based tuples.  Composition is the left
action: (p * q)(x) = p(q(x)).

Groups carry a deterministic stabilizer chain (Schreier-Sims, no
randomization) built on construction, so order and membership are exact.
Element streams are enumerated in chain-transversal order, which is a
fixed deterministic order for a fixed generator list, and partition by
top-level coset for data-parallel consumers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Permutation",
    "PermGroup",
    "BlockStructure",
    "GeneratorMap",
    "SubgroupClass",
    "fiber_product",
    "wreath_product",
]


class DegreeMismatchError(ValueError):
    pass


def _parse_cycles(text: str) -> list[tuple[int, ...]]:
    cycles = []
    body = text.replace(",", " ")
    depth = 0
    cur: list[int] = []
    token = ""
    for ch in body:
        if ch == "(":
            if depth:
                raise ValueError(f"nested cycle in {text!r}")
            depth = 1
            cur = []
            token = ""
        elif ch == ")":
            if token:
                cur.append(int(token))
                token = ""
            if depth == 0:
                raise ValueError(f"unbalanced ')' in {text!r}")
            cycles.append(tuple(cur))
            depth = 0
        elif ch.isspace():
            if token:
                cur.append(int(token))
                token = ""
        elif ch.isdigit():
            if depth == 0:
                raise ValueError(f"point outside cycle in {text!r}")
            token += ch
        else:
            raise ValueError(f"bad character {ch!r} in {text!r}")
    if depth:
        raise ValueError(f"unbalanced '(' in {text!r}")
    return cycles


class Permutation:
    """A permutation of {1..degree}, stored as an immutable image tuple."""

    __slots__ = ("_img",)

    def __init__(self, img0: tuple[int, ...]):
        # img0 is the internal 0-based image tuple; use the classmethods.
        self._img = img0

    # -- construction ---------------------------------------------------

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be positive")
        return cls(tuple(range(degree)))

    @classmethod
    def from_images(cls, images) -> "Permutation":
        """Build from 1-based images: images[k] is the image of point k+1."""
        img0 = tuple(int(x) - 1 for x in images)
        n = len(img0)
        if n < 1 or sorted(img0) != list(range(n)):
            raise ValueError(f"not a bijection on 1..{n}: {list(images)}")
        return cls(img0)

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        """Build from cycle notation, either a string "(1 2)(3 4)" or a
        list of tuples of 1-based points."""
        if isinstance(cycles, str):
            cycles = _parse_cycles(cycles)
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            pts = [int(x) - 1 for x in cyc]
            for x in pts:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x + 1} outside 1..{degree}")
                if x in seen:
                    raise ValueError(f"point {x + 1} repeated across cycles")
                seen.add(x)
            for a, b in zip(pts, pts[1:]):
                img[a] = b
            if pts:
                img[pts[-1]] = pts[0]
        return cls(tuple(img))

    # -- basic protocol -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image tuple: images[k] = image of point k+1."""
        return tuple(x + 1 for x in self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition p * q acts as x -> p(q(x))."""
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"degree {self.degree} != {other.degree}")
        p, q = self._img, other._img
        return Permutation(tuple(p[x] for x in q))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, j in enumerate(self._img):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        r = Permutation.identity(self.degree)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def order(self) -> int:
        n = 1
        p = self
        while not p.is_identity():
            p = p * self
            n += 1
        return n

    def sign(self) -> int:
        seen = [False] * self.degree
        sgn = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self._img[j]
                length += 1
            if length % 2 == 0:
                sgn = -sgn
        return sgn

    def cycles(self) -> str:
        """Cycle notation on 1-based points; identity prints as "()"."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self._img[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            seen[i] = True
            j = self._img[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self._img[j]
            out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
        return "".join(out) if out else "()"

    def __repr__(self) -> str:
        return f"Permutation[{self.cycles()}]"

    def to_array(self) -> np.ndarray:
        """0-based image array (for the vectorized engines)."""
        return np.array(self._img, dtype=np.uint8 if self.degree <= 255 else np.uint32)

    @classmethod
    def from_array(cls, arr) -> "Permutation":
        return cls(tuple(int(x) for x in arr))

    def to_json(self) -> dict:
        return {"cycles": self.cycles(), "images": list(self.images)}


# -- internal chain machinery (0-based tuples throughout) ----------------


def _t_mul(p: tuple, q: tuple) -> tuple:
    return tuple(p[x] for x in q)


def _t_inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


class _Level:
    __slots__ = ("point", "own_gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        # generators inserted at this level; each fixes all shallower
        # base points.  The level's full generating set is the union of
        # own_gens over this level and all deeper ones.
        self.own_gens: list[tuple] = []
        self.transversal: dict[int, tuple] = {}


class _Chain:
    """Deterministic Schreier-Sims stabilizer chain on 0-based tuples."""

    def __init__(self, gens: list[tuple], degree: int,
                 base_prefix: tuple[int, ...] = ()):
        self.degree = degree
        self._ident = tuple(range(degree))
        self.levels: list[_Level] = [_Level(pt) for pt in base_prefix]
        for g in gens:
            self._seed(g)
        self._run()

    def _new_point_for(self, p: tuple) -> int:
        for i, j in enumerate(p):
            if i != j:
                return i
        raise AssertionError("identity has no moved point")

    def sift(self, p: tuple, start: int = 0) -> tuple[tuple, int]:
        """Strip p through levels >= start; returns (remainder, level)."""
        for k in range(start, len(self.levels)):
            lvl = self.levels[k]
            b = p[lvl.point]
            if b == lvl.point:
                continue
            if b not in lvl.transversal:
                return p, k
            p = _t_mul(_t_inv(lvl.transversal[b]), p)
        return p, len(self.levels)

    def _store(self, rem: tuple, k: int) -> None:
        if k == len(self.levels):
            self.levels.append(_Level(self._new_point_for(rem)))
        self.levels[k].own_gens.append(rem)

    def _seed(self, g: tuple) -> None:
        rem, k = self.sift(g)
        if rem == self._ident:
            return
        self._store(rem, k)
        self._acting_and_orbit(k)

    def _acting_and_orbit(self, i: int) -> list[tuple]:
        """Collect level i's generating set and rebuild its orbit."""
        lvl = self.levels[i]
        acting: list[tuple] = []
        for j in range(i, len(self.levels)):
            for g in self.levels[j].own_gens:
                if g not in acting:
                    acting.append(g)
        trans = {lvl.point: self._ident}
        frontier = [lvl.point]
        while frontier:
            new: list[int] = []
            for b in frontier:
                tb = trans[b]
                for g in acting:
                    c = g[b]
                    if c not in trans:
                        trans[c] = _t_mul(g, tb)
                        new.append(c)
            frontier = sorted(new)
        lvl.transversal = trans
        return acting

    def _pass(self, i: int) -> int | None:
        """One Schreier verification pass at level i.  On discovering a
        missing element, store it and return its level; None when clean."""
        lvl = self.levels[i]
        acting = self._acting_and_orbit(i)
        for b in sorted(lvl.transversal):
            tb = lvl.transversal[b]
            for g in acting:
                tc = lvl.transversal[g[b]]
                schreier = _t_mul(_t_inv(tc), _t_mul(g, tb))
                if schreier == self._ident:
                    continue
                rem, k = self.sift(schreier, i + 1)
                if rem == self._ident:
                    continue
                self._store(rem, max(k, i + 1))
                return max(k, i + 1)
        return None

    def _run(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            k = self._pass(i)
            if k is None:
                i -= 1
            else:
                i = min(k, len(self.levels) - 1)

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= max(1, len(lvl.transversal))
        return n

    def contains(self, p: tuple) -> bool:
        rem, _ = self.sift(p)
        return rem == self._ident

    def strong_gens_from(self, level: int) -> list[tuple]:
        out: list[tuple] = []
        for lvl in self.levels[level:]:
            for g in lvl.own_gens:
                if g not in out:
                    out.append(g)
        return out

    def transversal_arrays(self) -> list[np.ndarray]:
        dtype = np.uint8 if self.degree <= 255 else np.uint32
        out = []
        for lvl in self.levels:
            rows = [lvl.transversal[b] for b in sorted(lvl.transversal)]
            out.append(np.array(rows, dtype=dtype))
        return out


@dataclass(frozen=True)
class BlockStructure:
    """An invariant partition into equal blocks plus the induced action."""

    blocks: tuple[tuple[int, ...], ...]  # 1-based points per block

    def block_of(self, point: int) -> int:
        for i, blk in enumerate(self.blocks):
            if point in blk:
                return i + 1
        raise ValueError(f"point {point} in no block")

    def induced(self, p: Permutation) -> Permutation:
        """The permutation of block indices induced by p; raises if p does
        not permute the blocks."""
        images = []
        for blk in self.blocks:
            targets = {self.block_of(p(x)) for x in blk}
            if len(targets) != 1:
                raise ValueError(f"{p!r} does not preserve the block system")
            images.append(targets.pop())
        return Permutation.from_images(images)

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups: a representative and the count."""

    representative: "PermGroup"
    class_size: int

    @property
    def order(self) -> int:
        return self.representative.order()


class PermGroup:
    """A finitely generated permutation group with exact order and
    membership via a deterministic stabilizer chain."""

    def __init__(self, generators, degree: int | None = None,
                 base_prefix: tuple[int, ...] = ()):
        gens = list(generators)
        if not gens:
            raise ValueError("empty generator list (pass [identity] instead)")
        degs = {g.degree for g in gens}
        if degree is not None:
            degs.add(degree)
        if len(degs) != 1:
            raise DegreeMismatchError(f"mixed degrees {sorted(degs)}")
        self.degree = degs.pop()
        seen: set[Permutation] = set()
        self.generators: list[Permutation] = []
        for g in gens:
            if g not in seen and not g.is_identity():
                seen.add(g)
                self.generators.append(g)
        if not self.generators:
            self.generators = [Permutation.identity(self.degree)]
        self._chain = _Chain([g._img for g in self.generators], self.degree,
                             tuple(b - 1 for b in base_prefix))
        self._order = self._chain.order()

    # -- queries ---------------------------------------------------------

    def order(self) -> int:
        return self._order

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return self._chain.contains(p._img)

    def is_subgroup(self, other: "PermGroup") -> bool:
        """True when self <= other."""
        return all(g in other for g in self.generators)

    def random_element(self, rng) -> Permutation:
        img = tuple(range(self.degree))
        for lvl in self._chain.levels:
            pts = sorted(lvl.transversal)
            img = _t_mul(img, lvl.transversal[rng.choice(pts)])
        return Permutation(img)

    def elements(self):
        """Iterate all elements in deterministic chain-transversal order.

        Product order is top level outermost, so the stream partitions by
        top-level coset.
        """
        levels = [
            [lvl.transversal[b] for b in sorted(lvl.transversal)]
            for lvl in self._chain.levels
        ]
        if not levels:
            yield Permutation.identity(self.degree)
            return
        for combo in itertools.product(*levels):
            img = combo[0]
            for t in combo[1:]:
                img = _t_mul(img, t)
            yield Permutation(img)

    def element_table(self, max_bytes: int = 1 << 28) -> np.ndarray:
        """All elements as a (order, degree) array of 0-based images,
        enumerated in the same deterministic order as elements()."""
        need = self._order * self.degree
        if need > max_bytes:
            raise MemoryError(
                f"element table of {self._order} x {self.degree} exceeds "
                f"{max_bytes} bytes")
        dtype = np.uint8 if self.degree <= 255 else np.uint32
        acc = np.arange(self.degree, dtype=dtype)[None, :]
        for T in self._chain.transversal_arrays():
            # right-compose every accumulated prefix with every rep:
            # (a o t)(x) = a[t[x]], keeping level-0 cosets outermost
            acc = acc[:, T].reshape(-1, self.degree)
        return acc

    def pointwise_stabilizer(self, points) -> "PermGroup":
        """The subgroup fixing the given 1-based points pointwise."""
        pts = tuple(points)
        chain = _Chain([g._img for g in self.generators], self.degree,
                       tuple(p - 1 for p in pts))
        sgens = chain.strong_gens_from(len(pts))
        perms = [Permutation(g) for g in sgens] or [Permutation.identity(self.degree)]
        return PermGroup(perms, degree=self.degree)

    # -- classes and subgroups --------------------------------------------

    def conjugacy_classes(self, max_order: int = 10_000_000):
        """List of (representative, class size), deterministically ordered
        by (element order, class size, image tuple)."""
        if self._order > max_order:
            raise ValueError(f"order {self._order} exceeds bound {max_order}")
        gens = [g._img for g in self.generators]
        seen: set[tuple] = set()
        classes = []
        for p in self.elements():
            t = p._img
            if t in seen:
                continue
            orbit = {t}
            frontier = [t]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = _t_mul(g, _t_mul(x, _t_inv(g)))
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            seen |= orbit
            rep = min(orbit)
            classes.append((Permutation(rep), len(orbit)))
        classes.sort(key=lambda rc: (rc[0].order(), rc[1], rc[0]._img))
        return classes

    def subgroup_classes(self, order_cap: int | None = None,
                         lattice_cap: int = 10_000) -> list[SubgroupClass]:
        """Complete subgroup lattice up to conjugacy (exact mode).

        Every subgroup arises by repeatedly adjoining one element, so a
        closure-BFS over element sets is complete.  Feasible only below
        lattice_cap.
        """
        if self._order > lattice_cap:
            raise ValueError(
                f"order {self._order} exceeds exact enumeration bound "
                f"{lattice_cap}; use the sampled audit instead")
        elems = [p._img for p in self.elements()]
        index = {t: i for i, t in enumerate(elems)}
        ident = tuple(range(self.degree))
        cap = order_cap or self._order

        def closure(seed: frozenset[int]) -> frozenset[int] | None:
            # returns None as soon as the closure would exceed cap
            cur = set(seed)
            cur.add(index[ident])
            frontier = list(cur)
            while frontier:
                x = frontier.pop()
                for y in list(cur):
                    for z in (_t_mul(elems[x], elems[y]),
                              _t_mul(elems[y], elems[x])):
                        zi = index[z]
                        if zi not in cur:
                            if len(cur) >= cap:
                                return None
                            cur.add(zi)
                            frontier.append(zi)
            return frozenset(cur)

        trivial = frozenset({index[ident]})
        all_subs: set[frozenset[int]] = {trivial}
        frontier = [trivial]
        while frontier:
            H = frontier.pop()
            for gi in range(len(elems)):
                if gi in H:
                    continue
                K = closure(H | {gi})
                if K is not None and K not in all_subs:
                    all_subs.add(K)
                    frontier.append(K)

        # group into conjugacy classes of subgroups
        remaining = set(all_subs)
        out: list[SubgroupClass] = []
        while remaining:
            H = min(remaining, key=lambda s: (len(s), tuple(sorted(s))))
            orbit = {H}
            front = [H]
            while front:
                S = front.pop()
                for g in self.generators:
                    gi, gv = g._img, g.inverse()._img
                    conj = frozenset(index[_t_mul(gi, _t_mul(elems[x], gv))]
                                     for x in S)
                    if conj not in orbit:
                        orbit.add(conj)
                        front.append(conj)
            remaining -= orbit
            gens = [Permutation(elems[x]) for x in sorted(H)]
            out.append(SubgroupClass(PermGroup(gens, degree=self.degree),
                                     len(orbit)))
        out.sort(key=lambda sc: (sc.order, sc.class_size))
        return out

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order(),
            "generators": [g.to_json() for g in self.generators],
        }

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self._order})"


@dataclass(frozen=True)
class GeneratorMap:
    """A homomorphism into a finite target, specified on generators.

    validate() certifies the assignment extends to a homomorphism by an
    exact order count: the graph subgroup of source x target projects
    bijectively onto the source iff the assignment is consistent.
    """

    source: PermGroup
    target: PermGroup
    images: tuple[Permutation, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source.generators):
            raise ValueError("one image per source generator required")
        for im in self.images:
            if im not in self.target:
                raise ValueError(f"{im!r} is not in the target group")

    def validate(self) -> None:
        n, m = self.source.degree, self.target.degree
        graph_gens = []
        for g, im in zip(self.source.generators, self.images):
            img = list(g._img) + [n + x for x in im._img]
            graph_gens.append(Permutation(tuple(img)))
        graph = PermGroup(graph_gens, degree=n + m)
        if graph.order() != self.source.order():
            raise ValueError("generator images do not define a homomorphism")

    def is_surjective(self) -> bool:
        return PermGroup(list(self.images) or
                         [Permutation.identity(self.target.degree)],
                         degree=self.target.degree).order() == self.target.order()


def fiber_product(G: PermGroup, H: PermGroup,
                  phi_g: GeneratorMap, phi_h: GeneratorMap
                  ) -> tuple[PermGroup, BlockStructure]:
    """The subgroup {(g,h) : phi_g(g) = phi_h(h)} of G x H, acting on the
    disjoint union of the two point sets (G's points first).

    Realized as the stabilizer of the identity coset in the action of
    G x H on the common quotient: (g,h) . q = phi_g(g) q phi_h(h)^-1.
    """
    if phi_g.target is not phi_h.target and \
            phi_g.target.to_json() != phi_h.target.to_json():
        raise ValueError("quotient maps must share a target group")
    phi_g.validate()
    phi_h.validate()
    if not (phi_g.is_surjective() and phi_h.is_surjective()):
        raise ValueError("quotient maps must be surjective")
    Q = phi_g.target
    q_elems = sorted(Q.elements(), key=lambda p: p._img)
    q_index = {p._img: i for i, p in enumerate(q_elems)}
    nG, nH, nQ = G.degree, H.degree, len(q_elems)
    ident_idx = q_index[Permutation.identity(Q.degree)._img]

    def lift(perm_part: Permutation, side: str, q_img: Permutation) -> Permutation:
        img = list(range(nG + nH + nQ))
        if side == "g":
            for i, x in enumerate(perm_part._img):
                img[i] = x
            for qi, q in enumerate(q_elems):
                img[nG + nH + qi] = nG + nH + q_index[(q_img * q)._img]
        else:
            for i, x in enumerate(perm_part._img):
                img[nG + i] = nG + x
            qinv = q_img.inverse()
            for qi, q in enumerate(q_elems):
                img[nG + nH + qi] = nG + nH + q_index[(q * qinv)._img]
        return Permutation(tuple(img))

    gens = [lift(g, "g", im) for g, im in zip(G.generators, phi_g.images)]
    gens += [lift(h, "h", im) for h, im in zip(H.generators, phi_h.images)]
    big = PermGroup(gens, degree=nG + nH + nQ)
    stab = big.pointwise_stabilizer([nG + nH + ident_idx + 1])
    restricted = [Permutation(g._img[:nG + nH]) for g in stab.generators]
    fp = PermGroup(restricted or [Permutation.identity(nG + nH)],
                   degree=nG + nH)
    expected = G.order() * H.order() // Q.order()
    if fp.order() != expected:
        raise AssertionError(
            f"fiber product order {fp.order()} != {expected}")
    blocks = BlockStructure((tuple(range(1, nG + 1)),
                             tuple(range(nG + 1, nG + nH + 1))))
    return fp, blocks


def wreath_product(G: PermGroup, top: PermGroup,
                   degree_cap: int = 10_000
                   ) -> tuple[PermGroup, BlockStructure]:
    """G wr top in its imprimitive action on top.degree blocks of
    G.degree points; order |G|^b * |top|."""
    m, b = G.degree, top.degree
    if m * b > degree_cap:
        raise ValueError(f"wreath degree {m * b} exceeds cap {degree_cap}")
    gens = []
    for i in range(b):
        for g in G.generators:
            img = list(range(m * b))
            for x in range(m):
                img[i * m + x] = i * m + g._img[x]
            gens.append(Permutation(tuple(img)))
    for t in top.generators:
        img = list(range(m * b))
        for i in range(b):
            for x in range(m):
                img[i * m + x] = t._img[i] * m + x
        gens.append(Permutation(tuple(img)))
    W = PermGroup(gens, degree=m * b)
    expected = G.order() ** b * top.order()
    if W.order() != expected:
        raise AssertionError(f"wreath order {W.order()} != {expected}")
    blocks = BlockStructure(tuple(
        tuple(range(i * m + 1, (i + 1) * m + 1)) for i in range(b)))
    return W, blocks


# -- convenient standard groups ------------------------------------------


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([Permutation.identity(1)])
    gens = [Permutation.from_cycles([(1, 2)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([tuple(range(1, n + 1))], n))
    return PermGroup(gens, degree=n)


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup([Permutation.identity(max(1, n))])
    if n == 3:
        return PermGroup([Permutation.from_cycles([(1, 2, 3)], 3)])
    gens = [Permutation.from_cycles([(1, 2, 3)], n)]
    if n % 2:
        gens.append(Permutation.from_cycles([tuple(range(1, n + 1))], n))
    else:
        gens.append(Permutation.from_cycles([tuple(range(2, n + 1))], n))
    return PermGroup(gens, degree=n)
