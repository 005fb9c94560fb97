"""Character tables, induced decompositions, Frobenius reciprocity, and
the four-term identity, all in exact arithmetic."""

import random
from fractions import Fraction

import pytest

from twistcensus.characters import (
    ClassFunction,
    Cyc3,
    SubgroupHandle,
    W,
    W_BAR,
    character_table,
    context_for,
    decompose,
    induce_trivial,
    inner_product,
    named_irreducibles,
    quadratic_layer_subgroup,
    rank_growth_identity,
)
from twistcensus.permgroup import PermGroup, Permutation


def frac(v: Cyc3) -> Fraction:
    return v.as_fraction()


class TestCyc3:
    def test_ring_axioms_sample(self):
        xs = [Cyc3(1), Cyc3(-2, 3), W, W_BAR, Cyc3(Fraction(1, 2), -1)]
        for x in xs:
            for y in xs:
                assert (x + y) - y == x
                assert x * y == y * x
        assert W * W == Cyc3(-1, -1)   # w^2 = -1 - w
        assert W * W * W == Cyc3(1)    # w^3 = 1

    def test_conjugation(self):
        assert W.conj() == W_BAR
        assert (W + W_BAR) == Cyc3(-1)
        x = Cyc3(2, 5)
        assert (x * x.conj()).is_rational()


class TestTables:
    def test_s4_snapshot(self):
        table = character_table("S4")
        dims = sorted(frac(chi.dim) for chi in table)
        assert dims == [1, 1, 2, 3, 3]
        assert sum(d * d for d in dims) == 24
        ctx = context_for("S4")
        types = ctx.cycle_types()
        named = named_irreducibles("S4")
        # twodim has kernel of order 4: value 2 exactly on {e} and (2,2)
        twodim = named["twodim"]
        for t, v in zip(types, twodim.values):
            if t in ((1, 1, 1, 1), (2, 2)):
                assert v == Cyc3(2)
            else:
                assert v in (Cyc3(0), Cyc3(-1))
        kernel_size = sum(
            s for (t, s), v in zip(zip(types, ctx.class_sizes()),
                                   twodim.values) if v == Cyc3(2))
        assert kernel_size == 4

    def test_a4_snapshot(self):
        table = character_table("A4")
        dims = sorted(frac(chi.dim) for chi in table)
        assert dims == [1, 1, 1, 3]
        named = named_irreducibles("A4")
        assert named["omega"].values != named["omega_bar"].values
        assert all(v.conj() in named["omega_bar"].values
                   for v in named["omega"].values)

    @pytest.mark.parametrize("gid", ["S4", "A4"])
    def test_orthonormality(self, gid):
        table = character_table(gid)
        for i, a in enumerate(table):
            for j, b in enumerate(table):
                expect = Cyc3(1 if i == j else 0)
                assert inner_product(a, b) == expect

    @pytest.mark.parametrize("gid", ["S4", "A4"])
    def test_column_orthogonality(self, gid):
        ctx = context_for(gid)
        table = character_table(gid)
        sizes = ctx.class_sizes()
        n = ctx.n_classes
        for i in range(n):
            for j in range(n):
                s = sum((chi.values[i] * chi.values[j].conj()
                         for chi in table), Cyc3(0))
                expect = Cyc3(Fraction(ctx.group.order(), sizes[i])) \
                    if i == j else Cyc3(0)
                assert s == expect


class TestInduction:
    def test_point_stabilizer_gives_std(self):
        ctx = context_for("S4")
        G = ctx.group
        H = SubgroupHandle(G, G.pointwise_stabilizer([4]))
        ind = induce_trivial(G, H)
        named = named_irreducibles("S4")
        assert ind.values == (named["trivial"] + named["std"]).values

    def test_index_three_layer_gives_twodim(self):
        ctx = context_for("S4")
        G = ctx.group
        d4 = next(c.representative for c in G.subgroup_classes()
                  if c.order == 8)
        ind = induce_trivial(G, SubgroupHandle(G, d4))
        named = named_irreducibles("S4")
        assert ind.values == (named["trivial"] + named["twodim"]).values

    def test_whole_group_gives_trivial(self):
        ctx = context_for("S4")
        G = ctx.group
        ind = induce_trivial(G, SubgroupHandle(G, G))
        assert ind.values == named_irreducibles("S4")["trivial"].values

    def test_quadratic_layer_is_unique_klein_class(self):
        matched = quadratic_layer_subgroup("S4")
        assert len(matched) == 1
        H = matched[0]
        assert H.order() == 4
        # non-normal Klein group: contains a transposition
        assert any(g.order() == 2 and g.sign() == -1
                   for g in H.elements())
        ctx = context_for("S4")
        ind = induce_trivial(ctx.group, SubgroupHandle(ctx.group, H))
        named = named_irreducibles("S4")
        target = named["trivial"] + named["twodim"] + named["std"]
        assert ind.values == target.values

    def test_a4_point_stabilizer(self):
        ctx = context_for("A4")
        G = ctx.group
        ind = induce_trivial(G, SubgroupHandle(G, G.pointwise_stabilizer([4])))
        named = named_irreducibles("A4")
        assert ind.values == (named["trivial"] + named["std"]).values

    def test_a4_layers(self):
        ctx = context_for("A4")
        G = ctx.group
        v4 = next(c.representative for c in G.subgroup_classes()
                  if c.order == 4)
        ind = induce_trivial(G, SubgroupHandle(G, v4))
        named = named_irreducibles("A4")
        target = named["trivial"] + named["omega"] + named["omega_bar"]
        assert ind.values == target.values
        matched = quadratic_layer_subgroup("A4")
        assert matched and all(H.order() == 2 for H in matched)

    def test_identity_value_is_index(self):
        ctx = context_for("S4")
        G = ctx.group
        for c in G.subgroup_classes():
            ind = induce_trivial(G, SubgroupHandle(G, c.representative))
            assert frac(ind.dim) == Fraction(24, c.order)

    def test_frobenius_reciprocity(self):
        for gid in ("S4", "A4"):
            ctx = context_for(gid)
            G = ctx.group
            for c in G.subgroup_classes():
                H = c.representative
                ind = induce_trivial(G, SubgroupHandle(G, H), gid)
                helems = list(H.elements())
                for chi in character_table(gid):
                    # <Ind 1, chi> = <1, Res chi> computed element-wise
                    res = sum((chi.values[ctx.class_index(h)].conj()
                               for h in helems), Cyc3(0)) / H.order()
                    assert inner_product(ind, chi) == res.conj()

    def test_non_subgroup_rejected(self):
        G = context_for("S4").group
        S3 = PermGroup([Permutation.from_cycles("(1 2)", 3),
                        Permutation.from_cycles("(1 2 3)", 3)])
        with pytest.raises(ValueError):
            SubgroupHandle(G, S3)


class TestRankIdentity:
    def test_on_std(self):
        named = named_irreducibles("S4")
        lhs, rhs = rank_growth_identity(named["std"])
        assert lhs == rhs == Cyc3(1)

    def test_on_regular_character(self):
        ctx = context_for("S4")
        table = character_table("S4")
        reg = ClassFunction.from_values("S4", [Cyc3(0)] * ctx.n_classes)
        for chi in table:
            reg = reg + chi * chi.dim
        assert frac(reg.dim) == 24
        lhs, rhs = rank_growth_identity(reg)
        assert lhs == rhs == Cyc3(3)

    @pytest.mark.parametrize("gid", ["S4", "A4"])
    def test_random_class_functions(self, gid):
        rng = random.Random(11)
        ctx = context_for(gid)
        for _ in range(100):
            vals = [Cyc3(rng.randrange(-10, 11)) for _ in range(ctx.n_classes)]
            lhs, rhs = rank_growth_identity(ClassFunction.from_values(gid, vals))
            assert lhs == rhs

    @pytest.mark.parametrize("gid", ["S4", "A4"])
    def test_spanning_basis(self, gid):
        # indicator class functions span everything
        ctx = context_for(gid)
        for i in range(ctx.n_classes):
            vals = [Cyc3(1 if j == i else 0) for j in range(ctx.n_classes)]
            lhs, rhs = rank_growth_identity(ClassFunction.from_values(gid, vals))
            assert lhs == rhs

    def test_decompose_roundtrip(self):
        named = named_irreducibles("S4")
        chi = named["std"] + named["twodim"] * 2
        d = decompose(chi)
        assert d["std"] == Cyc3(1)
        assert d["twodim"] == Cyc3(2)
        assert d["trivial"] == Cyc3(0)
