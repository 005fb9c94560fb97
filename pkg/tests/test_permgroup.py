"""Permutation engine tests: composition convention, exact orders via an
independent closure oracle, products, classes, and the subgroup lattice."""

import random

import pytest

from twistcensus.permgroup import (
    GeneratorMap,
    PermGroup,
    Permutation,
    alternating_group,
    fiber_product,
    symmetric_group,
    wreath_product,
)


def closure_oracle(gens):
    """Exhaustive closure under composition; independent of the chain."""
    elems = {Permutation.identity(gens[0].degree)}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (x * g, g * x):
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
    return elems


def perm(cyc, n):
    return Permutation.from_cycles(cyc, n)


class TestPermutation:
    def test_identity_compose(self):
        p = perm("(1 2 3)", 4)
        assert Permutation.identity(4) * p == p
        assert p * Permutation.identity(4) == p

    def test_involution(self):
        t = perm("(1 2)", 4)
        assert (t * t).is_identity()

    def test_convention_left_action(self):
        # (1 2 3) o (1 2) = (1 3) under (p*q)(x) = p(q(x))
        a = perm("(1 2 3)", 3)
        b = perm("(1 2)", 3)
        assert (a * b) == perm("(1 3)", 3)
        # cross-check against the full S3 brute-force table
        for p in closure_oracle([perm("(1 2)", 3), perm("(1 2 3)", 3)]):
            for q in closure_oracle([perm("(1 2)", 3), perm("(1 2 3)", 3)]):
                r = p * q
                assert all(r(x) == p(q(x)) for x in (1, 2, 3))

    def test_inverse(self):
        p = perm("(1 4 2)(3 5)", 6)
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            perm("(1 2)", 3) * perm("(1 2)", 4)

    def test_cycles_roundtrip(self):
        p = perm("(1 2)(3 4 5)", 7)
        assert Permutation.from_cycles(p.cycles(), 7) == p
        assert Permutation.identity(3).cycles() == "()"

    def test_images_are_one_based(self):
        p = perm("(1 2)", 3)
        assert p.images == (2, 1, 3)
        assert Permutation.from_images([2, 1, 3]) == p

    def test_bad_images_rejected(self):
        with pytest.raises(ValueError):
            Permutation.from_images([1, 1, 3])

    def test_sign_and_order(self):
        assert perm("(1 2)", 4).sign() == -1
        assert perm("(1 2 3)", 4).sign() == 1
        assert perm("(1 2 3 4)", 4).order() == 4


class TestGenerate:
    def test_s4_order(self):
        G = PermGroup([perm("(1 2)", 4), perm("(1 2 3 4)", 4)])
        assert G.order() == 24

    def test_a4_order_vs_oracle(self):
        gens = [perm("(1 2 3)", 4), perm("(2 3 4)", 4)]
        G = PermGroup(gens)
        assert G.order() == 12
        assert G.order() == len(closure_oracle(gens))

    def test_trivial(self):
        G = PermGroup([Permutation.identity(5)])
        assert G.order() == 1
        assert list(G.elements()) == [Permutation.identity(5)]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            PermGroup([])

    @pytest.mark.parametrize("gens,n", [
        (["(1 2 3 4 5)"], 5),
        (["(1 2)", "(3 4)"], 4),
        (["(1 2 3)", "(4 5 6)", "(1 4)(2 5)(3 6)"], 6),
        (["(1 2 3 4 5 6)"], 6),
        (["(1 2)(3 4)", "(1 3)(2 4)"], 4),
    ])
    def test_order_matches_closure(self, gens, n):
        ps = [perm(g, n) for g in gens]
        assert PermGroup(ps).order() == len(closure_oracle(ps))

    def test_elements_stream_is_exact_and_deterministic(self):
        G = PermGroup([perm("(1 2)", 4), perm("(1 2 3 4)", 4)])
        elems = list(G.elements())
        assert len(elems) == 24
        assert len(set(elems)) == 24
        assert elems == list(G.elements())

    def test_element_table_matches_stream(self):
        G = PermGroup([perm("(1 2 3)", 5), perm("(3 4 5)", 5)])
        table = G.element_table()
        stream = [tuple(int(v) for v in row) for row in table]
        assert stream == [tuple(x - 1 for x in p.images) for p in G.elements()]

    def test_membership_soundness(self):
        G = PermGroup([perm("(1 2 3)", 5), perm("(3 4 5)", 5)])  # A5
        rng = random.Random(7)
        for _ in range(1000):
            w = Permutation.identity(5)
            for _ in range(rng.randrange(1, 8)):
                w = w * rng.choice(G.generators)
            assert w in G
        hits = 0
        for _ in range(1000):
            img = list(range(1, 6))
            rng.shuffle(img)
            p = Permutation.from_images(img)
            if p.sign() == -1:  # odd elements are outside A5
                assert p not in G
                hits += 1
        assert hits > 300

    def test_random_element_lies_in_group(self):
        G = PermGroup([perm("(1 2)", 6), perm("(1 2 3 4 5 6)", 6)])
        rng = random.Random(1)
        for _ in range(50):
            assert G.random_element(rng) in G

    def test_pointwise_stabilizer(self):
        G = symmetric_group(5)
        S = G.pointwise_stabilizer([5])
        assert S.order() == 24
        assert all(g(5) == 5 for g in S.generators)
        S2 = G.pointwise_stabilizer([4, 5])
        assert S2.order() == 6


class TestConjugacyClasses:
    def test_s4(self):
        sizes = sorted(s for _, s in symmetric_group(4).conjugacy_classes())
        assert sizes == [1, 3, 6, 6, 8]

    def test_a4(self):
        sizes = sorted(s for _, s in alternating_group(4).conjugacy_classes())
        assert sizes == [1, 3, 4, 4]

    def test_trivial(self):
        G = PermGroup([Permutation.identity(3)])
        assert len(G.conjugacy_classes()) == 1

    def test_class_equation(self):
        for G in (symmetric_group(4), alternating_group(4), symmetric_group(5)):
            classes = G.conjugacy_classes()
            assert sum(s for _, s in classes) == G.order()
            assert all(G.order() % s == 0 for _, s in classes)

    def test_representatives_non_conjugate(self):
        G = symmetric_group(4)
        classes = G.conjugacy_classes()
        elems = list(G.elements())
        for i, (p, _) in enumerate(classes):
            for q, _ in classes[i + 1:]:
                assert all((g * p * g.inverse()) != q for g in elems)

    def test_order_bound(self):
        with pytest.raises(ValueError):
            symmetric_group(4).conjugacy_classes(max_order=10)


class TestSubgroupLattice:
    def test_s4_has_30_subgroups_in_11_classes(self):
        classes = symmetric_group(4).subgroup_classes()
        assert len(classes) == 11
        assert sum(c.class_size for c in classes) == 30

    def test_a4_has_5_classes(self):
        classes = alternating_group(4).subgroup_classes()
        assert len(classes) == 5
        assert sorted(c.order for c in classes) == [1, 2, 3, 4, 12]

    def test_trivial_group(self):
        G = PermGroup([Permutation.identity(2)])
        classes = G.subgroup_classes()
        assert len(classes) == 1

    def test_lagrange(self):
        G = symmetric_group(4)
        for c in G.subgroup_classes():
            assert G.order() % c.order == 0

    def test_every_subgroup_is_contained(self):
        G = symmetric_group(4)
        for c in G.subgroup_classes():
            assert c.representative.is_subgroup(G)

    def test_order_cap(self):
        classes = symmetric_group(4).subgroup_classes(order_cap=4)
        assert all(c.order <= 4 for c in classes)


def s4_to_s3_map():
    """The quotient S4 -> S3 killing V4, realized on the three partitions
    into pairs, with partition k the one pairing {k, 4}."""
    S4, S3 = symmetric_group(4), symmetric_group(3)

    def q_image(g, k):
        pair = {g(k), g(4)}
        if 4 in pair:
            (m,) = pair - {4}
        else:
            (m,) = ({1, 2, 3, 4} - pair) - {4}
        return m

    images = tuple(
        Permutation.from_images([q_image(g, k) for k in (1, 2, 3)])
        for g in S4.generators)
    return GeneratorMap(S4, S3, images)


class TestFiberProduct:
    def test_s4_fiber_s4_over_s3(self):
        S4 = symmetric_group(4)
        phi = s4_to_s3_map()
        phi.validate()
        F, blocks = fiber_product(S4, S4, phi, phi)
        assert F.degree == 8
        assert F.order() == 96  # 24 * 24 / 6
        assert blocks.blocks == ((1, 2, 3, 4), (5, 6, 7, 8))

    def test_trivial_quotient_gives_direct_product(self):
        S3 = symmetric_group(3)
        C2 = PermGroup([perm("(1 2)", 2)])
        T = PermGroup([Permutation.identity(1)])
        triv3 = GeneratorMap(S3, T, tuple(Permutation.identity(1)
                                          for _ in S3.generators))
        triv2 = GeneratorMap(C2, T, tuple(Permutation.identity(1)
                                          for _ in C2.generators))
        F, _ = fiber_product(S3, C2, triv3, triv2)
        assert F.order() == 12

    def test_diagonal(self):
        S3 = symmetric_group(3)
        ident_map = GeneratorMap(S3, S3, tuple(S3.generators))
        F, _ = fiber_product(S3, S3, ident_map, ident_map)
        assert F.order() == 6
        for g in F.generators:
            assert all(g(x) - 0 == g(x + 3) - 3 for x in (1, 2, 3))

    def test_inconsistent_map_rejected(self):
        # an order-2 generator cannot map to a 3-cycle
        S4, S3 = symmetric_group(4), symmetric_group(3)
        bad = GeneratorMap(S4, S3, (perm("(1 2 3)", 3), perm("(1 2 3)", 3)))
        with pytest.raises(ValueError):
            bad.validate()


class TestWreathProduct:
    def test_s2_wr_s3(self):
        C2 = PermGroup([perm("(1 2)", 2)])
        W, blocks = wreath_product(C2, symmetric_group(3))
        assert W.degree == 6
        assert W.order() == 48
        assert len(blocks.blocks) == 3

    def test_wreath_by_trivial_top(self):
        S3 = symmetric_group(3)
        T = PermGroup([Permutation.identity(1)])
        W, _ = wreath_product(S3, T)
        assert W.order() == 6
        assert W.degree == 3

    def test_block_action(self):
        C2 = PermGroup([perm("(1 2)", 2)])
        W, blocks = wreath_product(C2, symmetric_group(3))
        top = perm("(1 3 5)(2 4 6)", 6)  # cycles the three blocks
        assert top in W
        assert blocks.induced(top) == perm("(1 2 3)", 3)

    def test_randomized_order_formulas(self):
        rng = random.Random(3)
        smalls = [symmetric_group(2), symmetric_group(3),
                  alternating_group(3), PermGroup([perm("(1 2)(3 4)", 4)]),
                  alternating_group(4)]
        for _ in range(10):
            G = rng.choice(smalls)
            top = rng.choice([symmetric_group(2), symmetric_group(3)])
            W, _ = wreath_product(G, top)
            assert W.order() == G.order() ** top.degree * top.order()


class TestSerialization:
    def test_perm_json(self):
        p = perm("(1 2)(3 4)", 5)
        d = p.to_json()
        assert d["cycles"] == "(1 2)(3 4)"
        assert d["images"] == [2, 1, 4, 3, 5]

    def test_group_json(self):
        G = symmetric_group(3)
        d = G.to_json()
        assert d["degree"] == 3 and d["order"] == 6
