import pytest

from conftest import c4, complete, cycle, path, theta
from toppling.divisors import (
    NegativeOffQ,
    acyclic_orientations_unique_source,
    dhar_burn,
    hilbert_function,
    is_q_reduced,
    laplacian_of,
    linear_system,
    linearly_equivalent,
    maximal_reduced_divisors,
    pic_class,
    q_reduce,
    spanning_tree_count,
)


class TestLaplacian:
    def test_indicator(self):
        assert laplacian_of(c4(), (1, 0, 0, 0)) == (2, -1, -1, 0)

    def test_constant(self):
        assert laplacian_of(c4(), (5, 5, 5, 5)) == (0, 0, 0, 0)

    def test_theta(self):
        assert laplacian_of(theta(3), (0, 1)) == (-3, 3)

    def test_degree_zero(self):
        g = complete(4)
        for f in [(1, 2, 3, 4), (0, -1, 0, 7)]:
            assert sum(laplacian_of(g, f)) == 0


class TestDhar:
    def test_single_chip_burns(self):
        assert dhar_burn(c4(), 0, (0, 1, 0, 0)) == frozenset()

    def test_two_chips_survive(self):
        assert dhar_burn(c4(), 0, (0, 2, 0, 0)) == frozenset({1})

    def test_zero_divisor(self):
        assert dhar_burn(c4(), 0, (0, 0, 0, 0)) == frozenset()

    def test_negative_off_q(self):
        with pytest.raises(NegativeOffQ):
            dhar_burn(c4(), 0, (0, -1, 0, 0))

    def test_is_reduced(self):
        g = c4()
        assert is_q_reduced(g, 0, (0, 1, 0, 0))
        assert not is_q_reduced(g, 0, (0, 2, 0, 0))
        assert not is_q_reduced(g, 0, (0, -1, 0, 0))


class TestQReduce:
    def test_fire_single_vertex(self):
        # firing {2} sends chips along 2-1 and 2-4
        assert q_reduce(c4(), 0, (0, 2, 0, 0)) == (1, 0, 0, 1)

    def test_fire_other_vertex(self):
        assert q_reduce(c4(), 0, (0, 0, 2, 0)) == (1, 0, 0, 1)

    def test_zero(self):
        assert q_reduce(c4(), 0, (0, 0, 0, 0)) == (0, 0, 0, 0)

    def test_idempotent(self):
        g = cycle(5)
        for d in [(0, 3, 0, 0, 2), (-2, 1, 4, 0, 0), (7, 0, 0, 0, 0)]:
            r = q_reduce(g, 0, d)
            assert q_reduce(g, 0, r) == r

    def test_negative_off_q_allowed(self):
        g = c4()
        d = (0, -3, 1, 0)
        r = q_reduce(g, 0, d)
        assert is_q_reduced(g, 0, r)
        assert sum(r) == sum(d)

    def test_equivalence_preserved(self):
        g = complete(4)
        d = (1, 2, 0, 3)
        r = q_reduce(g, 0, d)
        assert linearly_equivalent(g, d, r)


class TestEquivalence:
    def test_known_pair(self):
        assert linearly_equivalent(c4(), (0, 2, 0, 0), (1, 0, 0, 1))

    def test_inequivalent_singletons(self):
        assert not linearly_equivalent(c4(), (0, 1, 0, 0), (0, 0, 1, 0))

    def test_reflexive(self):
        assert linearly_equivalent(c4(), (3, 1, 0, 2), (3, 1, 0, 2))

    def test_degree_mismatch(self):
        assert not linearly_equivalent(c4(), (1, 0, 0, 0), (1, 1, 0, 0))

    def test_pic_class_keys(self):
        g = c4()
        assert pic_class(g, 0, (0, 2, 0, 0)).rep == (1, 0, 0, 1)
        assert pic_class(g, 0, (0, 0, 0, 0)).rep == (0, 0, 0, 0)
        f = (2, 0, 1, 0)
        shifted = tuple(a + b for a, b in zip((0, 2, 0, 0), laplacian_of(g, f)))
        assert pic_class(g, 0, shifted) == pic_class(g, 0, (0, 2, 0, 0))


class TestSpanningTrees:
    def test_c4(self):
        assert spanning_tree_count(c4()) == 4

    def test_k3(self):
        assert spanning_tree_count(complete(3)) == 3

    def test_tree(self):
        assert spanning_tree_count(path(5)) == 1

    def test_cayley(self):
        assert spanning_tree_count(complete(5)) == 5 ** 3

    def test_pic0_cardinality(self):
        # off-q parts of q-reduced divisors biject with Pic^0
        from toppling.divisors import effective_reduced_off_q
        for g in (c4(), complete(3), cycle(5), theta(4)):
            assert len(effective_reduced_off_q(g, g.q)) == spanning_tree_count(g)


class TestLinearSystem:
    def test_zero(self):
        assert linear_system(c4(), 0, (0, 0, 0, 0)) == [(0, 0, 0, 0)]

    def test_rigid_single_chip(self):
        assert linear_system(c4(), 0, (0, 1, 0, 0)) == [(0, 1, 0, 0)]

    def test_degree_two(self):
        got = linear_system(c4(), 0, (0, 2, 0, 0))
        assert got == [(0, 0, 2, 0), (0, 2, 0, 0), (1, 0, 0, 1)]

    def test_negative_degree(self):
        assert linear_system(c4(), 0, (-1, 0, 0, 0)) == []


class TestOrientationCorrespondence:
    def test_c4_count(self):
        assert len(acyclic_orientations_unique_source(c4())) == 3

    def test_path_unique(self):
        assert len(acyclic_orientations_unique_source(path(3))) == 1

    def test_k3_count(self):
        assert len(acyclic_orientations_unique_source(complete(3))) == 2

    def test_maximal_reduced_c4(self):
        got = sorted(maximal_reduced_divisors(c4()))
        assert got == [(-1, 0, 0, 1), (-1, 0, 1, 0), (-1, 1, 0, 0)]

    def test_maximal_reduced_path(self):
        assert maximal_reduced_divisors(path(3)) == [(-1, 0, 0)]

    def test_counts_agree(self):
        for g in (c4(), complete(4), cycle(5), theta(4)):
            assert len(maximal_reduced_divisors(g)) == \
                len(acyclic_orientations_unique_source(g))

    def test_genus_sum(self):
        # off-q coordinates of each maximal reduced divisor sum to m - n + 1
        for g in (c4(), complete(4), theta(5)):
            genus = g.m - g.n + 1
            for e in maximal_reduced_divisors(g):
                assert sum(e) + 1 == genus
                assert e[g.q] == -1
                shifted = tuple(0 if v == g.q else e[v] for v in range(g.n))
                assert is_q_reduced(g, g.q, shifted)


def test_hilbert_function_c4():
    assert hilbert_function(c4(), 0, 5) == [1, 4, 4, 4, 4, 4]


def test_hilbert_function_theta3():
    assert hilbert_function(theta(3), 0, 5) == [1, 2, 3, 3, 3, 3]
