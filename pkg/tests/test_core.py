from __future__ import annotations

import random

import pytest

from shfkit import Hypergraph, Matrix, ShfType, Witness, d_stat, lambda_max, lambda_stat


class TestShfType:
    def test_weights_sorted_on_entry(self):
        assert ShfType((5, 1, 1)).weights == (1, 1, 5)

    def test_multiset_equality(self):
        assert ShfType((2, 2)) == ShfType((2, 2))
        assert ShfType((1, 5, 1)) == ShfType((1, 1, 5))

    def test_derived_counts(self):
        ty = ShfType((1, 1, 5))
        assert ty.t == 3
        assert ty.u == 7

    def test_str_groups_multiplicities(self):
        assert str(ShfType((1, 1, 5))) == "{1^2,5}"
        assert str(ShfType((2, 2))) == "{2^2}"
        assert str(ShfType((2, 3))) == "{2,3}"

    def test_needs_two_parts(self):
        with pytest.raises(ValueError):
            ShfType((2,))

    def test_positive_weights(self):
        with pytest.raises(ValueError):
            ShfType((0, 2))


class TestMatrix:
    def test_entry_range_checked(self):
        with pytest.raises(ValueError):
            Matrix(((0, 3),), 3)
        with pytest.raises(ValueError):
            Matrix(((0, -1),), 3)

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            Matrix(((0, 1), (0,)), 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Matrix((), 2)

    def test_hashable_and_immutable(self):
        a = Matrix(((0, 1), (1, 0)), 2)
        assert hash(a) == hash(Matrix(((0, 1), (1, 0)), 2))
        with pytest.raises(AttributeError):
            a.m = 3

    def test_column_access_and_roundtrip(self):
        a = Matrix(((0, 1, 2), (2, 1, 0)), 3)
        assert a.column(0) == (0, 2)
        assert Matrix.from_columns(a.columns(), 3) == a

    def test_drop_column(self):
        a = Matrix(((0, 1, 2), (2, 1, 0)), 3)
        assert a.drop_column(1).entries == ((0, 2), (2, 0))


class TestHypergraph:
    def test_repeated_vertex_rejected(self):
        with pytest.raises(ValueError):
            Hypergraph(3, ((0, 0),))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            Hypergraph(3, ((0, 3),))

    def test_edge_order_preserved(self):
        h = Hypergraph(4, ((2, 0, 1),))
        assert h.edges[0] == (2, 0, 1)
        assert h.max_edge_size == 3


class TestWitness:
    def test_parts_sorted_and_disjoint(self):
        w = Witness(((3, 1), (0, 2)))
        assert w.parts == ((1, 3), (0, 2))
        assert w.sizes() == (2, 2)
        assert w.matches(ShfType((2, 2)))

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            Witness(((0, 1), (1, 2)))


class TestLambdaStat:
    def test_example22_row0_zeros(self, example22):
        # row "1 2 0 3 0 0 0" has four zero entries
        assert lambda_stat(example22, 0, 0) == 4

    def test_partitions_columns(self, example22):
        rng = random.Random(1)
        for _ in range(20):
            n, m, rows = rng.randint(1, 8), rng.randint(1, 4), rng.randint(1, 4)
            a = Matrix(
                tuple(tuple(rng.randrange(m) for _ in range(n)) for _ in range(rows)), m
            )
            for i in range(rows):
                assert sum(lambda_stat(a, i, x) for x in range(m)) == n

    def test_thm39_row0_symbol0(self, thm39):
        # three occurrences of the symbol translated from the printed '1'
        assert lambda_stat(thm39, 0, 0) == 3

    def test_range_errors(self, thm39):
        with pytest.raises(ValueError):
            lambda_stat(thm39, 4, 0)
        with pytest.raises(ValueError):
            lambda_stat(thm39, 0, 4)


class TestDStat:
    def test_thm39_all_pairs_at_most_one(self, thm39):
        for i in range(4):
            for j in range(4):
                if i == j:
                    continue
                for x in range(4):
                    for y in range(4):
                        assert d_stat(thm39, i, j, x, y) <= 1

    def test_column_partition(self, thm39):
        total = sum(d_stat(thm39, 0, 1, x, y) for x in range(4) for y in range(4))
        assert total == thm39.num_cols

    def test_duplicate_columns_give_two(self):
        a = Matrix(((1, 1, 0), (2, 2, 1)), 3)
        assert d_stat(a, 0, 1, 1, 2) >= 2

    def test_same_row_rejected(self, thm39):
        with pytest.raises(ValueError):
            d_stat(thm39, 1, 1, 0, 0)

    def test_transposed_roles_agree(self, thm39):
        for x in range(4):
            for y in range(4):
                assert d_stat(thm39, 0, 2, x, y) == d_stat(thm39, 2, 0, y, x)


class TestLambdaMax:
    def test_thm39(self, thm39):
        assert lambda_max(thm39) == 3

    def test_all_constant(self):
        assert lambda_max(Matrix(((0,) * 6, (0,) * 6), 2)) == 6

    def test_example22(self, example22):
        # four zeros per row dominate every other symbol count
        assert lambda_max(example22) == 4

    def test_pigeonhole_floor(self):
        rng = random.Random(2)
        for _ in range(30):
            n, m, rows = rng.randint(1, 9), rng.randint(1, 4), rng.randint(1, 3)
            a = Matrix(
                tuple(tuple(rng.randrange(m) for _ in range(n)) for _ in range(rows)), m
            )
            assert lambda_max(a) >= -(-n // m)
