from __future__ import annotations

import itertools
import random

import pytest

from shfkit import (
    FORBIDDEN_PATTERNS,
    Matrix,
    ShfType,
    apply_isomorphism,
    are_isomorphic,
    canonical_form,
    find_forbidden,
    is_shf,
    row_separates,
    sanity_lemma_3_3,
    search_shf,
)

TY22 = ShfType((2, 2))


def random_matrix(rng, num_rows, n, m) -> Matrix:
    return Matrix(
        tuple(tuple(rng.randrange(m) for _ in range(n)) for _ in range(num_rows)), m
    )


def random_group_element(rng, a: Matrix):
    row_perm = list(range(a.num_rows))
    rng.shuffle(row_perm)
    col_perm = list(range(a.num_cols))
    rng.shuffle(col_perm)
    symbol_perms = []
    for _ in range(a.num_rows):
        p = list(range(a.m))
        rng.shuffle(p)
        symbol_perms.append(p)
    return row_perm, col_perm, symbol_perms


def brute_force_isomorphic(a: Matrix, b: Matrix) -> bool:
    """Exhaustive check over the whole group; only viable for tiny matrices."""
    if (a.num_rows, a.num_cols, a.m) != (b.num_rows, b.num_cols, b.m):
        return False
    for row_perm in itertools.permutations(range(a.num_rows)):
        for col_perm in itertools.permutations(range(a.num_cols)):
            for perms in itertools.product(
                itertools.permutations(range(a.m)), repeat=a.num_rows
            ):
                if apply_isomorphism(a, row_perm, col_perm, perms) == b:
                    return True
    return False


class TestCanonicalForm:
    def test_idempotent(self, thm39, example22):
        rng = random.Random(21)
        mats = [thm39, example22] + [
            random_matrix(rng, rng.randint(1, 4), rng.randint(1, 6), rng.randint(1, 4))
            for _ in range(20)
        ]
        for a in mats:
            c = canonical_form(a)
            assert canonical_form(c) == c

    def test_column_swap_invariant(self, thm39):
        cols = list(thm39.columns())
        cols[2], cols[7] = cols[7], cols[2]
        swapped = Matrix.from_columns(cols, 4)
        assert canonical_form(swapped) == canonical_form(thm39)

    def test_per_row_relabel_invariant(self, thm39):
        rng = random.Random(22)
        perm = list(range(4))
        rng.shuffle(perm)
        perms = [list(range(4)) for _ in range(4)]
        perms[2] = perm
        relabeled = apply_isomorphism(
            thm39, list(range(4)), list(range(10)), perms
        )
        assert canonical_form(relabeled) == canonical_form(thm39)

    def test_orbit_constant_under_random_group_elements(self, thm39):
        rng = random.Random(23)
        mats = [
            random_matrix(rng, rng.randint(1, 4), rng.randint(2, 6), rng.randint(2, 4))
            for _ in range(20)
        ]
        for a in mats:
            base = canonical_form(a)
            for _ in range(5):
                g = random_group_element(rng, a)
                assert canonical_form(apply_isomorphism(a, *g)) == base

    def test_canonical_is_in_orbit(self):
        rng = random.Random(24)
        for _ in range(40):
            a = random_matrix(rng, rng.randint(1, 3), rng.randint(1, 4), rng.randint(1, 3))
            assert brute_force_isomorphic(a, canonical_form(a))

    def test_canonical_is_least_row_major(self):
        # exhaustively confirm minimality on tiny matrices
        rng = random.Random(25)
        for _ in range(15):
            a = random_matrix(rng, 2, 3, 2)
            c = canonical_form(a)
            flat_c = tuple(itertools.chain.from_iterable(c.entries))
            for rp in itertools.permutations(range(2)):
                for cp in itertools.permutations(range(3)):
                    for perms in itertools.product(
                        itertools.permutations(range(2)), repeat=2
                    ):
                        img = apply_isomorphism(a, rp, cp, perms)
                        flat = tuple(itertools.chain.from_iterable(img.entries))
                        assert flat_c <= flat


class TestAreIsomorphic:
    def test_reflexive(self, thm39):
        assert are_isomorphic(thm39, thm39)

    def test_column_reversal(self, example22):
        rev = Matrix.from_columns(list(reversed(example22.columns())), example22.m)
        assert are_isomorphic(example22, rev)

    def test_different_matrices(self, example22):
        zero = Matrix(tuple(tuple(0 for _ in range(7)) for _ in range(7)), 4)
        assert not are_isomorphic(example22, zero)

    def test_dimension_mismatch_is_false(self, thm39, example22):
        assert not are_isomorphic(thm39, example22)

    def test_agrees_with_brute_force(self):
        rng = random.Random(26)
        agree_pos = agree_neg = 0
        for _ in range(60):
            a = random_matrix(rng, 2, 3, 2)
            if rng.random() < 0.5:
                b = apply_isomorphism(a, *random_group_element(rng, a))
            else:
                b = random_matrix(rng, 2, 3, 2)
            expected = brute_force_isomorphic(a, b)
            assert are_isomorphic(a, b) == expected
            agree_pos += expected
            agree_neg += not expected
        assert agree_pos > 10 and agree_neg > 10


class TestShfPreservation:
    def test_is_shf_invariant_under_group(self):
        rng = random.Random(27)
        for _ in range(60):
            a = random_matrix(rng, rng.randint(2, 4), rng.randint(4, 6), rng.randint(2, 4))
            verdict = is_shf(a, TY22).ok
            for _ in range(3):
                g = random_group_element(rng, a)
                assert is_shf(apply_isomorphism(a, *g), TY22).ok == verdict


class TestFindForbidden:
    def test_f1_instance(self, f1_instance):
        hit = find_forbidden(f1_instance)
        assert hit is not None
        assert hit.config == "F1"
        assert hit.rows == (0, 1, 2, 3)

    def test_f2_instance(self):
        a = Matrix(
            ((0, 0, 1, 2),
             (1, 1, 0, 2),
             (0, 1, 0, 2),
             (1, 0, 2, 0)),
            3,
        )
        hit = find_forbidden(a)
        assert hit is not None
        # the {1,4} vs {2,3} column split is unseparated in every row
        for r in range(4):
            assert not row_separates(a, r, ((0, 3), (1, 2)))

    def test_f3_instance(self):
        a = Matrix(
            ((0, 0, 1, 2),
             (1, 0, 0, 2),
             (0, 1, 2, 0),
             (1, 2, 0, 0)),
            3,
        )
        hit = find_forbidden(a)
        assert hit is not None
        for r in range(4):
            assert not row_separates(a, r, ((0, 2), (1, 3)))

    def test_thm39_clean(self, thm39):
        assert find_forbidden(thm39) is None

    def test_too_small_matrix(self):
        a = Matrix(((0, 1, 2),) * 4, 3)
        assert find_forbidden(a) is None
        b = Matrix(((0, 1, 2, 0),) * 3, 3)
        assert find_forbidden(b) is None

    def test_sound_for_type22(self):
        rng = random.Random(28)
        found = 0
        for _ in range(300):
            a = random_matrix(rng, 4, rng.randint(4, 7), rng.choice((3, 4)))
            hit = find_forbidden(a)
            if hit is not None:
                found += 1
                assert not is_shf(a, TY22).ok
        assert found > 100

    def test_patterns_have_four_rows(self):
        for grid in FORBIDDEN_PATTERNS.values():
            assert len(grid) == 4
            assert all(len(row) == 4 for row in grid)


class TestSanityPredicate:
    def test_thm39_holds(self, thm39):
        assert sanity_lemma_3_3(thm39)

    def test_vacuous_when_no_repeats(self):
        # 4 distinct-symbol rows over a 4-letter alphabet, 4 columns
        a = Matrix(
            ((0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3), (0, 1, 2, 3)), 4
        )
        assert sanity_lemma_3_3(a)

    def test_search_outputs_at_m3(self):
        for n in (4, 5):
            outcome = search_shf(4, n, 3, TY22)
            if outcome.found:
                assert sanity_lemma_3_3(outcome.matrix)

    def test_rejects_uncertified_matrix(self, f1_instance):
        with pytest.raises(ValueError):
            sanity_lemma_3_3(f1_instance)
        with pytest.raises(ValueError):
            sanity_lemma_3_3(Matrix(((0, 1),) * 3, 2))
