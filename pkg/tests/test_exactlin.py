import itertools
import random
from math import gcd

import pytest

from tmh.errors import DimensionError, NotUnimodularError
from tmh.exactlin import (
    IntMatrix,
    det_exact,
    is_primitive,
    kernel_lattice_basis,
    primitive_part,
    smith_normal_form,
    unimodular_inverse,
)


def det_by_permutations(m: IntMatrix) -> int:
    """Brute-force Leibniz expansion, the oracle for det_exact."""
    n = m.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        # count inversions for the parity
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        prod = 1
        for i in range(n):
            prod *= m.entries[i][perm[i]]
        total += sign * prod
    return total


def random_matrix(rng, rows, cols, lo=-6, hi=6) -> IntMatrix:
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(rng, n, steps=12) -> IntMatrix:
    """Product of random elementary row operations applied to the identity."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-3, 3)
        m[i] = [a + q * b for a, b in zip(m[i], m[j])]
        if rng.random() < 0.3:
            m[i] = [-a for a in m[i]]
    return IntMatrix.from_rows(m)


class TestDeterminant:
    def test_identity(self):
        assert det_exact(IntMatrix.identity(2)) == 1

    def test_hand_cofactor(self):
        assert det_exact(IntMatrix.from_rows([[0, -1], [1, -1]])) == 1

    def test_dependent_rows(self):
        assert det_exact(IntMatrix.from_rows([[1, 1], [2, 2]])) == 0

    def test_non_square_raises(self):
        with pytest.raises(DimensionError):
            det_exact(IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))

    def test_against_permutation_expansion(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(1, 4)
            m = random_matrix(rng, n, n)
            assert det_exact(m) == det_by_permutations(m)

    def test_large_entries_stay_exact(self):
        big = 10**30
        m = IntMatrix.from_rows([[big, 1], [1, big]])
        assert det_exact(m) == big * big - 1


class TestSmithNormalForm:
    def test_identity(self):
        assert smith_normal_form(IntMatrix.identity(2)) == ((1, 1), 2)

    def test_single_column(self):
        assert smith_normal_form(IntMatrix.from_rows([[2], [0]])) == ((2,), 1)

    def test_two_by_three(self):
        assert smith_normal_form(IntMatrix.from_rows([[1, 0, -1], [0, 1, -1]])) == ((1, 1), 2)

    def test_zero_matrix(self):
        assert smith_normal_form(IntMatrix.from_rows([[0, 0], [0, 0]])) == ((), 0)

    def test_divisibility_chain(self):
        rng = random.Random(11)
        for _ in range(40):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            divisors, rank = smith_normal_form(m)
            assert rank == len(divisors)
            assert all(d > 0 for d in divisors)
            for a, b in zip(divisors, divisors[1:]):
                assert b % a == 0

    def test_invariance_under_unimodular_factors(self):
        rng = random.Random(13)
        for _ in range(30):
            rows, cols = rng.randint(2, 4), rng.randint(2, 4)
            m = random_matrix(rng, rows, cols)
            u = random_unimodular(rng, rows)
            v = random_unimodular(rng, cols)
            assert smith_normal_form(u @ m @ v) == smith_normal_form(m)

    def test_known_divisor_two(self):
        # diag(2, 6) has divisors 2, 6 already in chain form
        assert smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 6]])) == ((2, 6), 2)
        # diag(4, 6) must rearrange to 2 | 12
        assert smith_normal_form(IntMatrix.from_rows([[4, 0], [0, 6]])) == ((2, 12), 2)


class TestKernelLatticeBasis:
    def test_rank_one_kernel(self):
        m = IntMatrix.from_rows([[1, 0, -1], [0, 1, -1]])
        k = kernel_lattice_basis(m)
        assert (k.rows, k.cols) == (3, 1)
        assert k.col(0) in ((1, 1, 1), (-1, -1, -1))

    def test_identity_has_empty_kernel(self):
        k = kernel_lattice_basis(IntMatrix.identity(3))
        assert (k.rows, k.cols) == (3, 0)

    def test_two_dimensional_kernel(self):
        m = IntMatrix.from_rows([[1, 0, 0, 1], [0, 1, 0, 1]])
        k = kernel_lattice_basis(m)
        assert k.cols == 2
        for j in range(k.cols):
            assert m.mul_vector(k.col(j)) == (0, 0)

    def test_kernel_annihilated_and_saturated(self):
        rng = random.Random(17)
        for _ in range(40):
            rows, cols = rng.randint(1, 3), rng.randint(2, 5)
            m = random_matrix(rng, rows, cols)
            k = kernel_lattice_basis(m)
            _, rank = smith_normal_form(m)
            assert k.cols == cols - rank
            for j in range(k.cols):
                assert m.mul_vector(k.col(j)) == tuple([0] * rows)
            if k.cols:
                divisors, krank = smith_normal_form(k)
                assert krank == k.cols
                assert all(d == 1 for d in divisors)

    def test_deterministic(self):
        m = IntMatrix.from_rows([[2, 4, 6], [1, 2, 3]])
        assert kernel_lattice_basis(m) == kernel_lattice_basis(m)


class TestUnimodularInverse:
    def test_identity(self):
        assert unimodular_inverse(IntMatrix.identity(3)) == IntMatrix.identity(3)

    def test_hand_example(self):
        m = IntMatrix.from_rows([[0, -1], [1, -1]])
        assert unimodular_inverse(m) == IntMatrix.from_rows([[-1, 1], [-1, 0]])

    def test_not_unimodular(self):
        with pytest.raises(NotUnimodularError):
            unimodular_inverse(IntMatrix.from_rows([[2, 0], [0, 1]]))

    def test_product_is_identity(self):
        rng = random.Random(23)
        for _ in range(30):
            n = rng.randint(2, 5)
            u = random_unimodular(rng, n)
            inv = unimodular_inverse(u)
            assert u @ inv == IntMatrix.identity(n)
            assert det_exact(u) * det_exact(inv) == 1


class TestPrimitivity:
    def test_is_primitive(self):
        assert is_primitive((0, 1))
        assert is_primitive((-1, -1))
        assert not is_primitive((2, 0))
        assert not is_primitive((0, 0))

    def test_primitive_part(self):
        assert primitive_part((4, -6)) == (2, -3)
        g = gcd(4, 6)
        assert g == 2
