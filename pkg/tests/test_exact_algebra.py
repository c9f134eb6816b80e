from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import jet_polys, mat, scalars, tx
from heckelab.errors import NotDivisibleError, NotInvertibleError, PrecisionError
from heckelab.exact_algebra import (
    JetLaurentMatrix,
    JetLaurentPoly,
    Scalar,
    kernel_vector,
    mat_det,
    mat_invert,
    sparse_rank,
)
from heckelab.random_data import case_rng, random_blowup_bundle


def leibniz_det(m):
    """Independent determinant: signed sum over all permutations."""
    r = m.rank
    total = JetLaurentPoly.zero(m.jet_order)
    for perm in permutations(range(r)):
        sign = 1
        for i in range(r):
            for j in range(i + 1, r):
                if perm[i] > perm[j]:
                    sign = -sign
        term = JetLaurentPoly.one(m.jet_order)
        for i in range(r):
            term = term * m[i, perm[i]]
        total = total + term * sign
    return total


class TestScalar:
    def test_gaussian_arithmetic(self):
        i = Scalar(0, 1)
        assert i * i == -1
        assert (Scalar(1, 1) * Scalar(1, -1)) == 2
        assert Scalar(3, 4).inverse() == Scalar(Fraction(3, 25), Fraction(-4, 25))

    def test_lowest_terms(self):
        s = Scalar("6/4", "-2/8")
        assert (s.re.numerator, s.re.denominator) == (3, 2)
        assert (s.im.numerator, s.im.denominator) == (-1, 4)

    def test_equality_with_rationals(self):
        assert Scalar("1/2") == Fraction(1, 2)
        assert hash(Scalar("1/2")) == hash(Fraction(1, 2))
        assert Scalar(0, 1) != 0

    def test_rejects_float(self):
        with pytest.raises(TypeError):
            Scalar(0.5)


class TestRingOps:
    def test_divide_by_x(self):
        t, x = tx(2)
        assert (x * t ** -1 + x * x).divide_by_x() == JetLaurentPoly(
            {(-1, 0): 1, (0, 1): 1}, 1
        )

    def test_distributivity_example(self):
        t, x = tx(2)
        assert (t + x) * t ** -1 == 1 + x * t ** -1

    def test_substitute_x_zero(self):
        t, x = tx(2)
        assert (t * t + 3 * x * t).at_x_zero() == JetLaurentPoly.monomial(1, 2, 0, 0)

    def test_divide_by_x_requires_divisibility(self):
        t, x = tx(2)
        with pytest.raises(NotDivisibleError, match="not divisible by defining function"):
            (t + x).divide_by_x()

    def test_divide_by_x_needs_precision(self):
        with pytest.raises(PrecisionError):
            JetLaurentPoly.zero(0).divide_by_x()

    def test_truncation_drops_high_x(self):
        _, x = tx(2)
        assert x ** 3 == 0
        assert (x * x).multiply_by_x() == 0

    def test_mixed_jet_orders_rejected(self):
        with pytest.raises(ValueError):
            JetLaurentPoly.one(1) + JetLaurentPoly.one(2)

    def test_inverse_of_unit(self):
        t, x = tx(4)
        u = 2 * t ** 3 + x * t - x ** 2 * 5
        assert u * u.inverse() == 1

    def test_non_unit_rejected(self):
        t, _ = tx(1)
        with pytest.raises(NotInvertibleError):
            (1 + t).inverse()

    @given(jet_polys(), jet_polys(), jet_polys())
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert a - a == 0

    @given(jet_polys(jet_order=3))
    @settings(max_examples=60, deadline=None)
    def test_divide_undoes_multiply(self, a):
        # headroom: only terms below x^3 survive multiply_by_x at jet order 3
        a = JetLaurentPoly({k: v for k, v in a.terms.items() if k[1] < 3}, 3)
        assert a.multiply_by_x().divide_by_x() == a.truncate(2)


class TestMatrices:
    def test_invert_identity(self):
        assert mat_invert(JetLaurentMatrix.identity(3, 2)) == JetLaurentMatrix.identity(3, 2)

    def test_invert_diagonal(self):
        t, _ = tx(0)
        assert mat_invert(mat([[t ** 2, 0], [0, t ** -1]])) == mat([[t ** -2, 0], [0, t]])

    def test_invert_triangular(self):
        t, _ = tx(0)
        m = mat([[t, 1], [0, t ** -1]])
        inv = mat_invert(m)
        assert inv == mat([[t ** -1, -1], [0, t]])
        # direct multiplication check
        assert m @ inv == JetLaurentMatrix.identity(2, 0)
        assert inv @ m == JetLaurentMatrix.identity(2, 0)

    def test_invert_rejects_non_unit_det(self):
        t, _ = tx(1)
        with pytest.raises(NotInvertibleError, match="transition not invertible near D"):
            mat_invert(mat([[1 + t, 0], [0, 1]]))

    def test_det_examples(self):
        t, x = tx(2)
        assert mat_det(JetLaurentMatrix.identity(3, 2)) == 1
        assert mat_det(mat([[t, x], [0, t ** -1]])) == 1
        t0, _ = tx(0)
        assert mat_det(mat([[t0, 1], [1, t0 ** -1]])) == 0

    @given(st.lists(jet_polys(jet_order=2, max_terms=3), min_size=9, max_size=9))
    @settings(max_examples=40, deadline=None)
    def test_det_matches_leibniz(self, entries):
        m = mat([entries[0:3], entries[3:6], entries[6:9]], 2)
        assert mat_det(m) == leibniz_det(m)

    @pytest.mark.parametrize("i", range(25))
    def test_det_multiplicative_and_inverse(self, i):
        a = random_blowup_bundle(case_rng("det-a", i)).transition
        b = random_blowup_bundle(case_rng("det-b", i)).transition
        n = min(a.jet_order, b.jet_order)
        if a.rank != b.rank:
            b = JetLaurentMatrix.identity(a.rank, n)
        a, b = a.truncate(n), b.truncate(n)
        assert mat_det(a @ b) == mat_det(a) * mat_det(b)
        ident = JetLaurentMatrix.identity(a.rank, n)
        assert a @ mat_invert(a) == ident
        assert mat_invert(a) @ a == ident


class TestLinearAlgebra:
    def test_sparse_rank(self):
        rows = [{0: Scalar(1), 1: Scalar(2)}, {0: Scalar(2), 1: Scalar(4)}, {2: Scalar(0, 1)}]
        assert sparse_rank(rows) == 2

    @given(st.lists(st.lists(scalars, min_size=3, max_size=3), min_size=3, max_size=3))
    @settings(max_examples=50, deadline=None)
    def test_kernel_vector_is_in_kernel(self, rows):
        v = kernel_vector(rows)
        full = sparse_rank([{j: c for j, c in enumerate(r)} for r in rows])
        if v is None:
            assert full == 3
        else:
            assert any(v)
            for r in rows:
                assert sum((a * b for a, b in zip(r, v)), Scalar(0)) == 0
