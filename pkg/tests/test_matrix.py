from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from dualcx.matrix import (IntMatrix, determinant, invariant_factors, kernel_q, nonnegative_solution, rank_q,
                           smith_normal_form)


def _cols(A: IntMatrix):
    return A.columns()


matrices = st.integers(0, 7).flatmap(
    lambda m: st.integers(0, 7).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
        .map(lambda rows: IntMatrix(rows, m, n))))


def _sympy_factors(A: IntMatrix):
    if A.rows == 0 or A.cols == 0:
        return []
    D = sympy_snf(sympy.Matrix(A.tolist()), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


def test_fixed_snf_cases():
    assert smith_normal_form(IntMatrix([[2, 4], [6, 8]], 2, 2)).D.tolist() == [[2, 0], [0, 4]]
    eye = IntMatrix.identity(3)
    assert smith_normal_form(eye).D == eye
    zero = IntMatrix.zeros(2, 3)
    assert smith_normal_form(zero).D == zero


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_certificate(A):
    r = smith_normal_form(A)
    assert r.U @ A @ r.V == r.D
    assert abs(determinant(r.U)) == 1 and abs(determinant(r.V)) == 1
    diag = r.D.diagonal()
    assert all(r.D[i, j] == 0 for i in range(A.rows) for j in range(A.cols) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[:len(nz)] == nz  # zeros trail
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_invariant_factors_match_sympy(A):
    assert smith_normal_form(A).invariant_factors() == _sympy_factors(A)
    assert invariant_factors(_cols(A), A.rows) == _sympy_factors(A)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_and_kernel_match_sympy(A):
    S = sympy.Matrix(A.rows, A.cols, lambda i, j: A[i, j])
    rank = S.rank() if A.rows and A.cols else 0
    assert rank_q(_cols(A)) == rank
    ker = kernel_q(_cols(A), A.rows)
    assert len(ker) == A.cols - rank
    for z in ker:
        assert all(sum(A[i, j] * z.get(j, 0) for j in range(A.cols)) == 0 for i in range(A.rows))


def test_determinant_matches_sympy():
    M = [[3, -1, 4], [1, 5, -9], [2, 6, 5]]
    assert determinant(IntMatrix(M, 3, 3)) == sympy.Matrix(M).det()


def test_nonnegative_solution():
    x = nonnegative_solution([[1, 1], [1, -1]], [2, 0])
    assert x == [Fraction(1), Fraction(1)]
    assert nonnegative_solution([[1, 1]], [-1]) is None
    assert nonnegative_solution([[1, -1]], [-3]) is not None
