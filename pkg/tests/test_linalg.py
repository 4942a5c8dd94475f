from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from extricat._linalg import Mat, SubspaceReducer, minimal_polynomial

Q = Fraction


def small_mats(max_dim: int = 4):
    dims = st.integers(min_value=0, max_value=max_dim)
    entry = st.integers(min_value=-4, max_value=4).map(Q)
    return st.tuples(dims, dims).flatmap(
        lambda rc: st.lists(
            st.lists(entry, min_size=rc[1], max_size=rc[1]),
            min_size=rc[0],
            max_size=rc[0],
        ).map(lambda rows: Mat.from_rows(rows, cols=rc[1]))
    )


def test_identity_and_matmul():
    m = Mat.from_rows([[1, 2], [3, 4], [5, 6]])
    assert Mat.identity(3) @ m == m
    assert m @ Mat.identity(2) == m
    prod = Mat.from_rows([[1, 2], [3, 4]]) @ Mat.from_rows([[0, 1], [1, 0]])
    assert prod == Mat.from_rows([[2, 1], [4, 3]])


def test_zero_sized_matrices_compose():
    a = Mat.zeros(0, 3)
    b = Mat.zeros(3, 2)
    assert (a @ b).rows == 0 and (a @ b).cols == 2
    assert Mat.zeros(2, 0) @ Mat.zeros(0, 5) == Mat.zeros(2, 5)
    assert Mat.zeros(0, 0).rank() == 0
    assert Mat.zeros(3, 0).nullspace().cols == 0
    assert Mat.zeros(0, 3).nullspace().cols == 3


def test_rref_known():
    m = Mat.from_rows([[1, 2, 1], [2, 4, 0], [0, 0, 1]])
    R, pivots = m.rref()
    assert pivots == (0, 2)
    assert R.data[0] == (Q(1), Q(2), Q(0))
    assert R.data[1] == (Q(0), Q(0), Q(1))
    assert R.data[2] == (Q(0), Q(0), Q(0))


def test_solve_inconsistent():
    m = Mat.from_rows([[1, 1], [1, 1]])
    assert m.solve(Mat.column([1, 2])) is None
    sol = m.solve(Mat.column([2, 2]))
    assert sol is not None
    assert m @ sol == Mat.column([2, 2])


def test_inverse():
    m = Mat.from_rows([[2, 1], [1, 1]])
    inv = m.inverse()
    assert inv is not None
    assert m @ inv == Mat.identity(2)
    assert Mat.from_rows([[1, 2], [2, 4]]).inverse() is None


@settings(max_examples=60)
@given(small_mats())
def test_rref_idempotent_and_rank_transpose(m):
    R, pivots = m.rref()
    R2, pivots2 = R.rref()
    assert R == R2 and pivots == pivots2
    assert m.rank() == m.transpose().rank()
    assert len(pivots) == m.rank()


@settings(max_examples=60)
@given(small_mats())
def test_nullspace_is_killed(m):
    ns = m.nullspace()
    assert ns.rows == m.cols
    assert m.cols == m.rank() + ns.cols  # rank-nullity
    if ns.cols:
        assert (m @ ns).is_zero()
        assert ns.rank() == ns.cols  # linearly independent basis


@settings(max_examples=40)
@given(small_mats(), st.data())
def test_solve_finds_solutions_when_consistent(m, data):
    # build a consistent rhs from a known x
    xs = data.draw(
        st.lists(st.integers(min_value=-3, max_value=3), min_size=m.cols, max_size=m.cols)
    )
    b = m @ Mat.column(xs)
    sol = m.solve(b)
    assert sol is not None
    assert m @ sol == b


def test_stacking_and_blocks():
    a = Mat.from_rows([[1, 2]])
    b = Mat.from_rows([[3, 4]])
    assert Mat.vstack([a, b]) == Mat.from_rows([[1, 2], [3, 4]])
    assert Mat.hstack([a, b]) == Mat.from_rows([[1, 2, 3, 4]])
    bd = Mat.block_diag([Mat.identity(1), Mat.from_rows([[2]])])
    assert bd == Mat.from_rows([[1, 0], [0, 2]])
    assert Mat.block_diag([]) == Mat.zeros(0, 0)


def test_subspace_reducer_canonical_cosets():
    red = SubspaceReducer(3, [[1, 0, 1], [0, 1, 1]])
    assert red.dim == 2 and red.quotient_dim == 1
    assert red.contains([2, 3, 5])
    assert not red.contains([1, 0, 0])
    # members of one coset reduce identically
    r1 = red.reduce([1, 0, 0])
    r2 = red.reduce([2, 1, 2])  # differs by (1,1,2) ∈ span
    assert r1 == r2
    assert red.quotient_coords([1, 0, 0]) == r1[2:]


def test_subspace_reducer_empty_span():
    red = SubspaceReducer(2, [])
    assert red.dim == 0 and red.quotient_dim == 2
    assert red.reduce([1, 2]) == (Q(1), Q(2))


def test_minimal_polynomial_simple():
    # projection matrix: minimal polynomial t^2 - t
    p = Mat.from_rows([[1, 0], [0, 0]])
    assert minimal_polynomial(p) == (Q(0), Q(-1), Q(1))
    # identity: t - 1
    assert minimal_polynomial(Mat.identity(2)) == (Q(-1), Q(1))
    # nilpotent Jordan block: t^2
    n = Mat.from_rows([[0, 1], [0, 0]])
    assert minimal_polynomial(n) == (Q(0), Q(0), Q(1))


@settings(max_examples=30)
@given(small_mats(3))
def test_minimal_polynomial_annihilates(m):
    if m.rows != m.cols:
        m = Mat.zeros(min(m.rows, m.cols), min(m.rows, m.cols))
    coeffs = minimal_polynomial(m)
    n = m.rows
    acc = Mat.zeros(n, n)
    power = Mat.identity(n)
    for c in coeffs:
        acc = acc + power.scale(c)
        power = power @ m
    assert acc.is_zero()


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        Mat.from_rows([[1, 2], [3]])
