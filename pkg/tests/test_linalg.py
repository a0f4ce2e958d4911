import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gglab import _purerref, linalg
from gglab.fields import Field
from gglab.linalg import Subspace, all_subspaces

F5 = Field("Fp", 5)
F3 = Field("Fp", 3)
Q = Field("Q")

matrices_f5 = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(0, 4), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


def test_rref_known():
    mat = F5.array([[2, 4], [1, 2]])
    r, pivots = linalg.rref(F5, mat)
    assert pivots == [0]
    assert r[0].tolist() == [1, 2]


def test_rref_rational():
    mat = Q.array([[2, 1], [4, 3]])
    r, pivots = linalg.rref(Q, mat)
    assert pivots == [0, 1]
    assert np.array_equal(r, Q.eye(2))


@settings(max_examples=60)
@given(matrices_f5)
def test_rref_idempotent(rows):
    mat = F5.array(rows)
    r1, p1 = linalg.rref(F5, mat)
    r2, p2 = linalg.rref(F5, r1)
    assert np.array_equal(r1, r2)
    assert p1 == p2


@settings(max_examples=60)
@given(matrices_f5)
def test_rref_preserves_row_space(rows):
    mat = F5.array(rows)
    s1 = Subspace(F5, mat.shape[1], mat)
    s2 = Subspace(F5, mat.shape[1], linalg.row_space(F5, mat))
    assert s1 == s2


def test_compiled_matches_pure():
    try:
        from gglab import _fastrref
    except ImportError:
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(0)
    for _ in range(30):
        m, n = rng.integers(1, 9, size=2)
        mat = rng.integers(0, 7, size=(m, n), dtype=np.int64)
        a = np.ascontiguousarray(mat.copy())
        b = mat.copy()
        pa = list(_fastrref.rref_mod(a, 7))
        pb = list(_purerref.rref_mod(b, 7))
        assert pa == pb
        assert np.array_equal(a, b)


def test_nullspace_annihilates():
    rng = np.random.default_rng(1)
    for _ in range(20):
        mat = rng.integers(0, 5, size=(4, 6), dtype=np.int64)
        ns = linalg.nullspace(F5, mat)
        assert ns.shape[0] == 6 - linalg.rank(F5, mat)
        if ns.size:
            assert not np.any(linalg.matmul(F5, mat, ns.T) % 5)


@settings(max_examples=40)
@given(matrices_f5, st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_solve_residual_zero(rows, xs):
    a = F5.array(rows)
    x = F5.vector((xs * 5)[: a.shape[1]])
    b = linalg.matmul(F5, a, x)
    sol = linalg.solve(F5, a, b)
    assert sol is not None
    assert not np.any(linalg.residual(F5, a, sol, b))


def test_solve_inconsistent():
    a = F5.array([[1, 0], [1, 0]])
    assert linalg.solve(F5, a, F5.vector([1, 2])) is None


def test_subspace_dim_formula():
    # dim(U) + dim(W) = dim(U+W) + dim(U cap W)
    rng = np.random.default_rng(2)
    for _ in range(25):
        u = Subspace(F5, 5, rng.integers(0, 5, size=(2, 5), dtype=np.int64))
        w = Subspace(F5, 5, rng.integers(0, 5, size=(3, 5), dtype=np.int64))
        assert u.dim + w.dim == u.sum(w).dim + u.intersection(w).dim


def test_subspace_contains_and_coords():
    s = Subspace(F5, 3, F5.array([[1, 2, 0], [0, 0, 1]]))
    v = F5.vector([2, 4, 3])
    c = s.coords(v)
    assert c is not None
    assert np.array_equal(linalg.matmul(F5, c, s.basis), v)
    assert not s.contains(F5.vector([0, 1, 0]))


def test_all_subspaces_count():
    # Gaussian binomials over F_3, n = 2: 1 + 4 + 1 = 6
    assert sum(1 for _ in all_subspaces(F3, 2)) == 6
    # n = 3: 1 + 13 + 13 + 1 = 28
    assert sum(1 for _ in all_subspaces(F3, 3)) == 28


def test_all_subspaces_canonical_and_distinct():
    seen = set()
    for mat in all_subspaces(F3, 3):
        s = Subspace(F3, 3, mat)
        assert np.array_equal(s.basis, mat % 3)
        assert s.key() not in seen
        seen.add(s.key())


def test_rational_fraction_exactness():
    from fractions import Fraction

    mat = Q.array([["1/3", "1/6"], ["1/2", "1/4"]])
    r, pivots = linalg.rref(Q, mat)
    assert pivots == [0]
    assert r[0, 1] == Fraction(1, 2)
