import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coringdescent import exactla as la
from coringdescent.errors import EnumerationTooLarge, NotPrime, NotSquare

from conftest import brute_elements


@st.composite
def matrices(draw, max_rows=4, max_cols=4, primes=(2, 3, 5)):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(entries, dtype=np.int64).reshape(r, c)


def brute_kernel_size(a, p):
    xs = brute_elements(p, a.shape[1])
    return int(((xs @ a.T) % p == 0).all(axis=1).sum())


def test_primality():
    assert [n for n in range(30) if la.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    with pytest.raises(NotPrime):
        la.check_prime(4)


def test_rref_small():
    r, piv, k = la.rref(np.array([[1, 1], [1, 1]]), 2)
    assert k == 1 and piv == [0]
    assert r.tolist() == [[1, 1], [0, 0]]


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity_against_brute_force(pm):
    p, a = pm
    k = la.rank(a, p)
    assert brute_kernel_size(a, p) == p ** (a.shape[1] - k)
    ker = la.kernel_basis(a, p)
    assert ker.shape[0] == a.shape[1] - k
    assert not (a @ ker.T % p).any()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_is_idempotent_and_row_equivalent(pm):
    p, a = pm
    r, piv, k = la.rref(a, p)
    r2, piv2, k2 = la.rref(r, p)
    assert np.array_equal(r, r2) and piv == piv2
    if a.shape[0]:
        assert la.rank(np.vstack([a, r]), p) == k


@given(matrices(max_rows=3, max_cols=3), st.data())
@settings(max_examples=60, deadline=None)
def test_solve_affine_matches_exhaustive_search(pm, data):
    p, a = pm
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[0], max_size=a.shape[0])), dtype=np.int64)
    xs = brute_elements(p, a.shape[1])
    hits = {x.tobytes() for x in xs if np.array_equal(a @ x % p, b)}
    sol = la.solve_affine(a, b, p)
    if not hits:
        assert sol is None
        return
    found = {x.tobytes() for x in sol.points()}
    assert found == hits
    assert sol.size == len(hits)


def test_solve_inconsistent_returns_none():
    assert la.solve_affine([[1, 1], [1, 1]], [0, 1], 2) is None


@given(matrices(max_rows=4, max_cols=4))
@settings(max_examples=60, deadline=None)
def test_invert(pm):
    p, a = pm
    if a.shape[0] != a.shape[1]:
        with pytest.raises(NotSquare):
            la.invert(a, p)
        return
    inv = la.invert(a, p)
    n = a.shape[0]
    if la.rank(a, p) < n:
        assert inv is None
    else:
        assert np.array_equal(a @ inv % p, la.eye(n))
        assert np.array_equal(inv @ a % p, la.eye(n))


def test_enumeration_order_first_coordinate_fastest():
    s = la.AffineSubspace(2, np.zeros(2, dtype=np.int64), la.eye(2))
    assert [x.tolist() for x in s.enumerate()] == [[0, 0], [1, 0], [0, 1], [1, 1]]
    assert s.points().tolist() == [[0, 0], [1, 0], [0, 1], [1, 1]]


def test_enumeration_cap():
    s = la.AffineSubspace(3, np.zeros(5, dtype=np.int64), la.eye(5))
    with pytest.raises(EnumerationTooLarge):
        s.points(cap=100)
    with pytest.raises(EnumerationTooLarge):
        next(s.enumerate(cap=100))
    assert len(s.points(cap=243)) == 243


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("CORING_CAP", "17")
    assert la.default_cap() == 17
    monkeypatch.delenv("CORING_CAP")
    assert la.default_cap() == 2**20


def test_contains_and_coordinates():
    basis = np.array([[1, 0, 1], [0, 1, 1]])
    s = la.AffineSubspace(2, np.array([1, 0, 0]), basis)
    assert s.contains([0, 0, 1]) and not s.contains([0, 0, 0])
    assert la.coordinates(basis, [1, 1, 0], 2).tolist() == [1, 1]
    assert la.coordinates(basis, [0, 0, 1], 2) is None


def test_gl2_f3_order():
    # |GL_2(F_3)| = (9 - 1)(9 - 3)
    count = sum(la.is_invertible(np.array(m).reshape(2, 2), 3) for m in itertools.product(range(3), repeat=4))
    assert count == 48
