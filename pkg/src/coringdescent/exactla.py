"""Dense exact linear algebra over prime fields F_p.

Matrices are plain ``numpy`` int64 arrays with entries in ``[0, p)``; the
modulus travels alongside as an explicit ``p`` argument.  Vectors are rows,
and a linear map ``x -> x @ M`` is stored as the matrix ``M`` (shape
``source_dim x target_dim``), so composition ``g o f`` is ``F @ G``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DimensionMismatch, EnumerationTooLarge, NotPrime, NotSquare

DEFAULT_CAP = 2**20


def default_cap() -> int:
    """Enumeration cap, overridable through ``CORING_CAP``."""
    env = os.environ.get("CORING_CAP")
    return int(env) if env else DEFAULT_CAP


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def check_prime(p: int) -> int:
    if not is_prime(int(p)):
        raise NotPrime(f"modulus {p} is not prime")
    return int(p)


def fp(a, p: int) -> np.ndarray:
    """Coerce to an int64 array reduced mod p."""
    return np.asarray(a, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def mmul(p: int, *mats: np.ndarray) -> np.ndarray:
    """Reduced product of a chain of matrices, left to right."""
    out = mats[0]
    for m in mats[1:]:
        out = (out @ m) % p
    return out


def kron(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.kron(a, b) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int], int]:
    """Reduced row-echelon form.

    Returns ``(R, pivots, rank)`` where ``R`` has the same shape as ``a``
    with its nonzero rows first.
    """
    r = fp(a, p).copy()
    if r.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {r.shape}")
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        found = row + int(nz[0])
        if found != row:
            r[[row, found]] = r[[found, row]]
        r[row] = (r[row] * pow(int(r[row, col]), -1, p)) % p
        factors = r[:, col].copy()
        factors[row] = 0
        r = (r - np.outer(factors, r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots, len(pivots)


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return rref(a, p)[2]


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Nonzero rows of the rref: a canonical basis of the row space."""
    a = np.asarray(a, dtype=np.int64)
    if a.shape[0] == 0:
        return zeros(0, a.shape[1])
    r, _, k = rref(a, p)
    return r[:k]


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : a @ x = 0}`` as rows, one per free column, in column order."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return eye(cols)
    r, pivots, k = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(len(free), cols)
    for i, c in enumerate(free):
        basis[i, c] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = (-r[j, c]) % p
    return basis


def left_kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : x @ a = 0}``."""
    return kernel_basis(np.asarray(a).T, p)


@dataclass(frozen=True, eq=False)
class AffineSubspace:
    """``particular + span(basis)`` inside F_p^n, basis rows independent."""

    p: int
    particular: np.ndarray
    basis: np.ndarray

    @property
    def ambient_dim(self) -> int:
        return int(self.particular.shape[0])

    @property
    def rank(self) -> int:
        return int(self.basis.shape[0])

    @property
    def size(self) -> int:
        return self.p**self.rank

    def coefficients(self, cap: int | None = None) -> Iterator[tuple[int, ...]]:
        """Coefficient tuples in enumeration order: first coordinate varies fastest."""
        cap = default_cap() if cap is None else cap
        if self.size > cap:
            raise EnumerationTooLarge(self.size, cap, "affine subspace")
        for rev in itertools.product(range(self.p), repeat=self.rank):
            yield rev[::-1]

    def enumerate(self, cap: int | None = None) -> Iterator[np.ndarray]:
        for coeffs in self.coefficients(cap):
            if self.rank:
                yield (self.particular + np.asarray(coeffs, dtype=np.int64) @ self.basis) % self.p
            else:
                yield self.particular.copy()

    def points(self, cap: int | None = None) -> np.ndarray:
        """All points as a ``size x n`` array, in enumeration order."""
        cap = default_cap() if cap is None else cap
        if self.size > cap:
            raise EnumerationTooLarge(self.size, cap, "affine subspace")
        if self.rank == 0:
            return self.particular[None, :].copy()
        coeffs = np.array(list(itertools.product(range(self.p), repeat=self.rank)), dtype=np.int64)
        coeffs = coeffs[:, ::-1]
        return (self.particular[None, :] + coeffs @ self.basis) % self.p

    def contains(self, x: np.ndarray) -> bool:
        d = (np.asarray(x) - self.particular) % self.p
        if self.rank == 0:
            return not d.any()
        return rank(np.vstack([self.basis, d]), self.p) == self.rank


def enumerate_affine(s: AffineSubspace, cap: int | None = None) -> Iterator[np.ndarray]:
    return s.enumerate(cap)


def solve_affine(a: np.ndarray, b: np.ndarray, p: int) -> AffineSubspace | None:
    """All solutions of ``a @ x = b``; ``None`` if the system is inconsistent."""
    a = fp(a, p)
    b = fp(b, p).reshape(-1)
    if a.ndim != 2 or a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"matrix {a.shape} vs right-hand side of length {b.shape[0]}")
    n = a.shape[1]
    if a.shape[0] == 0:
        return AffineSubspace(p, np.zeros(n, dtype=np.int64), eye(n))
    aug = np.hstack([a, b[:, None]])
    r, pivots, k = rref(aug, p)
    if pivots and pivots[-1] == n:
        return None
    particular = np.zeros(n, dtype=np.int64)
    for j, c in enumerate(pivots):
        particular[c] = r[j, n]
    return AffineSubspace(p, particular, kernel_basis(a, p))


def invert(a: np.ndarray, p: int) -> np.ndarray | None:
    """Two-sided inverse, or ``None`` when singular."""
    a = fp(a, p)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"cannot invert a matrix of shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return zeros(0, 0)
    r, pivots, k = rref(np.hstack([a, eye(n)]), p)
    if k < n or pivots[n - 1] != n - 1:
        return None
    return r[:, n:].copy()


def is_invertible(a: np.ndarray, p: int) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def coordinates(basis: np.ndarray, v: np.ndarray, p: int) -> np.ndarray | None:
    """Unique ``c`` with ``c @ basis = v`` for an independent ``basis``, else ``None``."""
    basis = fp(basis, p)
    v = fp(v, p).reshape(-1)
    if basis.shape[0] == 0:
        return np.zeros(0, dtype=np.int64) if not v.any() else None
    sol = solve_affine(basis.T, v, p)
    if sol is None:
        return None
    return sol.particular


def key(a: np.ndarray) -> bytes:
    """Hashable key for an exact matrix (shape not included)."""
    return np.ascontiguousarray(a, dtype=np.int64).tobytes()


def lex_key(a: np.ndarray) -> tuple[int, ...]:
    return tuple(int(x) for x in np.asarray(a).reshape(-1))
