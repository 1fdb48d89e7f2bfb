"""Finite-dimensional algebras, modules and tensor products over F_p.

Conventions, fixed library-wide:

* elements are row vectors; a linear map is the matrix ``M`` with
  ``x -> x @ M``;
* a module carries one action matrix per basis element of its acting
  algebra; ``m . a = m @ R[a]`` on the right and ``a . m = m @ L[a]`` on the
  left, so ``R[a b] = R[a] @ R[b]`` and ``L[a b] = L[b] @ L[a]``;
* ``M (x)_A N`` is the quotient of the Kronecker space ``M (x)_k N`` (index
  ``m * dim N + n``) by the balancing relations, stored with both a
  projection and a section.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import exactla as la
from .errors import AxiomError, DimensionMismatch, EnumerationTooLarge, NotAlgebraMap
from .groups import FiniteGroup, group_from_elements


@dataclass(frozen=True, eq=False)
class Algebra:
    """Associative unital algebra given by structure constants.

    ``mul[i, j, k]`` is the coefficient of ``a_k`` in ``a_i a_j`` and ``one``
    holds the coordinates of the unit.
    """

    p: int
    mul: np.ndarray
    one: np.ndarray
    name: str = ""

    def __post_init__(self):
        p = la.check_prime(self.p)
        mul = la.fp(self.mul, p)
        one = la.fp(self.one, p).reshape(-1)
        d = one.shape[0]
        if mul.shape != (d, d, d):
            raise DimensionMismatch(f"structure constants of shape {mul.shape} for dim {d}")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "one", one)

    @property
    def dim(self) -> int:
        return int(self.one.shape[0])

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mul) % self.p

    def left_mult(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        return np.einsum("i,ijk->jk", x, self.mul) % self.p

    def right_mult(self, y: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> x y``."""
        return np.einsum("j,ijk->ik", y, self.mul) % self.p

    @cached_property
    def left_mats(self) -> np.ndarray:
        return np.stack([self.left_mult(self.basis(i)) for i in range(self.dim)])

    @cached_property
    def right_mats(self) -> np.ndarray:
        return np.stack([self.right_mult(self.basis(i)) for i in range(self.dim)])

    def is_unit(self, x: np.ndarray) -> bool:
        return la.rank(self.left_mult(x), self.p) == self.dim

    def inverse(self, x: np.ndarray) -> np.ndarray | None:
        # y @ L_x = x y; in finite dimension a one-sided inverse is two-sided
        sol = la.solve_affine(self.left_mult(x).T, self.one, self.p)
        if sol is None or sol.rank:
            return None
        return sol.particular

    def elements(self, cap: int | None = None) -> Iterator[np.ndarray]:
        space = la.AffineSubspace(self.p, self.zero(), la.eye(self.dim))
        return space.enumerate(cap)

    def same_as(self, other: "Algebra | None") -> bool:
        if other is None:
            return False
        if other is self:
            return True
        return (
            self.p == other.p
            and self.dim == other.dim
            and np.array_equal(self.mul, other.mul)
            and np.array_equal(self.one, other.one)
        )

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Algebra{label} over F_{self.p}, dim {self.dim}>"


def check_algebra(a: Algebra) -> list[str]:
    """Violated associativity and unit identities, empty iff ``a`` is valid."""
    problems = []
    c = a.mul
    p = a.p
    # (a_i a_j) a_l vs a_i (a_j a_l)
    lhs = np.einsum("ijk,klm->ijlm", c, c) % p
    rhs = np.einsum("jlk,ikm->ijlm", c, c) % p
    for i, j, l in sorted({tuple(x[:3]) for x in np.argwhere(lhs != rhs)}):
        problems.append(f"associativity fails for basis triple ({i},{j},{l})")
    for i in range(a.dim):
        e = a.basis(i)
        if not np.array_equal(a.product(a.one, e), e):
            problems.append(f"left unit law fails: 1*a_{i} != a_{i}")
        if not np.array_equal(a.product(e, a.one), e):
            problems.append(f"right unit law fails: a_{i}*1 != a_{i}")
    return problems


def check_algebra_map(phi: np.ndarray, source: Algebra, target: Algebra) -> list[str]:
    """Violations of ``phi: source -> target`` being a unital algebra map."""
    p = target.p
    phi = la.fp(phi, p)
    if source.p != target.p:
        return [f"characteristics differ: {source.p} vs {target.p}"]
    if phi.shape != (source.dim, target.dim):
        return [f"map of shape {phi.shape}, expected {(source.dim, target.dim)}"]
    problems = []
    if not np.array_equal(source.one @ phi % p, target.one):
        problems.append("map does not send 1 to 1")
    for i in range(source.dim):
        for j in range(source.dim):
            lhs = source.mul[i, j] @ phi % p
            rhs = target.product(phi[i], phi[j])
            if not np.array_equal(lhs, rhs):
                problems.append(f"not multiplicative on basis pair ({i},{j})")
    return problems


def require_algebra_map(phi: np.ndarray, source: Algebra, target: Algebra) -> np.ndarray:
    problems = check_algebra_map(phi, source, target)
    if problems:
        raise NotAlgebraMap("algebra map", problems)
    return la.fp(phi, target.p)


def subalgebra(a: Algebra, basis: np.ndarray, name: str = "") -> tuple[Algebra, np.ndarray]:
    """Subalgebra spanned by the rows of ``basis`` and its inclusion matrix.

    Raises ``AxiomError`` if the span is not closed or misses the unit.
    """
    p = a.p
    basis = la.row_basis(basis, p)
    d = basis.shape[0]
    mul = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            c = la.coordinates(basis, a.product(basis[i], basis[j]), p)
            if c is None:
                raise AxiomError(name or "subalgebra", [f"product of basis {i},{j} leaves the span"])
            mul[i, j] = c
    one = la.coordinates(basis, a.one, p)
    if one is None:
        raise AxiomError(name or "subalgebra", ["span does not contain 1"])
    return Algebra(p, mul, one, name), basis


@dataclass(frozen=True, eq=False)
class Module:
    """A finite-dimensional module, bimodule, or bare vector space.

    ``left``/``right`` are the acting algebras (``None`` for no action on
    that side) with ``lmats``/``rmats`` the action matrices of their basis
    elements.  A one-sided module is the case where one side is ``None``.
    """

    p: int
    dim: int
    left: Algebra | None = None
    lmats: np.ndarray | None = None
    right: Algebra | None = None
    rmats: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        for side in ("l", "r"):
            alg = self.left if side == "l" else self.right
            mats = self.lmats if side == "l" else self.rmats
            if alg is None:
                object.__setattr__(self, f"{side}mats", None)
                continue
            if alg.p != self.p:
                raise DimensionMismatch(f"algebra over F_{alg.p} acting on an F_{self.p}-space")
            mats = la.fp(mats, self.p).reshape(alg.dim, self.dim, self.dim)
            object.__setattr__(self, f"{side}mats", mats)

    def ract(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``m -> m . x`` for an element ``x`` of the right algebra."""
        return np.einsum("i,ijk->jk", la.fp(x, self.p), self.rmats) % self.p

    def lact(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``m -> x . m`` for an element ``x`` of the left algebra."""
        return np.einsum("i,ijk->jk", la.fp(x, self.p), self.lmats) % self.p

    def with_name(self, name: str) -> "Module":
        return Module(self.p, self.dim, self.left, self.lmats, self.right, self.rmats, name)

    def forget_left(self) -> "Module":
        return Module(self.p, self.dim, None, None, self.right, self.rmats, self.name)

    def forget_right(self) -> "Module":
        return Module(self.p, self.dim, self.left, self.lmats, None, None, self.name)

    def __repr__(self) -> str:
        sides = []
        if self.left is not None:
            sides.append(f"left {self.left.name or self.left.dim}")
        if self.right is not None:
            sides.append(f"right {self.right.name or self.right.dim}")
        return f"<Module {self.name!r} dim {self.dim} ({', '.join(sides) or 'vector space'})>"


ModuleRep = Module
BimoduleRep = Module


def check_module(m: Module) -> list[str]:
    problems = []
    p = m.p
    eye = la.eye(m.dim)
    if m.right is not None:
        a = m.right
        if not np.array_equal(m.ract(a.one), eye):
            problems.append("right action of 1 is not the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                if not np.array_equal(m.ract(a.mul[i, j]), m.rmats[i] @ m.rmats[j] % p):
                    problems.append(f"right action not multiplicative on ({i},{j})")
    if m.left is not None:
        b = m.left
        if not np.array_equal(m.lact(b.one), eye):
            problems.append("left action of 1 is not the identity")
        for i in range(b.dim):
            for j in range(b.dim):
                if not np.array_equal(m.lact(b.mul[i, j]), m.lmats[j] @ m.lmats[i] % p):
                    problems.append(f"left action not multiplicative on ({i},{j})")
    if m.left is not None and m.right is not None:
        for i in range(m.left.dim):
            for j in range(m.right.dim):
                if not np.array_equal(m.lmats[i] @ m.rmats[j] % p, m.rmats[j] @ m.lmats[i] % p):
                    problems.append(f"left {i} and right {j} actions do not commute")
    return problems


def require_module(m: Module) -> Module:
    problems = check_module(m)
    if problems:
        raise AxiomError(m.name or "module", problems)
    return m


def right_regular(a: Algebra) -> Module:
    """``A`` as a right module over itself."""
    return Module(a.p, a.dim, right=a, rmats=a.right_mats, name=f"{a.name}_{a.name}".strip("_"))


def left_regular(a: Algebra) -> Module:
    return Module(a.p, a.dim, left=a, lmats=a.left_mats, name=a.name)


def regular_bimodule(a: Algebra) -> Module:
    return Module(a.p, a.dim, a, a.left_mats, a, a.right_mats, name=a.name)


def zero_module(a: Algebra, side: str = "right") -> Module:
    empty = np.zeros((a.dim, 0, 0), dtype=np.int64)
    if side == "right":
        return Module(a.p, 0, right=a, rmats=empty)
    return Module(a.p, 0, left=a, lmats=empty)


def _block_diag(mats: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(x.shape[0] for x in mats)
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for x in mats:
        d = x.shape[0]
        out[k : k + d, k : k + d] = x
        k += d
    return out


def direct_sum(*mods: Module) -> Module:
    first = mods[0]
    dim = sum(m.dim for m in mods)
    lmats = rmats = None
    if first.left is not None:
        lmats = np.stack([_block_diag([m.lmats[i] for m in mods]) for i in range(first.left.dim)])
    if first.right is not None:
        rmats = np.stack([_block_diag([m.rmats[i] for m in mods]) for i in range(first.right.dim)])
    return Module(first.p, dim, first.left, lmats, first.right, rmats)


def free_module(a: Algebra, rank: int, side: str = "right") -> Module:
    if rank == 0:
        return zero_module(a, side)
    base = right_regular(a) if side == "right" else left_regular(a)
    m = direct_sum(*([base] * rank))
    return m.with_name(f"{a.name}^{rank}")


def restrict_left(m: Module, phi: np.ndarray, b: Algebra) -> Module:
    """Left action pulled back along an algebra map ``phi: b -> m.left``."""
    lmats = np.stack([m.lact(phi[i]) for i in range(b.dim)])
    return Module(m.p, m.dim, b, lmats, m.right, m.rmats, m.name)


def restrict_right(m: Module, phi: np.ndarray, b: Algebra) -> Module:
    rmats = np.stack([m.ract(phi[i]) for i in range(b.dim)])
    return Module(m.p, m.dim, m.left, m.lmats, b, rmats, m.name)


def transport(m: Module, t: np.ndarray) -> Module:
    """The same module written in the basis given by the invertible ``t``.

    ``t`` is the matrix of the new-to-old isomorphism, so ``t`` itself is an
    isomorphism from the returned module onto ``m``.
    """
    p = m.p
    tinv = la.invert(t, p)
    conj = lambda x: t @ x % p @ tinv % p  # noqa: E731
    lmats = None if m.left is None else np.stack([conj(x) for x in m.lmats])
    rmats = None if m.right is None else np.stack([conj(x) for x in m.rmats])
    return Module(p, m.dim, m.left, lmats, m.right, rmats, m.name)


@dataclass(frozen=True, eq=False)
class QuotientPresentation:
    """``k^ambient -> k^dim`` with projection ``proj`` and a section ``sect``."""

    ambient: int
    proj: np.ndarray
    sect: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.proj.shape[1])


def quotient_by(relations: np.ndarray, ambient: int, p: int) -> QuotientPresentation:
    """Quotient of ``k^ambient`` by the row span of ``relations``.

    Coordinates on the quotient are the non-pivot columns of the rref of the
    relation span, so the section picks out standard basis vectors.
    """
    if relations.shape[0] == 0:
        return QuotientPresentation(ambient, la.eye(ambient), la.eye(ambient))
    r, pivots, k = la.rref(relations, p)
    pivset = set(pivots)
    free = [c for c in range(ambient) if c not in pivset]
    proj = np.zeros((ambient, len(free)), dtype=np.int64)
    for j, c in enumerate(free):
        proj[c, j] = 1
    for row, c in enumerate(pivots):
        proj[c] = (-r[row, free]) % p
    sect = np.zeros((len(free), ambient), dtype=np.int64)
    for j, c in enumerate(free):
        sect[j, c] = 1
    return QuotientPresentation(ambient, proj, sect)


@dataclass(frozen=True, eq=False)
class Tensor:
    """``left (x)_over right`` realised as a quotient of ``left (x)_k right``.

    ``module`` is the quotient with the residual left action of
    ``left.left`` and right action of ``right.right``.
    """

    left: Module
    right: Module
    over: Algebra | None
    quotient: QuotientPresentation
    module: Module

    @property
    def proj(self) -> np.ndarray:
        return self.quotient.proj

    @property
    def sect(self) -> np.ndarray:
        return self.quotient.sect

    @property
    def dim(self) -> int:
        return self.module.dim

    def pure(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Class of ``x (x) y``."""
        return np.kron(x, y) @ self.proj % self.left.p

    def relations_killed(self) -> bool:
        """Every balancing relation projects to zero."""
        if self.over is None:
            return True
        p = self.left.p
        rel = _balancing_relations(self.left, self.right, self.over)
        return not (rel @ self.proj % p).any()


def _balancing_relations(m: Module, n: Module, a: Algebra) -> np.ndarray:
    p = m.p
    im = la.eye(m.dim)
    in_ = la.eye(n.dim)
    blocks = [(np.kron(m.rmats[i], in_) - np.kron(im, n.lmats[i])) % p for i in range(a.dim)]
    if not blocks:
        return la.zeros(0, m.dim * n.dim)
    return np.vstack(blocks)


def tensor_over(m: Module, n: Module) -> Tensor:
    """``m (x)_A n`` for the algebra ``A`` acting on the right of ``m`` and left of ``n``.

    With no action on either side the product is taken over the ground field.
    """
    p = m.p
    a = m.right
    if (a is None) != (n.left is None) or (a is not None and not a.same_as(n.left)):
        raise DimensionMismatch("tensor factors do not share a middle algebra")
    ambient = m.dim * n.dim
    if a is None:
        q = QuotientPresentation(ambient, la.eye(ambient), la.eye(ambient))
    else:
        q = quotient_by(_balancing_relations(m, n, a), ambient, p)
    lmats = rmats = None
    if m.left is not None:
        lmats = np.stack([q.sect @ np.kron(x, la.eye(n.dim)) % p @ q.proj % p for x in m.lmats])
    if n.right is not None:
        rmats = np.stack([q.sect @ np.kron(la.eye(m.dim), x) % p @ q.proj % p for x in n.rmats])
    name = f"({m.name} (x) {n.name})" if m.name or n.name else ""
    mod = Module(p, q.dim, m.left, lmats, n.right, rmats, name)
    return Tensor(m, n, a, q, mod)


def tensor_map(f: np.ndarray, g: np.ndarray, src: Tensor, tgt: Tensor) -> np.ndarray:
    """``f (x) g`` between two tensor products; ``f`` right- and ``g`` left-linear."""
    p = src.left.p
    return src.sect @ np.kron(f, g) % p @ tgt.proj % p


def associator(inner_right: Tensor, outer_right: Tensor, inner_left: Tensor, outer_left: Tensor) -> np.ndarray:
    """Rebracketing ``X (x) (Y (x) Z) -> (X (x) Y) (x) Z``.

    ``inner_right = Y (x) Z``, ``outer_right = X (x) inner_right``,
    ``inner_left = X (x) Y``, ``outer_left = inner_left (x) Z``.
    """
    p = inner_right.left.p
    x = inner_left.left.dim
    z = inner_right.right.dim
    lift = outer_right.sect @ np.kron(la.eye(x), inner_right.sect) % p
    return lift @ np.kron(inner_left.proj, la.eye(z)) % p @ outer_left.proj % p


def right_unitor(t: Tensor) -> np.ndarray:
    """``M (x)_A A -> M``, ``m (x) a -> m . a``."""
    m = t.left
    a = t.over
    p = m.p
    w = np.zeros((m.dim * a.dim, m.dim), dtype=np.int64)
    for j in range(a.dim):
        w[j :: a.dim] = m.rmats[j]
    return t.sect @ w % p


def left_unitor(t: Tensor) -> np.ndarray:
    """``A (x)_A N -> N``, ``a (x) n -> a . n``."""
    n = t.right
    a = t.over
    p = n.p
    w = np.concatenate([n.lmats[i] for i in range(a.dim)], axis=0)
    return t.sect @ w % p


# --- hom spaces -----------------------------------------------------------


def _intertwining_rows(xs: Sequence[np.ndarray], ys: Sequence[np.ndarray], p: int) -> list[np.ndarray]:
    """Rows of the linear system ``x @ F = F @ y`` in ``vec(F)`` (row-major)."""
    rows = []
    for x, y in zip(xs, ys):
        m, n = x.shape[0], y.shape[0]
        rows.append((np.kron(x, la.eye(n)) - np.kron(la.eye(m), y.T)) % p)
    return rows


def linear_map_constraints(fn, shape: tuple[int, int], p: int) -> np.ndarray:
    """Matrix of the linear map ``F -> vec(fn(F))`` acting on ``vec(F)``.

    Built column by column from the images of matrix units.
    """
    m, n = shape
    cols = []
    for idx in range(m * n):
        e = np.zeros(m * n, dtype=np.int64)
        e[idx] = 1
        cols.append(la.fp(fn(e.reshape(m, n)), p).reshape(-1))
    if not cols:
        return la.zeros(0, 0)
    return np.stack(cols, axis=1)


def hom(m: Module, n: Module, sides: tuple[str, ...] = ("right",), extra=()) -> np.ndarray:
    """Basis of linear maps ``m -> n`` commuting with the chosen actions.

    ``extra`` adds further homogeneous linear constraints, each a matrix
    acting on ``vec(F)``.  Returns an array of shape ``(r, m.dim, n.dim)``.
    """
    p = m.p
    rows: list[np.ndarray] = []
    for side in sides:
        if side == "right":
            if not (m.right is not None and m.right.same_as(n.right)):
                raise DimensionMismatch("right actions are over different algebras")
            rows += _intertwining_rows(m.rmats, n.rmats, p)
        elif side == "left":
            if not (m.left is not None and m.left.same_as(n.left)):
                raise DimensionMismatch("left actions are over different algebras")
            rows += _intertwining_rows(m.lmats, n.lmats, p)
        else:
            raise ValueError(f"unknown side {side!r}")
    rows += list(extra)
    nvars = m.dim * n.dim
    system = np.vstack(rows) if rows else la.zeros(0, nvars)
    basis = la.kernel_basis(system.reshape(-1, nvars), p)
    return basis.reshape(-1, m.dim, n.dim)


def hom_A(m: Module, n: Module) -> np.ndarray:
    """Right ``A``-linear maps ``m -> n``."""
    return hom(m, n, ("right",))


def span(basis: np.ndarray, p: int, cap: int | None = None) -> Iterator[np.ndarray]:
    """Every linear combination of ``basis`` (stacked arrays), in enumeration order."""
    r = basis.shape[0]
    shape = basis.shape[1:]
    flat = basis.reshape(r, int(np.prod(shape)))
    space = la.AffineSubspace(p, np.zeros(flat.shape[1], dtype=np.int64), flat)
    for v in space.enumerate(cap):
        yield v.reshape(shape)


def invertible_elements(basis: np.ndarray, p: int, cap: int | None = None) -> list[np.ndarray]:
    """Invertible matrices in the span of ``basis``, identity first if present."""
    cap = la.default_cap() if cap is None else cap
    if basis.shape[0] and p ** basis.shape[0] > cap:
        raise EnumerationTooLarge(p ** basis.shape[0], cap, "hom space")
    if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
        return []
    found = [f for f in span(basis, p, cap) if la.is_invertible(f, p)]
    eye = la.eye(basis.shape[1])
    found.sort(key=lambda f: not np.array_equal(f, eye))
    return found


def composition_group(maps: list[np.ndarray], p: int) -> FiniteGroup:
    """Group of invertible maps under composition ``table[i, j] = maps[i] o maps[j]``."""
    return group_from_elements(maps, lambda f, g: g @ f % p)


def aut_A(m: Module, cap: int | None = None) -> FiniteGroup:
    return composition_group(invertible_elements(hom_A(m, m), m.p, cap), m.p)


def module_iso_exists(
    m: Module, n: Module, cap: int | None = None, sides: tuple[str, ...] = ("right",)
) -> np.ndarray | None:
    """An invertible element of the hom space (deterministic), or ``None``."""
    if m.dim != n.dim:
        return None
    basis = hom(m, n, sides)
    r = basis.shape[0]
    # an isomorphism identifies Hom(M, N) with End(M) and with End(N)
    if r != hom(m, m, sides).shape[0] or r != hom(n, n, sides).shape[0]:
        return None
    return find_invertible(basis, m.p, cap)


def find_invertible(basis: np.ndarray, p: int, cap: int | None = None, probes: int = 32) -> np.ndarray | None:
    """Some invertible element of the span of ``basis``, or ``None``.

    The identity is returned when it lies in the span.  Otherwise a few
    seeded random combinations are tried before the exhaustive sweep, so the
    answer is deterministic but usually found without the sweep.
    """
    r = basis.shape[0]
    if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
        return None
    cap = la.default_cap() if cap is None else cap
    if p**r > cap:
        raise EnumerationTooLarge(p**r, cap, "hom space")
    if r == 0:
        return basis.sum(axis=0) if la.is_invertible(basis.sum(axis=0), p) else None
    n = basis.shape[1]
    if la.solve_affine(basis.reshape(r, n * n).T, la.eye(n).reshape(-1), p) is not None:
        return la.eye(n)
    rng = np.random.default_rng(r)
    for _ in range(probes if p**r > probes else 0):
        f = np.einsum("i,ijk->jk", rng.integers(0, p, size=r), basis) % p
        if la.is_invertible(f, p):
            return f
    for f in span(basis, p, cap):
        if la.is_invertible(f, p):
            return f
    return None


def units(a: Algebra, cap: int | None = None) -> FiniteGroup:
    """Unit group ``G(A)``; elements are coordinate vectors, identity first."""
    found = [x for x in a.elements(cap) if a.is_unit(x)]
    found.sort(key=lambda x: not np.array_equal(x, a.one))
    return group_from_elements(found, a.product)


@dataclass(frozen=True, eq=False)
class DualBasis:
    """Finite dual basis: ``sum_i xs[i] . xis[i](m) = m`` for every ``m``."""

    xs: np.ndarray
    xis: np.ndarray


def is_fgp(m: Module) -> tuple[bool, DualBasis | None]:
    """Whether the right module ``m`` is finitely generated projective.

    Solves linearly for the identity inside the image of
    ``M (x) Hom_A(M, A) -> End(M)``; a solution is a dual basis.
    """
    a = m.right
    p = m.p
    if m.dim == 0:
        return True, DualBasis(la.zeros(0, 0), np.zeros((0, 0, a.dim), dtype=np.int64))
    xis = hom(m, right_regular(a))
    if xis.shape[0] == 0:
        return False, None
    # theta[j, k] : e_m -> e_j . xi_k(e_m)
    thetas = []
    for k in range(xis.shape[0]):
        acts = np.einsum("mi,ijk->mjk", xis[k], m.rmats) % p  # acts[m] = R(xi_k(e_m))
        for j in range(m.dim):
            thetas.append(acts[:, j, :].reshape(-1))
    system = np.stack(thetas, axis=1)
    sol = la.solve_affine(system, la.eye(m.dim).reshape(-1), p)
    if sol is None:
        return False, None
    c = sol.particular.reshape(xis.shape[0], m.dim)
    xs = c % p
    return True, DualBasis(xs, xis)


def check_dual_basis(m: Module, db: DualBasis) -> bool:
    p = m.p
    total = la.zeros(m.dim, m.dim)
    for x, xi in zip(db.xs, db.xis):
        # m -> x . xi(m)
        total = (total + np.stack([x @ m.ract(xi[r]) % p for r in range(m.dim)])) % p
    return np.array_equal(total, la.eye(m.dim))


def coords_in(basis: np.ndarray, x: np.ndarray, p: int) -> np.ndarray:
    """Coordinates of ``x`` in a stacked basis; raises if ``x`` is outside the span."""
    flat = basis.reshape(basis.shape[0], -1)
    c = la.coordinates(flat, np.asarray(x).reshape(-1), p)
    if c is None:
        raise AxiomError("coordinates", ["element lies outside the span of the basis"])
    return c
