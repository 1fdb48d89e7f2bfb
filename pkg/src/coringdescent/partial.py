"""Idempotent partial group actions and their partial Galois cohomology.

A partial action of a finite group ``G`` on ``A`` is stored through central
idempotents ``e_s`` and ideal isomorphisms ``alpha_s: A e_{s^-1} -> A e_s``.
Each ideal ``A e`` carries the canonical basis given by the nonzero rows of
the rref of ``{a_i e}``; ``alpha_s`` is a matrix in those bases.  The coring
``C = (+)_s A e_s`` uses the concatenation of the same bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .algmod import (
    Algebra,
    Module,
    Tensor,
    left_unitor,
    regular_bimodule,
    restrict_left,
    restrict_right,
    subalgebra,
    tensor_over,
    units,
)
from .comodule import CoactionSpace, Comodule, d0
from .coring import Coring, coaction_matrix_from_grouplike, grouplike_conjugation, grouplikes
from .descent import PointedClassSet, d1, induced_comodule, pullback
from .errors import AxiomError, BijectionFailure, InvalidDatum
from .groups import FiniteGroup


@dataclass(frozen=True, eq=False)
class PartialAction:
    group: FiniteGroup
    algebra: Algebra
    idempotents: np.ndarray
    alphas: tuple[np.ndarray, ...]
    name: str = ""

    def __post_init__(self):
        p = self.algebra.p
        object.__setattr__(self, "idempotents", la.fp(self.idempotents, p).reshape(self.group.order, self.algebra.dim))
        object.__setattr__(self, "alphas", tuple(la.fp(a, p).reshape(np.shape(a)) for a in self.alphas))

    @property
    def p(self) -> int:
        return self.algebra.p

    @cached_property
    def inv(self) -> list[int]:
        return self.group.inverse

    @cached_property
    def ideal_pivots(self) -> list[list[int]]:
        return [self._ideal(s)[1] for s in range(self.group.order)]

    @cached_property
    def ideal_bases(self) -> list[np.ndarray]:
        return [self._ideal(s)[0] for s in range(self.group.order)]

    def _ideal(self, s: int) -> tuple[np.ndarray, list[int]]:
        gen = self.algebra.right_mult(self.idempotents[s])  # rows a_i e_s
        r, piv, k = la.rref(gen, self.p)
        return r[:k], piv

    def ideal_coords(self, s: int, x: np.ndarray) -> np.ndarray:
        """Coordinates of ``x`` in ``A e_s`` (read off at the rref pivots)."""
        return np.asarray(x)[..., self.ideal_pivots[s]]

    @cached_property
    def alpha_full(self) -> list[np.ndarray]:
        """Matrices of ``a -> alpha_s(a e_{s^-1})`` on all of ``A``."""
        p = self.p
        out = []
        for s in range(self.group.order):
            t = self.inv[s]
            restrict = self.algebra.right_mult(self.idempotents[t])
            out.append(self.ideal_coords(t, restrict) @ self.alphas[s] % p @ self.ideal_bases[s] % p)
        return out

    @cached_property
    def offsets(self) -> list[int]:
        sizes = [b.shape[0] for b in self.ideal_bases]
        return [0] + [int(x) for x in np.cumsum(sizes)]

    @property
    def coring_dim(self) -> int:
        return self.offsets[-1]

    def embed(self, x: np.ndarray, s: int) -> np.ndarray:
        """The element of ``C`` equal to ``x`` (in ``A e_s``) at position ``s``."""
        v = np.zeros(self.coring_dim, dtype=np.int64)
        v[self.offsets[s] : self.offsets[s + 1]] = self.ideal_coords(s, x)
        return v

    def component(self, c: np.ndarray, s: int) -> np.ndarray:
        """Position ``s`` of ``c`` as an element of ``A``."""
        return c[self.offsets[s] : self.offsets[s + 1]] @ self.ideal_bases[s] % self.p

    def v(self, s: int) -> np.ndarray:
        return self.embed(self.idempotents[s], s)

    @cached_property
    def canonical_grouplike(self) -> np.ndarray:
        return sum(self.v(s) for s in range(self.group.order)) % self.p


def check_partial_action(pa: PartialAction) -> list[str]:
    """Every violated partial-action axiom; empty iff valid."""
    a = pa.algebra
    p = pa.p
    g = pa.group
    problems = [f"group: {x}" for x in g.check()]
    if problems:
        return problems
    e1 = g.identity
    for s in range(g.order):
        e = pa.idempotents[s]
        if not np.array_equal(a.product(e, e), e):
            problems.append(f"e_{s} is not idempotent")
        for i in range(a.dim):
            if not np.array_equal(a.product(e, a.basis(i)), a.product(a.basis(i), e)):
                problems.append(f"e_{s} is not central (basis {i})")
                break
    if not np.array_equal(pa.idempotents[e1], a.one):
        problems.append("e_1 != 1")
    if problems:
        return problems
    bases = pa.ideal_bases
    for s in range(g.order):
        t = pa.inv[s]
        al = pa.alphas[s]
        want = (bases[t].shape[0], bases[s].shape[0])
        if al.shape != want:
            problems.append(f"alpha_{s} has shape {al.shape}, expected {want}")
            continue
        if not la.is_invertible(al, p):
            problems.append(f"alpha_{s} is not bijective")
            continue
        img = lambda x: pa.ideal_coords(t, x) @ al % p @ bases[s] % p  # noqa: E731
        if not np.array_equal(img(pa.idempotents[t]), pa.idempotents[s]):
            problems.append(f"alpha_{s}(e_(s^-1)) != e_{s}")
        for i in range(bases[t].shape[0]):
            for j in range(bases[t].shape[0]):
                x, y = bases[t][i], bases[t][j]
                if not np.array_equal(img(a.product(x, y)), a.product(img(x), img(y))):
                    problems.append(f"alpha_{s} not multiplicative on ideal basis ({i},{j})")
    if not np.array_equal(pa.alphas[e1], la.eye(a.dim)):
        problems.append("alpha_1 != identity")
    if problems:
        return problems
    full = pa.alpha_full
    for s in range(g.order):
        for t in range(g.order):
            st = g.mul(s, t)
            lhs = full[t] @ full[s] % p
            rhs = full[st] @ a.right_mult(pa.idempotents[s]) % p
            if not np.array_equal(lhs, rhs):
                problems.append(f"cocycle condition fails for (sigma, tau) = ({s},{t})")
    return problems


def require_partial_action(pa: PartialAction) -> PartialAction:
    problems = check_partial_action(pa)
    if problems:
        raise AxiomError(pa.name or "partial action", problems)
    return pa


def invariants(pa: PartialAction) -> tuple[Algebra, np.ndarray]:
    """``A^G`` as an algebra together with its inclusion matrix into ``A``."""
    p = pa.p
    a = pa.algebra
    cols = [(pa.alpha_full[s] - a.right_mult(pa.idempotents[s])) % p for s in range(pa.group.order)]
    basis = la.left_kernel_basis(np.hstack(cols), p)
    return subalgebra(a, basis, name=f"{a.name}^G")


def _a_over_invariants(pa: PartialAction) -> tuple[Algebra, np.ndarray, Module, Module]:
    ag, incl = invariants(pa)
    reg = regular_bimodule(pa.algebra)
    return ag, incl, restrict_right(reg, incl, ag), restrict_left(reg, incl, ag)


@dataclass(frozen=True, eq=False)
class GaloisMap:
    matrix: np.ndarray
    source_dim: int
    target_dim: int
    bijective: bool
    tensor: Tensor


def galois_map(pa: PartialAction) -> GaloisMap:
    """``A (x)_{A^G} A -> C``, ``a (x) a' -> sum_s a alpha_s(a' e_{s^-1}) v_s``."""
    p = pa.p
    a = pa.algebra
    _, _, left, right = _a_over_invariants(pa)
    t = tensor_over(left, right)
    d = a.dim
    w = np.zeros((d * d, pa.coring_dim), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            for s in range(pa.group.order):
                x = a.product(a.basis(i), pa.alpha_full[s][j])
                w[i * d + j] = (w[i * d + j] + pa.embed(x, s)) % p
    mat = t.sect @ w % p
    bij = mat.shape[0] == mat.shape[1] and la.is_invertible(mat, p)
    return GaloisMap(mat, t.dim, pa.coring_dim, bool(bij), t)


def partial_action_coring(pa: PartialAction) -> Coring:
    """``C = (+)_s A e_s`` with

    ``a (a' v_s) a'' = a a' alpha_s(a'' e_{s^-1}) v_s``,
    ``Delta(a v_s) = sum_t a v_t (x)_A v_{t^-1 s}`` and
    ``eps(a v_s) = a delta_{s,1}``.
    """
    p = pa.p
    a = pa.algebra
    g = pa.group
    n = pa.coring_dim
    # (s, k) -> basis vector k of A e_s at position s
    elems = [(s, pa.ideal_bases[s][k]) for s in range(g.order) for k in range(pa.ideal_bases[s].shape[0])]
    lmats = np.zeros((a.dim, n, n), dtype=np.int64)
    rmats = np.zeros((a.dim, n, n), dtype=np.int64)
    for i in range(a.dim):
        for row, (s, x) in enumerate(elems):
            lmats[i, row] = pa.embed(a.product(a.basis(i), x), s)
            rmats[i, row] = pa.embed(a.product(x, pa.alpha_full[s][i]), s)
    cm = Module(p, n, a, lmats, a, rmats, name="C")
    cc = tensor_over(cm, cm)
    delta = np.zeros((n, cc.dim), dtype=np.int64)
    eps = np.zeros((n, a.dim), dtype=np.int64)
    for row, (s, x) in enumerate(elems):
        for t in range(g.order):
            rest = g.mul(pa.inv[t], s)
            left = pa.embed(a.product(x, pa.idempotents[t]), t)
            delta[row] = (delta[row] + cc.pure(left, pa.v(rest))) % p
        if s == g.identity:
            eps[row] = x
    return Coring(a, cm, delta, eps, name=f"partial({pa.name})")


def canonical_comodule(pa: PartialAction, c: Coring | None = None) -> Comodule:
    """``A`` with the coaction of the grouplike ``sum_s v_s`` and left ``A^G``-action."""
    c = partial_action_coring(pa) if c is None else c
    ag, incl = invariants(pa)
    reg = regular_bimodule(pa.algebra)
    sigma = restrict_left(reg, incl, ag).with_name("A")
    space = CoactionSpace(sigma, c)
    return Comodule(space, coaction_matrix_from_grouplike(space, pa.canonical_grouplike), name="A")


@dataclass(frozen=True, eq=False)
class PartialDescentDatum:
    """Right ``A``-module ``M`` with maps ``rho_s: M -> M e_s``."""

    module: Module
    rhos: tuple[np.ndarray, ...]


def check_datum(pa: PartialAction, d: PartialDescentDatum) -> list[str]:
    p = pa.p
    m = d.module
    problems = []
    if not np.array_equal(d.rhos[pa.group.identity], la.eye(m.dim)):
        problems.append("rho_1 is not the identity")
    for s in range(pa.group.order):
        target = la.row_basis(m.ract(pa.idempotents[s]), p)
        source = la.row_basis(m.ract(pa.idempotents[pa.inv[s]]), p)
        image = source @ d.rhos[s] % p
        if la.rank(np.vstack([target, d.rhos[s] % p]), p) != target.shape[0]:
            problems.append(f"rho_{s} does not land in M e_{s}")
        elif la.rank(image, p) != target.shape[0] or source.shape[0] != target.shape[0]:
            problems.append(f"rho_{s} restricted to M e_(s^-1) is not bijective onto M e_{s}")
    return problems


def datum_to_cocycle(pa: PartialAction, d: PartialDescentDatum, space: CoactionSpace) -> np.ndarray:
    """``F(m) = sum_s rho_s(m) (x)_A v_s``."""
    problems = check_datum(pa, d)
    if problems:
        raise InvalidDatum("; ".join(problems))
    p = pa.p
    dm = d.module.dim
    f = np.zeros((dm, space.mc.dim), dtype=np.int64)
    for s in range(pa.group.order):
        tail = np.kron(la.eye(dm), pa.v(s)[None, :]) @ space.mc.proj % p
        f = (f + d.rhos[s] @ tail) % p
    return f


def cocycle_to_datum(pa: PartialAction, f: np.ndarray, space: CoactionSpace) -> PartialDescentDatum:
    """Components of ``F`` under ``M (x)_A C = (+)_s M e_s``, ``m (x) x_s -> m x_s``."""
    p = pa.p
    m = space.module
    c = pa.coring_dim
    rhos = []
    for s in range(pa.group.order):
        w = np.zeros((m.dim * c, m.dim), dtype=np.int64)
        for gamma in range(c):
            unit = np.zeros(c, dtype=np.int64)
            unit[gamma] = 1
            comp = pa.component(unit, s)
            w[gamma::c] = m.ract(comp)
        rhos.append(f @ space.mc.sect % p @ w % p)
    d = PartialDescentDatum(m, tuple(rhos))
    problems = check_datum(pa, d)
    if problems:
        raise InvalidDatum("; ".join(problems))
    return d


def induced_datum(pa: PartialAction, n: Module) -> tuple[PartialDescentDatum, Tensor]:
    """``rho_s(n (x) a) = n (x) alpha_s(a e_{s^-1}) e_s`` on ``N (x)_{A^G} A``."""
    p = pa.p
    ag, incl = invariants(pa)
    sigma = restrict_left(regular_bimodule(pa.algebra), incl, ag)
    t = tensor_over(n, sigma)
    rhos = []
    for s in range(pa.group.order):
        step = pa.alpha_full[s] @ pa.algebra.right_mult(pa.idempotents[s]) % p
        rhos.append(t.sect @ np.kron(la.eye(n.dim), step) % p @ t.proj % p)
    return PartialDescentDatum(t.module.forget_left(), tuple(rhos)), t


def induced_partial_comodule(pa: PartialAction, n: Module, c: Coring | None = None) -> Comodule:
    """``M = N (x)_{A^G} A`` with the coaction induced by ``sum_s v_s``."""
    sigma = canonical_comodule(pa, c)
    m, _ = induced_comodule(n, sigma)
    return m


def partial_cohomology(pa: PartialAction, n: Module, i: int, cap: int | None = None, jobs: int = 1):
    """``H^i(G, Aut_A(M)) = D^i(C, M)`` for ``M = N (x)_{A^G} A``, ``i`` in {0, 1}."""
    m = induced_partial_comodule(pa, n)
    if i == 0:
        return d0(m, cap)
    if i == 1:
        return d1(m, cap, jobs)
    raise ValueError("partial cohomology is defined for i = 0, 1")


def grouplike_classes(c: Coring, cap: int | None = None, jobs: int = 1, point: np.ndarray | None = None) -> PointedClassSet:
    """``G(C) / G(A)`` under ``g . u = u^{-1} g u``; lex-least representatives."""
    gs = grouplikes(c, cap, jobs)
    us = units(c.algebra, cap).elements
    seen: dict[bytes, int] = {}
    orbits = []
    for g in gs:
        if la.key(g) in seen:
            continue
        orbit = {}
        for u in us:
            h = grouplike_conjugation(c, g, u)
            orbit[la.key(h)] = h
        for k in orbit:
            seen[k] = -1
        rep = min(orbit.values(), key=la.lex_key)
        orbits.append((la.lex_key(rep), rep, list(orbit)))
    orbits.sort(key=lambda o: o[0])
    members = {k: i for i, o in enumerate(orbits) for k in o[2]}
    dist = members[la.key(point)] if point is not None else 0
    return PointedClassSet([o[1] for o in orbits], dist, [len(o[2]) for o in orbits], members)


@dataclass(frozen=True, eq=False)
class UnitsCohomology:
    h0: list[np.ndarray]
    h1: PointedClassSet
    h0_from_descent: list[np.ndarray]
    h1_descent_classes: int
    h1_matching: list[int]
    grouplike_count: int


def units_cohomology(pa: PartialAction, cap: int | None = None, jobs: int = 1) -> UnitsCohomology:
    """``H^0 = G(A^G)`` and ``H^1 = G(C)/G(A)``, cross-checked against ``D^0``/``D^1``.

    Raises ``BijectionFailure`` if the closed forms disagree with the descent
    cohomology of ``M = A^G (x)_{A^G} A`` under the identification
    ``b (x) a -> b a``.
    """
    p = pa.p
    a = pa.algebra
    c = partial_action_coring(pa)
    ag, incl = invariants(pa)
    h0 = sorted((u @ incl % p for u in units(ag, cap).elements), key=la.lex_key)

    from .algmod import right_regular

    sigma = canonical_comodule(pa, c)
    m, t = induced_comodule(right_regular(ag), sigma)
    lam = left_unitor(t)  # M -> A
    lam_inv = la.invert(lam, p)
    from_d0 = []
    for phi in d0(m, cap).elements:
        psi = lam_inv @ phi % p @ lam % p
        from_d0.append(a.one @ psi % p)
    from_d0.sort(key=la.lex_key)
    if [la.key(x) for x in from_d0] != [la.key(x) for x in h0]:
        raise BijectionFailure("H^0: D^0 does not match G(A^G)")

    h1 = grouplike_classes(c, cap, jobs, point=pa.canonical_grouplike)
    dset = d1(m, cap, jobs)
    a_space = CoactionSpace(sigma.module.forget_left(), c)
    match = []
    for g in h1.representatives:
        f_a = coaction_matrix_from_grouplike(a_space, g)
        f_m = pullback(lam, f_a, m.space, a_space)
        match.append(dset.class_of(f_m))
    if sorted(match) != list(range(len(dset))) or match[h1.distinguished] != dset.distinguished:
        raise BijectionFailure(f"H^1: grouplike classes map to D^1 classes as {match}")
    return UnitsCohomology(h0, h1, from_d0, len(dset), match, sum(h1.sizes))
