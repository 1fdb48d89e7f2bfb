"""Right comodules over a coring, their hom spaces, and the group D^0."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import exactla as la
from .algmod import (
    Algebra,
    Module,
    Tensor,
    associator,
    check_algebra,
    check_module,
    coords_in,
    composition_group,
    find_invertible,
    hom,
    invertible_elements,
    linear_map_constraints,
    regular_bimodule,
    right_unitor,
    tensor_map,
    tensor_over,
)
from .coring import Coring
from .errors import AxiomError, NotComoduleIso
from .groups import FiniteGroup


@dataclass(frozen=True, eq=False)
class CoactionSpace:
    """A right ``A``-module ``M`` together with the tensor spaces its coactions use.

    Holds ``M (x)_A C``, ``(M (x)_A C) (x)_A C``, ``M (x)_A (C (x)_A C)`` and
    the maps between them, so that every comodule identity on ``M`` becomes a
    plain matrix equation.
    """

    module: Module
    coring: Coring

    @property
    def p(self) -> int:
        return self.module.p

    @property
    def dim(self) -> int:
        return self.module.dim

    @cached_property
    def mc(self) -> Tensor:
        return tensor_over(self.module, self.coring.bimodule)

    @cached_property
    def mcc(self) -> Tensor:
        return tensor_over(self.mc.module, self.coring.bimodule)

    @cached_property
    def m_cc(self) -> Tensor:
        return tensor_over(self.module, self.coring.cc.module)

    @cached_property
    def assoc(self) -> np.ndarray:
        return associator(self.coring.cc, self.m_cc, self.mc, self.mcc)

    @cached_property
    def m_delta(self) -> np.ndarray:
        """``M (x) Delta`` rebracketed into ``(M (x) C) (x) C``."""
        c = self.coring
        d = tensor_map(la.eye(self.dim), c.coproduct, self.mc, self.m_cc)
        return d @ self.assoc % self.p

    @cached_property
    def ma(self) -> Tensor:
        return tensor_over(self.module, regular_bimodule(self.coring.algebra))

    @cached_property
    def counit_map(self) -> np.ndarray:
        """``M (x) C -> M (x) A -> M``."""
        eps = tensor_map(la.eye(self.dim), self.coring.counit, self.mc, self.ma)
        return eps @ right_unitor(self.ma) % self.p

    def f_tensor_c(self, f: np.ndarray, target: "CoactionSpace | None" = None) -> np.ndarray:
        """``f (x)_A C`` for a right ``A``-linear ``f`` from ``M`` to ``target``'s module
        (default: ``M (x) C``, giving ``(M (x) C) (x) C``)."""
        eye_c = la.eye(self.coring.dim)
        if target is None:
            return tensor_map(f, eye_c, self.mc, self.mcc)
        return tensor_map(f, eye_c, self.mc, target.mc)

    def warm(self) -> "CoactionSpace":
        """Build every cached tensor space now (before sharing across threads)."""
        self.mcc, self.m_delta, self.counit_map  # noqa: B018
        return self

    def violations(self, f: np.ndarray) -> list[str]:
        p = self.p
        m = self.module
        if f.shape != (self.dim, self.mc.dim):
            return [f"coaction of shape {f.shape}, expected {(self.dim, self.mc.dim)}"]
        problems = []
        for i in range(self.coring.algebra.dim):
            if not np.array_equal(m.rmats[i] @ f % p, f @ self.mc.module.rmats[i] % p):
                problems.append(f"coaction not right A-linear at basis {i}")
        if not np.array_equal(f @ self.counit_map % p, la.eye(self.dim)):
            problems.append("counitality (M (x) eps) o rho = id fails")
        if problems:
            return problems
        if not self.is_coassociative(f):
            problems.append("coassociativity (rho (x) C) o rho = (M (x) Delta) o rho fails")
        return problems

    def is_coassociative(self, f: np.ndarray) -> bool:
        p = self.p
        return np.array_equal(f @ self.f_tensor_c(f) % p, f @ self.m_delta % p)

    def is_coaction(self, f: np.ndarray) -> bool:
        return not self.violations(f)

    def linear_system(self) -> tuple[np.ndarray, np.ndarray]:
        """``(A, b)`` with ``A @ vec(F) = b`` encoding A-linearity and counitality."""
        p = self.p
        m, q = self.dim, self.mc.dim
        rows = []
        for x, y in zip(self.module.rmats, self.mc.module.rmats):
            rows.append((np.kron(x, la.eye(q)) - np.kron(la.eye(m), y.T)) % p)
        zero_rhs = np.zeros(sum(r.shape[0] for r in rows), dtype=np.int64)
        rows.append(np.kron(la.eye(m), self.counit_map.T) % p)
        rhs = np.concatenate([zero_rhs, la.eye(m).reshape(-1)])
        return np.vstack(rows), rhs


@dataclass(frozen=True, eq=False)
class Comodule:
    """A right ``C``-comodule ``(M, rho)``; ``rho`` is in ``M (x)_A C`` coordinates."""

    space: CoactionSpace
    coaction: np.ndarray
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coaction", la.fp(self.coaction, self.space.p))

    @property
    def module(self) -> Module:
        return self.space.module

    @property
    def coring(self) -> Coring:
        return self.space.coring

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def p(self) -> int:
        return self.space.p

    def with_coaction(self, f: np.ndarray, name: str = "") -> "Comodule":
        return Comodule(self.space, f, name)

    def __repr__(self) -> str:
        return f"<Comodule {self.name!r} dim {self.dim} over {self.coring.name!r}>"


Cocycle = Comodule


def check_comodule(m: Comodule) -> list[str]:
    """Named comodule-identity failures; empty iff valid."""
    return [f"module: {x}" for x in check_module(m.module)] or m.space.violations(m.coaction)


def require_comodule(m: Comodule) -> Comodule:
    problems = check_comodule(m)
    if problems:
        raise AxiomError(m.name or "comodule", problems)
    return m


def regular_comodule(c: Coring) -> Comodule:
    """``C`` over itself with coaction ``Delta``."""
    space = CoactionSpace(c.bimodule, c)
    # C (x)_A C for the space is built from the same factors as c.cc
    return Comodule(space, c.coproduct, name="C")


def is_comodule_map(f: np.ndarray, m: Comodule, n: Comodule) -> bool:
    p = m.p
    f = la.fp(f, p)
    for x, y in zip(m.module.rmats, n.module.rmats):
        if not np.array_equal(x @ f % p, f @ y % p):
            return False
    lhs = m.coaction @ m.space.f_tensor_c(f, n.space) % p
    return np.array_equal(lhs, f @ n.coaction % p)


def hom_C(m: Comodule, n: Comodule) -> np.ndarray:
    """Basis of right comodule maps ``m -> n``, shape ``(r, dim m, dim n)``."""
    p = m.p

    def colinearity(f):
        return (m.coaction @ m.space.f_tensor_c(f, n.space) - f @ n.coaction) % p

    extra = linear_map_constraints(colinearity, (m.dim, n.dim), p)
    return hom(m.module, n.module, ("right",), extra=[extra] if extra.size else [])


def end_C_algebra(sigma: Comodule) -> tuple[Algebra, Comodule]:
    """``B = End^C(Sigma)`` by structure constants, and ``Sigma`` as a ``(B, A)``-bimodule.

    The product is composition, ``b_i b_j = b_i o b_j``; ``B`` acts on
    ``Sigma`` from the left by evaluation.
    """
    p = sigma.p
    basis = hom_C(sigma, sigma)
    r = basis.shape[0]
    mul = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            mul[i, j] = coords_in(basis, basis[j] @ basis[i] % p, p)
    one = coords_in(basis, la.eye(sigma.dim), p)
    b = Algebra(p, mul, one, name=f"End^C({sigma.name})")
    m = sigma.module
    bimod = Module(p, m.dim, b, basis, m.right, m.rmats, m.name)
    # the balancing relations of Sigma (x)_A C only see the right action, so
    # the coaction keeps its coordinates
    space = CoactionSpace(bimod, sigma.coring)
    return b, Comodule(space, sigma.coaction, sigma.name)


def check_end_algebra(b: Algebra, sigma_b: Comodule) -> list[str]:
    return [f"B: {x}" for x in check_algebra(b)] + [f"Sigma: {x}" for x in check_module(sigma_b.module)]


def automorphism_maps(basis: np.ndarray, p: int, cap: int | None = None) -> list[np.ndarray]:
    return invertible_elements(basis, p, cap)


def d0(m: Comodule, cap: int | None = None) -> FiniteGroup:
    """``D^0(C, M) = Aut^C(M)`` with its composition table, identity first."""
    return composition_group(automorphism_maps(hom_C(m, m), m.p, cap), m.p)


def d0_pushforward(f: np.ndarray, alpha: np.ndarray, source: Comodule, target: Comodule) -> np.ndarray:
    """``f^{-1} o alpha o f`` for a comodule isomorphism ``f: source -> target``."""
    p = source.p
    finv = la.invert(f, p) if f.shape[0] == f.shape[1] else None
    if finv is None or not is_comodule_map(f, source, target):
        raise NotComoduleIso("pushforward needs a comodule isomorphism")
    return f @ alpha % p @ finv % p


def comodule_iso_exists(m: Comodule, n: Comodule, cap: int | None = None) -> np.ndarray | None:
    """An invertible comodule map ``m -> n`` (deterministic), or ``None``."""
    if m.dim != n.dim:
        return None
    basis = hom_C(m, n)
    r = basis.shape[0]
    if r != hom_C(m, m).shape[0] or r != hom_C(n, n).shape[0]:
        return None
    return find_invertible(basis, m.p, cap)
