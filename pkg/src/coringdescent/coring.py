"""Corings over a finite-dimensional algebra and their grouplike elements."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import exactla as la
from .algmod import (
    Algebra,
    Module,
    Tensor,
    associator,
    check_module,
    left_unitor,
    regular_bimodule,
    require_algebra_map,
    restrict_left,
    restrict_right,
    right_unitor,
    tensor_map,
    tensor_over,
)
from .errors import NotAUnit, NotGrouplike


@dataclass(frozen=True, eq=False)
class Coring:
    """An ``A``-coring: bimodule ``C`` with coproduct and counit matrices.

    ``coproduct`` maps into the coordinates of ``cc`` (``C (x)_A C``);
    ``counit`` maps into ``A``.
    """

    algebra: Algebra
    bimodule: Module
    coproduct: np.ndarray
    counit: np.ndarray
    name: str = ""
    presentation: Tensor | None = None

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.bimodule.dim

    @cached_property
    def cc(self) -> Tensor:
        return tensor_over(self.bimodule, self.bimodule)

    @cached_property
    def ccc_left(self) -> Tensor:
        return tensor_over(self.cc.module, self.bimodule)

    @cached_property
    def ccc_right(self) -> Tensor:
        return tensor_over(self.bimodule, self.cc.module)

    @cached_property
    def assoc(self) -> np.ndarray:
        return associator(self.cc, self.ccc_right, self.cc, self.ccc_left)

    @cached_property
    def ac(self) -> Tensor:
        return tensor_over(regular_bimodule(self.algebra), self.bimodule)

    @cached_property
    def ca(self) -> Tensor:
        return tensor_over(self.bimodule, regular_bimodule(self.algebra))

    def is_grouplike(self, g: np.ndarray) -> bool:
        p = self.p
        g = la.fp(g, p)
        return np.array_equal(g @ self.counit % p, self.algebra.one) and np.array_equal(
            g @ self.coproduct % p, self.cc.pure(g, g)
        )

    def __repr__(self) -> str:
        return f"<Coring {self.name!r} dim {self.dim} over {self.algebra!r}>"


def check_coring(c: Coring) -> list[str]:
    """Every failed coring identity, empty iff ``c`` is a coring."""
    p = c.p
    a = c.algebra
    cm = c.bimodule
    problems = [f"bimodule: {x}" for x in check_module(cm)]
    if problems:
        return problems
    delta, eps = c.coproduct, c.counit
    if delta.shape != (c.dim, c.cc.dim) or eps.shape != (c.dim, a.dim):
        return [f"coproduct/counit shapes {delta.shape}/{eps.shape} do not fit dim {c.dim}"]
    for i in range(a.dim):
        if not np.array_equal(cm.lmats[i] @ delta % p, delta @ c.cc.module.lmats[i] % p):
            problems.append(f"coproduct not left A-linear at basis {i}")
        if not np.array_equal(cm.rmats[i] @ delta % p, delta @ c.cc.module.rmats[i] % p):
            problems.append(f"coproduct not right A-linear at basis {i}")
        if not np.array_equal(cm.lmats[i] @ eps % p, eps @ a.left_mats[i] % p):
            problems.append(f"counit not left A-linear at basis {i}")
        if not np.array_equal(cm.rmats[i] @ eps % p, eps @ a.right_mats[i] % p):
            problems.append(f"counit not right A-linear at basis {i}")
    eye = la.eye(c.dim)
    lhs = delta @ tensor_map(delta, eye, c.cc, c.ccc_left) % p
    rhs = delta @ tensor_map(eye, delta, c.cc, c.ccc_right) % p @ c.assoc % p
    for row in np.nonzero((lhs != rhs).any(axis=1))[0]:
        problems.append(f"coassociativity fails on basis element {row}")
    eps_left = delta @ tensor_map(eps, eye, c.cc, c.ac) % p @ left_unitor(c.ac) % p
    if not np.array_equal(eps_left, eye):
        problems.append("left counitality (eps (x) C) o Delta = id fails")
    eps_right = delta @ tensor_map(eye, eps, c.cc, c.ca) % p @ right_unitor(c.ca) % p
    if not np.array_equal(eps_right, eye):
        problems.append("right counitality (C (x) eps) o Delta = id fails")
    return problems


def trivial_coring(a: Algebra) -> Coring:
    """``C = A`` with ``Delta(a) = 1 (x) a`` and ``eps = id``."""
    c = regular_bimodule(a)
    cc = tensor_over(c, c)
    delta = np.stack([cc.pure(a.one, a.basis(i)) for i in range(a.dim)])
    return Coring(a, c, delta, la.eye(a.dim), name=f"trivial({a.name})")


def sweedler_coring(b: Algebra, a: Algebra, phi: np.ndarray) -> Coring:
    """Sweedler coring ``A (x)_B A`` of the algebra map ``phi: B -> A``.

    ``Delta(x (x) y) = (x (x) 1) (x)_A (1 (x) y)`` and ``eps(x (x) y) = x y``.
    Raises ``NotAlgebraMap`` when ``phi`` is not a unital algebra map.
    """
    p = a.p
    phi = require_algebra_map(phi, b, a)
    reg = regular_bimodule(a)
    left = restrict_right(reg, phi, b)
    right = restrict_left(reg, phi, b)
    t = tensor_over(left, right)
    cm = t.module.with_name(f"{a.name}(x)_{b.name}{a.name}")
    cc = tensor_over(cm, cm)
    d = a.dim
    delta_amb = np.zeros((d * d, cc.dim), dtype=np.int64)
    eps_amb = np.zeros((d * d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            x, y = a.basis(i), a.basis(j)
            delta_amb[i * d + j] = cc.pure(t.pure(x, a.one), t.pure(a.one, y))
            eps_amb[i * d + j] = a.product(x, y)
    delta = t.sect @ delta_amb % p
    eps = t.sect @ eps_amb % p
    return Coring(a, cm, delta, eps, name=f"sweedler({b.name}->{a.name})", presentation=t)


def sweedler_unit(c: Coring) -> np.ndarray:
    """The grouplike ``1 (x) 1`` of a Sweedler coring."""
    return c.presentation.pure(c.algebra.one, c.algebra.one)


def parallel_filter(pred: Callable[[np.ndarray], bool], items: Sequence[np.ndarray], jobs: int = 1) -> list[int]:
    """Indices of ``items`` passing ``pred``, in input order for any ``jobs``."""
    if jobs <= 1 or len(items) < 2 * jobs:
        return [i for i, x in enumerate(items) if pred(x)]
    chunks = [range(k, len(items), jobs) for k in range(jobs)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(lambda r: [i for i in r if pred(items[i])], chunks)
        hits = [i for part in parts for i in part]
    return sorted(hits)


def grouplikes(c: Coring, cap: int | None = None, jobs: int = 1) -> list[np.ndarray]:
    """All grouplike elements in enumeration order.

    The counit condition is affine, so only its solution space is swept;
    the quadratic coproduct condition is a filter on that sweep.
    """
    affine = la.solve_affine(c.counit.T, c.algebra.one, c.p)
    if affine is None:
        return []
    candidates = affine.points(cap)
    c.cc  # built once before any worker threads read it
    keep = parallel_filter(c.is_grouplike, candidates, jobs)
    return [candidates[i] for i in keep]


def grouplike_conjugation(c: Coring, g: np.ndarray, u: np.ndarray) -> np.ndarray:
    """``g . u = u^{-1} g u`` for a unit ``u`` of the base algebra."""
    a = c.algebra
    uinv = a.inverse(u)
    if uinv is None:
        raise NotAUnit(f"{u.tolist()} is not invertible in {a!r}")
    cm = c.bimodule
    return la.fp(g, c.p) @ cm.lact(uinv) % c.p @ cm.ract(u) % c.p


def coaction_from_grouplike(c: Coring, g: np.ndarray):
    """Right coaction ``a -> g a`` on ``A``, through ``A (x)_A C = C``.

    Returns a :class:`~coringdescent.comodule.Comodule` on the right regular
    module ``A``.
    """
    from .comodule import CoactionSpace, Comodule
    from .algmod import right_regular

    if not c.is_grouplike(g):
        raise NotGrouplike(f"{np.asarray(g).tolist()} is not grouplike in {c!r}")
    a = c.algebra
    space = CoactionSpace(right_regular(a), c)
    return Comodule(space, coaction_matrix_from_grouplike(space, g), name="A")


def coaction_matrix_from_grouplike(space, g: np.ndarray) -> np.ndarray:
    c = space.coring
    a = c.algebra
    cm = c.bimodule
    rows = [space.mc.pure(a.one, g @ cm.rmats[i] % c.p) for i in range(a.dim)]
    return np.stack(rows)
