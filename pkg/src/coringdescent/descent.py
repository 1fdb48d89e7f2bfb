"""Descent cocycles, first descent cohomology, torsors and twisted forms."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import exactla as la
from .algmod import (
    Algebra,
    Module,
    Tensor,
    check_module,
    coords_in,
    hom_A,
    invertible_elements,
    is_fgp,
    module_iso_exists,
    tensor_over,
)
from .comodule import (
    CoactionSpace,
    Comodule,
    comodule_iso_exists,
    end_C_algebra,
    hom_C,
    regular_comodule,
)
from .coring import parallel_filter
from .errors import (
    BijectionFailure,
    DistinguishedPointMissing,
    NotAutomorphism,
    NotGalois,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PointedClassSet:
    """Finite pointed set of classes, each with a canonical representative.

    ``members`` maps the key of every enumerated element to its class index
    when the elements are matrices.
    """

    representatives: list[Any]
    distinguished: int
    sizes: list[int]
    members: dict[bytes, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.representatives)

    @property
    def point(self) -> Any:
        return self.representatives[self.distinguished]

    def class_of(self, x: np.ndarray) -> int:
        return self.members[la.key(x)]


@dataclass(frozen=True, eq=False)
class CocycleSet:
    """``Z^1(C, M)`` as a list of coaction matrices with ``rho^M`` marked."""

    comodule: Comodule
    cocycles: list[np.ndarray]
    distinguished: int

    @property
    def space(self) -> CoactionSpace:
        return self.comodule.space

    def __len__(self) -> int:
        return len(self.cocycles)

    def __iter__(self):
        return iter(self.cocycles)

    def as_comodules(self) -> list[Comodule]:
        return [self.comodule.with_coaction(f, f"F{i}") for i, f in enumerate(self.cocycles)]


def z1(m: Comodule, cap: int | None = None, jobs: int = 1) -> CocycleSet:
    """All coactions on the underlying module of ``m``.

    A-linearity and counitality are linear in the coaction matrix and are
    solved exactly; coassociativity is quadratic and filters the solution
    space.
    """
    space = m.space.warm()
    a, b = space.linear_system()
    sol = la.solve_affine(a, b, m.p)
    if sol is None:
        raise DistinguishedPointMissing("linear coaction constraints are inconsistent")
    shape = (space.dim, space.mc.dim)
    points = sol.points(cap)
    candidates = [x.reshape(shape) for x in points]
    keep = parallel_filter(space.is_coassociative, candidates, jobs)
    cocycles = [candidates[i] for i in keep]
    rho = la.key(m.coaction)
    where = [i for i, f in enumerate(cocycles) if la.key(f) == rho]
    if not where:
        raise DistinguishedPointMissing(f"rho of {m.name!r} not among the enumerated coactions")
    log.debug("z1: %d of %d candidates are coassociative", len(cocycles), len(candidates))
    return CocycleSet(m, cocycles, where[0])


def pullback(f: np.ndarray, coaction: np.ndarray, source: CoactionSpace, target: CoactionSpace) -> np.ndarray:
    """``f^*(F) = (f^{-1} (x)_A C) o F o f`` for an A-linear iso ``f: source -> target``."""
    p = source.p
    finv = la.invert(f, p) if f.shape[0] == f.shape[1] else None
    if finv is None:
        raise NotAutomorphism("pullback needs an invertible map")
    for x, y in zip(source.module.rmats, target.module.rmats):
        if not np.array_equal(x @ f % p, f @ y % p):
            raise NotAutomorphism("pullback needs a right A-linear map")
    return f @ coaction % p @ target.f_tensor_c(finv, source) % p


def star_action(f: np.ndarray, coaction: np.ndarray, space: CoactionSpace) -> np.ndarray:
    """Right action of ``Aut_A(M)`` on ``Z^1(C, M)``."""
    return pullback(f, coaction, space, space)


def automorphisms(m: Module, cap: int | None = None) -> list[np.ndarray]:
    """``Aut_A(M)`` as a list of matrices, identity first."""
    return invertible_elements(hom_A(m, m), m.p, cap)


def _orbit_keyed(coaction: np.ndarray, auts: list[np.ndarray], space: CoactionSpace) -> dict[bytes, np.ndarray]:
    p = space.p
    out = {}
    for f in auts:
        finv = la.invert(f, p)
        g = f @ coaction % p @ space.f_tensor_c(finv, space) % p
        out[la.key(g)] = g
    return out


def d1(m: Comodule, cap: int | None = None, jobs: int = 1, cocycles: CocycleSet | None = None) -> PointedClassSet:
    """``D^1(C, M)``: orbits of ``Z^1`` under the star action of ``Aut_A(M)``.

    Representatives are the lexicographically least coaction matrices of
    their orbits; classes are listed in order of representative.
    """
    zs = z1(m, cap, jobs) if cocycles is None else cocycles
    space = zs.space
    auts = automorphisms(m.module, cap)
    known = {la.key(f) for f in zs}
    seen: set[bytes] = set()
    orbits = []
    for f in zs:
        k = la.key(f)
        if k in seen:
            continue
        orbit = _orbit_keyed(f, auts, space)
        stray = set(orbit) - known
        if stray:
            raise BijectionFailure("star action left Z^1; the coaction enumeration is incomplete")
        seen |= set(orbit)
        rep = min(orbit.values(), key=la.lex_key)
        orbits.append((la.lex_key(rep), rep, list(orbit)))
    orbits.sort(key=lambda x: x[0])
    members = {}
    for idx, (_, _, keys) in enumerate(orbits):
        for k in keys:
            members[k] = idx
    dist = members[la.key(m.coaction)]
    return PointedClassSet([o[1] for o in orbits], dist, [len(o[2]) for o in orbits], members)


@dataclass(frozen=True, eq=False)
class Torsor:
    """``(X, rho^X, beta)`` with ``beta: M -> X`` a right A-module isomorphism."""

    comodule: Comodule
    beta: np.ndarray


def check_torsor(t: Torsor, m: Comodule) -> list[str]:
    p = m.p
    problems = []
    beta = t.beta
    if beta.shape != (m.dim, t.comodule.dim) or not la.is_invertible(beta, p):
        problems.append("beta is not invertible")
    else:
        for x, y in zip(m.module.rmats, t.comodule.module.rmats):
            if not np.array_equal(x @ beta % p, beta @ y % p):
                problems.append("beta is not right A-linear")
                break
    return problems + t.comodule.space.violations(t.comodule.coaction)


def cocycle_to_torsor(f: Comodule) -> Torsor:
    """``T(F) = (M, F, id)``."""
    return Torsor(f, la.eye(f.dim))


def torsor_to_cocycle(t: Torsor, m: Comodule) -> Comodule:
    """``D(X, rho^X, beta) = beta^*(rho^X)`` as a coaction on ``M``."""
    x = t.comodule
    return m.with_coaction(pullback(t.beta, x.coaction, m.space, x.space))


def classify_torsors(m: Comodule, cap: int | None = None, jobs: int = 1, cocycles: CocycleSet | None = None) -> PointedClassSet:
    """Comodule-isomorphism classes of the torsors ``T(F)``, ``F`` in ``Z^1``.

    Classes are found by pairwise comodule isomorphism testing, independently
    of the star action.  Representatives are lexicographically least members.
    """
    zs = z1(m, cap, jobs) if cocycles is None else cocycles
    classes: list[list[np.ndarray]] = []
    for f in zs:
        x = m.with_coaction(f)
        for members in classes:
            if comodule_iso_exists(m.with_coaction(members[0]), x, cap) is not None:
                members.append(f)
                break
        else:
            classes.append([f])
    ranked = sorted(classes, key=lambda ms: la.lex_key(min(ms, key=la.lex_key)))
    members = {la.key(f): i for i, ms in enumerate(ranked) for f in ms}
    reps = [min(ms, key=la.lex_key) for ms in ranked]
    return PointedClassSet(reps, members[la.key(m.coaction)], [len(ms) for ms in ranked], members)


def verify_torsors(m: Comodule, cap: int | None = None, jobs: int = 1, rng: np.random.Generator | None = None, trials: int = 4) -> dict:
    """Check that ``T`` and ``D`` induce mutually inverse pointed bijections.

    Besides the torsors ``T(F)``, ``D`` is exercised on torsors whose
    underlying comodule is transported to a different basis, so ``beta`` is
    never the identity there.
    """
    from .algmod import transport

    rng = np.random.default_rng(0) if rng is None else rng
    p = m.p
    zs = z1(m, cap, jobs)
    dset = d1(m, cap, jobs, cocycles=zs)
    tset = classify_torsors(m, cap, jobs, cocycles=zs)
    report = {"d1": len(dset), "torsors": len(tset), "checks": 0}
    if len(dset) != len(tset):
        raise BijectionFailure(f"|D1| = {len(dset)} but |Tors| = {len(tset)}")
    # T on classes: d1 class -> torsor class, must be a pointed bijection
    t_of = [tset.class_of(rep) for rep in dset.representatives]
    if sorted(t_of) != list(range(len(tset))) or t_of[dset.distinguished] != tset.distinguished:
        raise BijectionFailure(f"T does not induce a pointed bijection: {t_of}")
    # D on classes: inverse of T, also on transported torsors
    for j, rep in enumerate(tset.representatives):
        x = m.with_coaction(rep)
        torsors = [cocycle_to_torsor(x)]
        for _ in range(trials):
            t = _random_invertible(m.dim, p, rng)
            moved_module = transport(m.module, t)
            moved_space = CoactionSpace(moved_module, m.coring)
            # t: moved -> M is a comodule iso onto (M, rep) for the pulled-back coaction
            moved = Comodule(moved_space, pullback(t, rep, moved_space, m.space))
            beta = la.invert(t, p)
            torsors.append(Torsor(moved, beta))
        for tor in torsors:
            if check_torsor(tor, m):
                raise BijectionFailure(f"invalid torsor: {check_torsor(tor, m)}")
            back = torsor_to_cocycle(tor, m)
            k = dset.class_of(back.coaction)
            if t_of[k] != j:
                raise BijectionFailure("D o T is not the identity on classes")
            if comodule_iso_exists(tor.comodule, back, cap) is None:
                raise BijectionFailure("T(D(X)) is not equivalent to X")
            report["checks"] += 1
    for f in zs:
        back = torsor_to_cocycle(cocycle_to_torsor(m.with_coaction(f)), m)
        if not np.array_equal(back.coaction, f):
            raise BijectionFailure("D(T(F)) != F")
    report["roundtrips"] = len(zs)
    return report


def _random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        t = rng.integers(0, p, size=(n, n))
        if la.is_invertible(t, p):
            return t.astype(np.int64)


# --- Galois comodules and twisted forms -------------------------------------


def hom_module(sigma_b: Comodule, b: Algebra, x: Comodule) -> tuple[Module, np.ndarray]:
    """``Hom^C(Sigma, X)`` as a right ``B``-module (``h . b = h o b``) and its basis."""
    p = x.p
    basis = hom_C(sigma_b, x)
    r = basis.shape[0]
    rmats = np.zeros((b.dim, r, r), dtype=np.int64)
    for i in range(b.dim):
        for k in range(r):
            rmats[i, k] = coords_in(basis, sigma_b.module.lmats[i] @ basis[k] % p, p)
    return Module(p, r, right=b, rmats=rmats, name=f"Hom^C(Sigma,{x.name})"), basis


@dataclass(frozen=True, eq=False)
class GaloisReport:
    fgp: bool
    evaluation: np.ndarray
    source_dim: int
    target_dim: int
    bijective: bool
    algebra: Algebra
    sigma: Comodule

    @property
    def is_galois(self) -> bool:
        return self.fgp and self.bijective


def is_galois_comodule(sigma: Comodule) -> GaloisReport:
    """Finitely generated projective over ``A`` and bijective evaluation map.

    The evaluation is ``Hom^C(Sigma, C) (x)_B Sigma -> C``, ``f (x) s -> f(s)``
    with ``B = End^C(Sigma)``.
    """
    p = sigma.p
    fgp, _ = is_fgp(sigma.module.forget_left())
    b, sigma_b = end_C_algebra(sigma)
    creg = regular_comodule(sigma.coring)
    hmod, basis = hom_module(sigma_b, b, creg)
    t = tensor_over(hmod, sigma_b.module)
    w = basis.reshape(-1, creg.dim)
    ev = t.sect @ w % p
    bij = ev.shape[0] == ev.shape[1] and la.is_invertible(ev, p)
    return GaloisReport(fgp, ev, t.dim, creg.dim, bool(bij), b, sigma_b)


def induced_comodule(n: Module, sigma_b: Comodule) -> tuple[Comodule, Tensor]:
    """``N (x)_B Sigma`` with coaction ``N (x)_B rho^Sigma``.

    ``sigma_b`` must carry its left ``B``-action; ``n`` is a right
    ``B``-module.
    """
    p = n.p
    t = tensor_over(n, sigma_b.module)
    space = CoactionSpace(t.module, sigma_b.coring)
    s_space = sigma_b.space
    c = sigma_b.coring.dim
    inner = sigma_b.coaction @ s_space.mc.sect % p
    amb = np.kron(la.eye(n.dim), inner)
    rho = t.sect @ amb % p @ np.kron(t.proj, la.eye(c)) % p @ space.mc.proj % p
    name = f"{n.name or 'N'}(x)Sigma"
    return Comodule(space, rho, name), t


def right_module_structures(b: Algebra, d: int, cap: int | None = None) -> list[Module]:
    """Every right ``B``-module structure on ``k^d``, in enumeration order."""
    p = b.p
    # unit: sum_i one_i R_i = I
    unit_rows = np.kron(b.one[None, :], la.eye(d * d))
    sol = la.solve_affine(unit_rows, la.eye(d).reshape(-1), p)
    out = []
    if sol is None:
        return out
    for v in sol.enumerate(cap):
        r = v.reshape(b.dim, d, d)
        m = Module(p, d, right=b, rmats=r)
        if not check_module(m):
            out.append(m)
    return out


def module_classes(mods: list[Module], cap: int | None = None) -> list[list[Module]]:
    """Partition by right-module isomorphism, preserving first-seen order."""
    classes: list[list[Module]] = []
    for m in mods:
        for cls in classes:
            if module_iso_exists(cls[0], m, cap) is not None:
                cls.append(m)
                break
        else:
            classes.append([m])
    return classes


@dataclass(frozen=True, eq=False)
class TwistSet:
    classes: PointedClassSet
    dim_cap: int
    candidates_checked: int


def twist_classes(
    sigma_b: Comodule, b: Algebra, n: Module, dim_cap: int | None = None, cap: int | None = None
) -> TwistSet:
    """Brute-force ``Twist_Sigma(N)``.

    Enumerates right ``B``-modules ``P`` with ``dim P <= dim_cap`` up to
    isomorphism and keeps those with ``P (x)_B Sigma = N (x)_B Sigma`` as
    right ``A``-modules.  ``dim_cap`` defaults to ``dim N + dim Sigma``.
    """
    dim_cap = n.dim + sigma_b.dim if dim_cap is None else dim_cap
    target = tensor_over(n, sigma_b.module).module.forget_left()
    kept: list[tuple[Module, int]] = []
    checked = 0
    for d in range(dim_cap + 1):
        for cls in module_classes(right_module_structures(b, d, cap), cap):
            checked += 1
            rep = cls[0]
            pt = tensor_over(rep, sigma_b.module).module.forget_left()
            if module_iso_exists(pt, target, cap) is not None:
                kept.append((rep, len(cls)))
    dist = [i for i, (rep, _) in enumerate(kept) if module_iso_exists(rep, n, cap) is not None]
    if len(dist) != 1:
        raise BijectionFailure(f"N found in {len(dist)} twisted-form classes (dim cap {dim_cap})")
    pcs = PointedClassSet([k[0] for k in kept], dist[0], [k[1] for k in kept])
    return TwistSet(pcs, dim_cap, checked)


def unit_map(p_mod: Module, sigma_b: Comodule, cap: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``P -> Hom^C(Sigma, P (x)_B Sigma)``, ``p -> (s -> p (x) s)``, in hom coordinates."""
    pr = p_mod.p
    x, t = induced_comodule(p_mod, sigma_b)
    basis = hom_C(sigma_b, x)
    eye_p, eye_s = la.eye(p_mod.dim), la.eye(sigma_b.dim)
    rows = []
    for i in range(p_mod.dim):
        h = np.stack([t.pure(eye_p[i], eye_s[s]) for s in range(sigma_b.dim)])
        rows.append(coords_in(basis, h, pr))
    mat = np.stack(rows) if rows else np.zeros((0, basis.shape[0]), dtype=np.int64)
    return mat, basis


def verify_descent_twist(sigma: Comodule, n_rank: int = 1, n: Module | None = None, cap: int | None = None, dim_cap: int | None = None, jobs: int = 1) -> dict:
    """Compare ``D^1(C, N (x)_B Sigma)`` with ``Twist_Sigma(N)`` class by class.

    ``N`` defaults to the free right ``B``-module of rank ``n_rank``.  Faithful
    flatness of ``Sigma`` over ``B`` is replaced by its concrete consequence:
    the unit ``P -> Hom^C(Sigma, P (x)_B Sigma)`` must be bijective for ``N``
    and every twisted-form representative.
    """
    from .algmod import free_module

    gal = is_galois_comodule(sigma)
    if not gal.is_galois:
        raise NotGalois(
            f"evaluation {gal.source_dim} -> {gal.target_dim} bijective={gal.bijective}, fgp={gal.fgp}"
        )
    b, sigma_b = gal.algebra, gal.sigma
    if n is None:
        n = free_module(b, n_rank).with_name(f"B^{n_rank}")
    m, _ = induced_comodule(n, sigma_b)
    dset = d1(m, cap, jobs)
    tw = twist_classes(sigma_b, b, n, dim_cap, cap)
    tset = tw.classes
    target = tensor_over(n, sigma_b.module).module.forget_left()
    image = []
    for rep in dset.representatives:
        x = m.with_coaction(rep)
        hmod, _ = hom_module(sigma_b, b, x)
        ht = tensor_over(hmod, sigma_b.module).module.forget_left()
        if module_iso_exists(ht, target, cap) is None:
            raise BijectionFailure("Hom^C(Sigma, X) is not a Sigma-twisted form of N")
        hits = [j for j, q in enumerate(tset.representatives) if module_iso_exists(hmod, q, cap) is not None]
        if len(hits) != 1:
            raise BijectionFailure(f"Hom^C(Sigma, X) matches {len(hits)} twisted-form classes")
        image.append(hits[0])
    if sorted(image) != list(range(len(tset))):
        raise BijectionFailure(f"class map {image} is not a bijection onto {len(tset)} twisted forms")
    if image[dset.distinguished] != tset.distinguished:
        raise BijectionFailure("distinguished class is not sent to the class of N")
    flat = []
    for q in [n] + list(tset.representatives):
        mat, basis = unit_map(q, sigma_b, cap)
        ok = mat.shape[0] == mat.shape[1] and la.is_invertible(mat, b.p)
        flat.append(bool(ok))
        if not ok:
            raise BijectionFailure(f"unit map of a dim-{q.dim} module is not bijective: flatness proxy fails")
    return {
        "d1": len(dset),
        "twist": len(tset),
        "class_map": image,
        "distinguished": [dset.distinguished, tset.distinguished],
        "dim_cap": tw.dim_cap,
        "flatness_proxy": "unit P -> Hom^C(Sigma, P (x)_B Sigma) bijective",
        "unit_maps_bijective": flat,
        "B_dim": b.dim,
        "evaluation": [gal.source_dim, gal.target_dim],
    }
