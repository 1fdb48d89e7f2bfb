import numpy as np
import pytest

from coringdescent import exactla as la
from coringdescent.algmod import free_module, units
from coringdescent.comodule import check_comodule
from coringdescent.coring import check_coring, grouplike_conjugation, grouplikes
from coringdescent.descent import z1
from coringdescent.errors import AxiomError, InvalidDatum
from coringdescent.groups import cyclic_group
from coringdescent.partial import (
    PartialAction,
    PartialDescentDatum,
    canonical_comodule,
    check_datum,
    check_partial_action,
    cocycle_to_datum,
    datum_to_cocycle,
    galois_map,
    grouplike_classes,
    induced_datum,
    induced_partial_comodule,
    invariants,
    partial_action_coring,
    partial_cohomology,
    require_partial_action,
    units_cohomology,
)

from conftest import (
    C2,
    F3xF3,
    F4,
    F9,
    I2,
    F2xF2,
    brute_elements,
    diag_algebra,
    frobenius_action,
    partial_action,
    swap_action,
    trivial_f3_action,
)

ACTIONS = {
    "swap": swap_action,
    "frobenius": frobenius_action,
    "partial": partial_action,
    "trivial_f3": trivial_f3_action,
    "swap_f3": lambda: swap_action(F3xF3),
    "frobenius_f9": lambda: PartialAction(C2, F9, [[1, 0], [1, 0]], [I2, [[1, 0], [0, 2]]], "frobenius_f9"),
}


def brute_invariants(pa):
    """Elements fixed by every alpha_s in the partial sense, by exhaustive search."""
    a = pa.algebra
    out = []
    for x in brute_elements(a.p, a.dim):
        if all(
            np.array_equal(x @ pa.alpha_full[s] % a.p, a.product(x, pa.idempotents[s]))
            for s in range(pa.group.order)
        ):
            out.append(x)
    return out


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_bundled_actions_are_valid(name):
    assert check_partial_action(ACTIONS[name]()) == []


def test_non_idempotent_is_reported():
    pa = PartialAction(C2, F4, [[1, 0], [0, 1]], [I2, I2])
    assert any("not idempotent" in s for s in check_partial_action(pa))


def test_non_multiplicative_alpha_is_reported():
    # a shear of F2 x F2 is bijective and additive but not multiplicative
    pa = PartialAction(C2, F2xF2, [[1, 1], [1, 1]], [I2, [[1, 1], [0, 1]]])
    problems = check_partial_action(pa)
    assert any("not multiplicative" in s for s in problems)
    with pytest.raises(AxiomError):
        require_partial_action(pa)


def test_non_involutive_alpha_breaks_cocycle_condition():
    c3 = cyclic_group(3)
    shift = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    a = diag_algebra(2, 3)
    eye = np.eye(3, dtype=np.int64)
    # alpha_2 should be the square of alpha_1; using alpha_1 again is wrong
    pa = PartialAction(c3, a, [[1, 1, 1]] * 3, [eye, shift, shift])
    assert any("cocycle condition" in s for s in check_partial_action(pa))


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_invariants_against_brute_force(name):
    pa = ACTIONS[name]()
    ag, incl = invariants(pa)
    span = {la.key(x) for x in la.AffineSubspace(pa.p, np.zeros(pa.algebra.dim, dtype=np.int64), incl).enumerate()}
    assert span == {la.key(x) for x in brute_invariants(pa)}


def test_invariant_dimensions():
    assert invariants(swap_action())[0].dim == 1
    assert invariants(frobenius_action())[0].dim == 1
    assert invariants(partial_action())[0].dim == 2


@pytest.mark.parametrize(
    "name, dims, bijective",
    [("swap", (4, 4), True), ("frobenius", (4, 4), True), ("partial", (2, 3), False), ("trivial_f3", (1, 2), False)],
)
def test_galois_map(name, dims, bijective):
    g = galois_map(ACTIONS[name]())
    assert (g.source_dim, g.target_dim) == dims
    assert g.bijective == bijective


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_coring_axioms_and_canonical_grouplike(name):
    pa = ACTIONS[name]()
    c = partial_action_coring(pa)
    assert c.dim == sum(la.rank(pa.algebra.right_mult(e), pa.p) for e in pa.idempotents)
    assert check_coring(c) == []
    assert c.is_grouplike(pa.canonical_grouplike)
    assert check_comodule(canonical_comodule(pa, c)) == []


def test_coring_dimensions():
    assert partial_action_coring(swap_action()).dim == 4
    assert partial_action_coring(frobenius_action()).dim == 4
    assert partial_action_coring(partial_action()).dim == 3


def test_frobenius_grouplikes_by_exhaustive_sweep():
    pa = frobenius_action()
    c = partial_action_coring(pa)
    brute = [x for x in brute_elements(2, 4) if c.is_grouplike(x)]
    assert len(brute) == len(grouplikes(c)) == 3
    # one orbit under u -> u^-1 g u (Hilbert 90)
    assert len(grouplike_classes(c)) == 1


def test_grouplike_classes_of_trivial_action():
    # H^1 = Hom(C2, F3^x) has two elements
    pa = trivial_f3_action()
    c = partial_action_coring(pa)
    classes = grouplike_classes(c, point=pa.canonical_grouplike)
    assert len(classes) == 2
    for g in grouplikes(c):
        for u in units(pa.algebra).elements:
            assert classes.class_of(grouplike_conjugation(c, g, u)) == classes.class_of(g)


# --- descent data ---------------------------------------------------------


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_datum_cocycle_roundtrip(name):
    pa = ACTIONS[name]()
    ag, _ = invariants(pa)
    m = induced_partial_comodule(pa, free_module(ag, 2 if pa.p == 2 else 1))
    for f in z1(m):
        d = cocycle_to_datum(pa, f, m.space)
        assert check_datum(pa, d) == []
        assert np.array_equal(datum_to_cocycle(pa, d, m.space), f)


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_induced_datum_matches_induced_coaction(name):
    pa = ACTIONS[name]()
    ag, _ = invariants(pa)
    n = free_module(ag, 2)
    d, _ = induced_datum(pa, n)
    m = induced_partial_comodule(pa, n)
    assert np.array_equal(datum_to_cocycle(pa, d, m.space), m.coaction)


def test_invalid_datum():
    pa = partial_action()
    m = canonical_comodule(pa)
    bad = PartialDescentDatum(m.module.forget_left(), (la.eye(2), la.eye(2)))
    assert any("does not land" in s for s in check_datum(pa, bad))
    with pytest.raises(InvalidDatum):
        datum_to_cocycle(pa, bad, m.space)


# --- partial Galois cohomology ----------------------------------------------


def test_swap_closed_forms():
    u = units_cohomology(swap_action())
    assert len(u.h0) == 1 and len(u.h1) == 1


def test_frobenius_closed_forms():
    u = units_cohomology(frobenius_action())
    assert [x.tolist() for x in u.h0] == [[1, 0]]
    assert len(u.h1) == 1 and u.grouplike_count == 3


@pytest.mark.parametrize(
    "name, h0, h1",
    [("swap", 1, 1), ("frobenius", 1, 1), ("partial", 1, 1), ("trivial_f3", 2, 2), ("swap_f3", 2, 1), ("frobenius_f9", 2, 1)],
)
def test_units_cohomology_matches_descent_cohomology(name, h0, h1):
    pa = ACTIONS[name]()
    ag, _ = invariants(pa)
    u = units_cohomology(pa)
    assert len(u.h0) == h0 == partial_cohomology(pa, free_module(ag, 1), 0).order
    assert len(u.h1) == h1 == len(partial_cohomology(pa, free_module(ag, 1), 1))
    assert sorted(u.h1_matching) == list(range(h1))


def test_h0_is_units_of_invariants():
    # partial example: A^G = A = F2 x F2 has one unit
    pa = partial_action()
    ag, _ = invariants(pa)
    assert units(ag).order == 1 == len(units_cohomology(pa).h0)


def test_cohomology_index_out_of_range():
    pa = swap_action()
    ag, _ = invariants(pa)
    with pytest.raises(ValueError):
        partial_cohomology(pa, free_module(ag, 1), 2)
