import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coringdescent import exactla as la
from coringdescent.algmod import right_unitor, units
from coringdescent.coring import (
    Coring,
    check_coring,
    coaction_from_grouplike,
    grouplike_conjugation,
    grouplikes,
    sweedler_coring,
    sweedler_unit,
    trivial_coring,
)
from coringdescent.errors import NotAUnit, NotGrouplike
from coringdescent.partial import partial_action_coring

from conftest import F2, F3, F4, F9, T2, F2xF2, brute_elements, swap_action

SWEEDLER = [(F2, F4, [[1, 0]]), (F2, F2xF2, [[1, 1]]), (F2, T2, [[1, 0, 1]]), (F3, F9, [[1, 0]])]


def keys(xs):
    return sorted(la.key(x) for x in xs)


@pytest.mark.parametrize("a", [F2, F4, T2, F9], ids=lambda a: a.name)
def test_trivial_coring(a):
    c = trivial_coring(a)
    assert c.dim == a.dim
    assert check_coring(c) == []
    assert keys(grouplikes(c)) == keys([a.one])


@pytest.mark.parametrize("b, a, phi", SWEEDLER, ids=lambda x: getattr(x, "name", ""))
def test_sweedler_coring_is_valid(b, a, phi):
    c = sweedler_coring(b, a, np.array(phi))
    assert c.dim == a.dim**2
    assert check_coring(c) == []
    assert c.is_grouplike(sweedler_unit(c))


def test_sweedler_of_identity_is_trivial():
    c = sweedler_coring(F2, F2, np.array([[1]]))
    assert c.dim == 1 and check_coring(c) == []


@pytest.mark.parametrize("b, a, phi", SWEEDLER, ids=lambda x: getattr(x, "name", ""))
def test_sweedler_grouplikes_are_unit_conjugates(b, a, phi):
    # over a field base every grouplike of A (x) A is u^-1 (x) u
    c = sweedler_coring(b, a, np.array(phi))
    expected = {la.key(c.presentation.pure(a.inverse(u), u)) for u in units(a).elements}
    assert set(keys(grouplikes(c))) == expected


def test_sweedler_f4_grouplike_count():
    c = sweedler_coring(F2, F4, np.array([[1, 0]]))
    gs = grouplikes(c)
    assert len(gs) == 3
    # exhaustive sweep of all 16 elements, without the counit pruning
    assert sum(c.is_grouplike(x) for x in brute_elements(2, 4)) == 3
    assert la.key(sweedler_unit(c)) in set(keys(gs))


def test_flipped_coproduct_entry_breaks_coassociativity():
    c = sweedler_coring(F2, F4, np.array([[1, 0]]))
    delta = c.coproduct.copy()
    delta[1, 0] ^= 1
    broken = Coring(c.algebra, c.bimodule, delta, c.counit, "broken")
    problems = check_coring(broken)
    assert any("coassociativity" in s for s in problems)


def test_grouplike_sweep_respects_jobs():
    c = sweedler_coring(F2, T2, np.array([[1, 0, 1]]))
    one = [x.tolist() for x in grouplikes(c, jobs=1)]
    four = [x.tolist() for x in grouplikes(c, jobs=4)]
    assert one == four and len(one) == 2


def test_partial_coring_contains_canonical_grouplike():
    pa = swap_action()
    c = partial_action_coring(pa)
    assert la.key(pa.canonical_grouplike) in set(keys(grouplikes(c)))


def test_conjugation_on_trivial_coring():
    c = trivial_coring(F4)
    for u in units(F4).elements:
        assert np.array_equal(grouplike_conjugation(c, F4.one, u), F4.one)
    with pytest.raises(NotAUnit):
        grouplike_conjugation(c, F4.one, np.zeros(2, dtype=np.int64))


@given(st.sampled_from(SWEEDLER), st.data())
@settings(max_examples=25, deadline=None)
def test_conjugation_preserves_grouplikes(case, data):
    b, a, phi = case
    c = sweedler_coring(b, a, np.array(phi))
    gs = grouplikes(c)
    us = units(a).elements
    g = gs[data.draw(st.integers(0, len(gs) - 1))]
    u = us[data.draw(st.integers(0, len(us) - 1))]
    v = us[data.draw(st.integers(0, len(us) - 1))]
    h = grouplike_conjugation(c, g, u)
    assert c.is_grouplike(h)
    # right action: (g . u) . v = g . (u v)
    assert np.array_equal(grouplike_conjugation(c, h, v), grouplike_conjugation(c, g, a.product(u, v)))


def test_coaction_from_unit_of_trivial_coring_is_identity():
    m = coaction_from_grouplike(trivial_coring(T2), T2.one)
    # under A (x)_A A = A the coaction is the identity map
    assert np.array_equal(m.coaction @ right_unitor(m.space.mc) % 2, la.eye(3))


def test_coaction_needs_grouplike():
    c = trivial_coring(F4)
    with pytest.raises(NotGrouplike):
        coaction_from_grouplike(c, np.array([0, 1]))
