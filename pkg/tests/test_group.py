from fractions import Fraction
from math import factorial

import pytest

from superforms.forms import SuperForm, monomial_basis, monomial_form
from superforms.group import (
    Permutation,
    act,
    all_permutations,
    conjugacy_classes,
    is_alternant,
    is_invariant,
    isotypic_coordinates,
    orbit_table,
    project_isotypic,
)
from superforms.linalg import rank, span
from superforms.symfunc import power_sum, vandermonde


def test_transposition_on_monomials():
    n = 2
    s = Permutation.transposition(n, 1, 2)
    assert act(s, SuperForm.x(n, 1) * SuperForm.dx(n, 2)) == SuperForm.x(n, 2) * SuperForm.dx(n, 1)
    assert act(s, SuperForm.dx(n, 1, 2)) == -SuperForm.dx(n, 1, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_vandermonde_alternates(n):
    delta = vandermonde(n)
    for s in all_permutations(n):
        assert act(s, delta) == delta.scale(s.sign)


def test_action_is_a_homomorphism():
    n = 3
    f = SuperForm.x(n, 1, 2) * SuperForm.dx(n, 2) + SuperForm.x(n, 3) * SuperForm.dx(n, 1, 3)
    perms = list(all_permutations(n))
    for s in perms:
        for t in perms:
            assert act(s, act(t, f)) == act(s * t, f)


def test_action_respects_wedge():
    n = 3
    a = SuperForm.x(n, 1) * SuperForm.dx(n, 2)
    b = SuperForm.x(n, 2, 2) * SuperForm.dx(n, 1) + SuperForm.dx(n, 3)
    for s in all_permutations(n):
        assert act(s, a * b) == act(s, a) * act(s, b)


def test_projection_examples():
    n = 2
    x1, x2 = SuperForm.x(n, 1), SuperForm.x(n, 2)
    assert project_isotypic(x1, "invariant") == (x1 + x2).scale(Fraction(1, 2))
    assert project_isotypic(x1, "sign") == (x1 - x2).scale(Fraction(1, 2))
    assert project_isotypic(SuperForm.dx(n, 1, 2), "sign") == SuperForm.dx(n, 1, 2)
    with pytest.raises(ValueError):
        project_isotypic(x1, "hook")


def test_projection_idempotent():
    n = 3
    f = SuperForm.x(n, 1, 2) * SuperForm.dx(n, 2) + SuperForm.x(n, 3) * SuperForm.dx(n, 1)
    for mode in ("invariant", "sign"):
        p = project_isotypic(f, mode)
        assert project_isotypic(p, mode) == p


def test_invariance_predicates():
    assert is_invariant(power_sum(2, 2))
    assert is_alternant(vandermonde(3))
    assert not is_invariant(SuperForm.x(2, 1))


@pytest.mark.parametrize(
    "n, expected",
    [
        (2, {(1, 1): 1, (2,): 1}),
        (3, {(1, 1, 1): 1, (2, 1): 3, (3,): 2}),
    ],
)
def test_conjugacy_classes_small(n, expected):
    got = {tuple(sorted(c, reverse=True)): size for c, size, _ in conjugacy_classes(n)}
    assert got == expected


def test_conjugacy_classes_s4_by_enumeration():
    counted: dict = {}
    for s in all_permutations(4):
        counted[s.cycle_type()] = counted.get(s.cycle_type(), 0) + 1
    classes = conjugacy_classes(4)
    assert len(classes) == 5
    assert sorted(size for _, size, _ in classes) == sorted([1, 6, 3, 8, 6])
    for c, size, rep in classes:
        assert counted[c] == size
        assert rep.cycle_type() == c
    assert sum(size for _, size, _ in classes) == factorial(4)


@pytest.mark.parametrize("n, d", [(2, (2, 1)), (3, (1, 1)), (3, (2, 2)), (3, (3, 0))])
@pytest.mark.parametrize("mode", ["invariant", "sign"])
def test_orbit_table_matches_literal_projection(n, d, mode):
    # dimension of the isotypic part: rank of all projected monomials
    projected = [project_isotypic(monomial_form(n, m), mode) for m in monomial_basis(n, d)]
    literal = span(projected, n, d).rank
    fast = len({oid for oid, _ in orbit_table(n, d, mode).values()})
    assert fast == literal
    for f in projected[:6]:
        coords = isotypic_coordinates(f, d, mode)
        assert bool(coords) == bool(f)
    assert rank([isotypic_coordinates(monomial_form(n, m), d, mode) for m in monomial_basis(n, d)]) == literal
