from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superforms.forms import SuperForm, component_dimension
from superforms.group import Permutation, act
from superforms.linalg import (
    Echelon,
    ResourceLimitError,
    _nullspace_exact,
    component_cap,
    guard,
    independent_mod_p,
    kernel,
    nullspace,
    rank,
    rank_mod_p,
    set_component_cap,
    span,
)
from superforms.operators import OperatorTag

X = SuperForm.x
DX = SuperForm.dx


def _naive_rank(rows, ncols):
    # dense Fraction Gauss-Jordan, independent of the sparse code
    m = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def test_span_examples():
    n = 2
    assert span([X(n, 1) - X(n, 2), (X(n, 2) - X(n, 1)).scale(2)]).rank == 1
    assert span([DX(n, 1), DX(n, 2)]).rank == 2
    s = Permutation.transposition(n, 1, 2)
    f = X(n, 1) * DX(n, 2)
    forms = [act(Permutation.identity(n), f), act(s, f), f, X(n, 2) * DX(n, 1)]
    assert span(forms).rank == 2


def test_span_is_reduced_echelon():
    basis = span([X(2, 1) + X(2, 2), X(2, 1) - X(2, 2)])
    assert basis.rank == 2
    for row, piv in zip(basis.rows, basis.pivots):
        assert row.terms[piv] == 1
        for other in basis.rows:
            if other is not row:
                assert piv not in other.terms


def test_span_rejects_mixed_bidegrees():
    with pytest.raises(ValueError):
        span([X(2, 1), DX(2, 1)])


def test_kernel_examples():
    k = kernel([OperatorTag("D", 1), OperatorTag("D", 2)], 2, (1, 0))
    assert k.rank == 1 and k.contains(X(2, 1) - X(2, 2))
    k = kernel([OperatorTag("delta", 0)], 2, (0, 1))
    assert k.rank == 1 and k.contains(DX(2, 1) - DX(2, 2))
    assert kernel([], 2, (2, 1)).rank == component_dimension(2, (2, 1))


def test_kernel_within_subspace():
    within = span([X(3, 1) - X(3, 2), X(3, 1) + X(3, 2) + X(3, 3)])
    k = kernel([OperatorTag("D", 1)], 3, (1, 0), within=within)
    assert k.rank == 1 and k.contains(X(3, 1) - X(3, 2))


def test_contains_examples():
    s = span([X(2, 1) - X(2, 2)])
    assert s.contains(X(2, 2) - X(2, 1))
    assert not s.contains(X(2, 1))
    with pytest.raises(ValueError):
        s.contains(DX(2, 1))


def test_coordinates_in_subspace():
    s = span([X(2, 1) + X(2, 2), X(2, 1) - X(2, 2)])
    f = X(2, 1).scale(3) + X(2, 2)
    coeffs = s.coordinates(f)
    rebuilt = sum((r.scale(c) for r, c in zip(s.rows, coeffs)), SuperForm.zero(2))
    assert rebuilt == f


def test_resource_guard():
    old = component_cap()
    try:
        set_component_cap(10)
        with pytest.raises(ResourceLimitError):
            guard(3, (3, 1))
        guard(2, (1, 1))
    finally:
        set_component_cap(old)


_vectors = st.lists(
    st.dictionaries(st.integers(0, 6), st.integers(-4, 4).filter(bool), max_size=5),
    max_size=9,
)


@settings(max_examples=120, deadline=None)
@given(_vectors)
def test_rank_matches_dense_oracle(rows):
    expected = _naive_rank(rows, 7)
    assert rank(rows) == expected
    assert Echelon().extend(rows).rank == expected
    assert rank_mod_p(rows) == expected


@settings(max_examples=80, deadline=None)
@given(_vectors)
def test_nullspace_shortcut_matches_full_elimination(rows):
    got = nullspace(rows, 7)
    assert got == _nullspace_exact([r for r in rows if r], 7)
    for v in got:
        for r in rows:
            assert sum(c * v.get(j, 0) for j, c in r.items()) == 0
    assert len(got) + _naive_rank(rows, 7) == 7


@settings(max_examples=60, deadline=None)
@given(_vectors)
def test_independent_rows_mod_p(rows):
    keep = independent_mod_p(rows)
    assert len(keep) == _naive_rank(rows, 7)
    assert _naive_rank([rows[i] for i in keep], 7) == len(keep)


def test_rref_unique_for_row_space():
    a = Echelon().extend([{0: 2, 1: 4}, {1: 3, 2: 1}]).rref()
    b = Echelon().extend([{0: 2, 1: 7, 2: 1}, {0: 4, 1: 8}]).rref()
    assert a == b
