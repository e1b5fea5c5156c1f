from fractions import Fraction
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from superforms.forms import (
    SuperForm,
    bidegree_component,
    component_dimension,
    homogeneous_components,
    indices_mask,
    mask_indices,
    monomial_basis,
    normalize_wedge,
    parse,
    render,
    wedge_mul,
    wedge_sign,
)

N = 3
x = lambda i, p=1: SuperForm.x(N, i, p)  # noqa: E731
dx = lambda *i: SuperForm.dx(N, *i)  # noqa: E731


def _perm_sign(seq):
    # brute-force inversion count
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


@pytest.mark.parametrize(
    "indices, expected",
    [((2, 1), (indices_mask((1, 2)), -1)), ((1, 2, 3), (indices_mask((1, 2, 3)), 1)), ((3, 1, 2), (indices_mask((1, 2, 3)), 1))],
)
def test_normalize_wedge_examples(indices, expected):
    assert normalize_wedge(indices) == expected


def test_normalize_wedge_repeat_and_range():
    assert normalize_wedge((1, 1))[0] is None
    with pytest.raises(ValueError):
        normalize_wedge((1, 4), n=3)


@pytest.mark.parametrize("seq", list(permutations((1, 2, 3, 4))))
def test_normalize_wedge_matches_inversion_parity(seq):
    assert normalize_wedge(seq)[1] == _perm_sign(seq)


def test_mask_roundtrip():
    for mask in range(64):
        assert indices_mask(mask_indices(mask)) == mask


def test_wedge_sign_koszul():
    a, b = indices_mask((2,)), indices_mask((1,))
    assert wedge_sign(a, b) == -1
    assert wedge_sign(b, a) == 1
    assert wedge_sign(a, a) == 0


def test_wedge_examples():
    n = 2
    d1, d2 = SuperForm.dx(n, 1), SuperForm.dx(n, 2)
    assert d1 * d2 == SuperForm.dx(n, 1, 2)
    assert d2 * d1 == -SuperForm.dx(n, 1, 2)
    a = SuperForm.x(n, 1) * d1
    b = SuperForm.x(n, 2) * d2
    assert a * b == SuperForm.monomial(n, (1, 1), (1, 2))
    assert not dx(1) * (x(3) * dx(1))


def test_wedge_mismatched_n():
    with pytest.raises(ValueError):
        SuperForm.x(2, 1) * SuperForm.x(3, 1)


def test_components():
    f = x(1) + dx(1)
    assert bidegree_component(f, (1, 0)) == x(1)
    assert not bidegree_component(x(1), (5, 0))
    g = x(1, 2) * dx(2) + x(1) * x(2) * dx(2)
    assert bidegree_component(g, (2, 1)) == g
    parts = homogeneous_components(f)
    assert set(parts) == {(1, 0), (0, 1)}


def test_monomial_basis_examples():
    assert [m for m in monomial_basis(2, (0, 1))] == [((0, 0), 1), ((0, 0), 2)]
    assert len(monomial_basis(2, (1, 0))) == 2
    assert {e for e, _ in monomial_basis(2, (1, 0))} == {(1, 0), (0, 1)}
    assert len(monomial_basis(3, (2, 2))) == 18


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("d", [(0, 0), (2, 1), (3, 2), (4, 4)])
def test_component_dimension_stars_and_bars(n, d):
    l, k = d
    expected = comb(l + n - 1, n - 1) * comb(n, k)
    assert component_dimension(n, d) == len(monomial_basis(n, d)) == expected


def test_basis_order_is_canonical():
    basis = monomial_basis(2, (2, 1))
    masks = [m for _, m in basis]
    assert masks == sorted(masks)
    assert basis[0] == ((2, 0), 1)


def test_render_parse_example():
    f = x(1) - x(2)
    assert render(f) == "1 * x1 + -1 * x2"
    assert parse(render(f), N) == f
    assert render(SuperForm.zero(N)) == "0"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse("1 * y1", 2)
    with pytest.raises(ValueError):
        parse("1 * x3", 2)


def test_fraction_coefficients_normalised():
    f = SuperForm.x(2, 1).scale(Fraction(4, 2))
    (c,) = f.terms.values()
    assert c == 2 and isinstance(c, int)


# -- properties ---------------------------------------------------------------

def _forms(n):
    term = st.tuples(
        st.tuples(*[st.integers(0, 2)] * n),
        st.integers(0, (1 << n) - 1),
        st.integers(-3, 3),
    )
    return st.lists(term, max_size=4).map(
        lambda ts: sum((SuperForm.monomial(n, e, mask_indices(m), c) for e, m, c in ts), SuperForm.zero(n))
    )


def _of_form_degree(f, k):
    return sum((part for d, part in homogeneous_components(f).items() if d[1] == k), SuperForm.zero(f.n))


@settings(max_examples=60, deadline=None)
@given(_forms(3), _forms(3), _forms(3))
def test_wedge_associative(a, b, c):
    assert wedge_mul(wedge_mul(a, b), c) == wedge_mul(a, wedge_mul(b, c))


@settings(max_examples=60, deadline=None)
@given(_forms(3), _forms(3), _forms(3))
def test_wedge_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(_forms(3), _forms(3), st.integers(0, 3), st.integers(0, 3))
def test_super_commutative(f, g, ka, kb):
    a, b = _of_form_degree(f, ka), _of_form_degree(g, kb)
    assert a * b == (b * a).scale((-1) ** (ka * kb))


@settings(max_examples=80, deadline=None)
@given(_forms(3))
def test_render_parse_roundtrip(f):
    assert parse(render(f), 3) == f
