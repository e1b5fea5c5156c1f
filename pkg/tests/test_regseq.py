import pytest

from superforms.forms import SuperForm
from superforms.harmonics import in_ideal
from superforms.regseq import (
    common_zero_witness,
    window_membership_degree,
    partial_h_closed,
    partial_h_generators,
    partial_h_quotient_series,
    regseq_cases,
    verify_h_window_membership,
    verify_window_ideal_membership,
    verify_partial_h,
    verify_regseq,
)
from superforms.symfunc import BigradedSeries, complete_h


def test_partial_h_generators_n2_k2():
    g = partial_h_generators(2, 2)
    x1, x2 = SuperForm.x(2, 1), SuperForm.x(2, 2)
    assert g == [x1.scale(2) + x2, x1 + x2.scale(2)]


def test_series_examples():
    assert str(partial_h_quotient_series(2, 2)) == "1"
    assert str(partial_h_quotient_series(2, 3)) == "q^2 + 2 q + 1"
    assert partial_h_quotient_series(2, 4) == partial_h_closed(2, 4)
    assert str(partial_h_closed(2, 4)) == "q^4 + 2 q^3 + 3 q^2 + 2 q + 1"
    for k in range(2, 7):
        assert partial_h_quotient_series(1, k) == BigradedSeries({(a, 0): 1 for a in range(k - 1)}, k - 1)


@pytest.mark.parametrize("n, k", regseq_cases())
def test_regular_sequence_series(n, k):
    rep = verify_partial_h(n, k)
    assert rep.passed, rep.failures


def _top(rep):
    (cell,) = [c for c in rep.cells]
    return cell["got"]


def test_common_zero_examples():
    assert _top(common_zero_witness(2, 3)) == {"finite": True, "top_degree": 2}
    assert _top(common_zero_witness(3, 2)) == {"finite": True, "top_degree": 0}
    assert _top(common_zero_witness(2, 4)) == {"finite": True, "top_degree": 4}


def test_window_membership_examples():
    assert verify_h_window_membership(2, 2).passed
    assert complete_h(2, 2, (2,)) == SuperForm.x(2, 2, 2)
    assert verify_h_window_membership(3, 1).passed
    assert verify_h_window_membership(3, 3).passed
    with pytest.raises(ValueError):
        verify_h_window_membership(3, 4)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_window_membership_all_r(n):
    for r in range(1, n + 1):
        assert verify_h_window_membership(n, r).passed


def test_window_ideal_examples():
    assert window_membership_degree(3, 2) == 1
    assert window_membership_degree(3, 3) == 2
    assert in_ideal(SuperForm.monomial(3, (0, 1, 0), (2, 3)))
    assert in_ideal(SuperForm.monomial(3, (0, 0, 2), (3,)))
    assert in_ideal(SuperForm.monomial(2, (0, 1), (2,)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_window_ideal_all_r(n):
    for r in range(2, n + 1):
        rep = verify_window_ideal_membership(n, r)
        assert rep.passed, rep.failures


def test_window_ideal_rejects_bad_window():
    with pytest.raises(ValueError):
        verify_window_ideal_membership(3, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_verify_regseq(n):
    assert verify_regseq(n).passed
