"""Partial derivatives of complete homogeneous polynomials, window memberships.

The quotient of ``C[x_1..x_n]`` by ``(d_1 h_k, ..., d_n h_k)`` is computed
degree by degree; its Hilbert series being the finite polynomial
``(1 + q + ... + q^{k-2})^n`` is the regular-sequence statement.
"""

from __future__ import annotations

from .forms import SuperForm, compositions, monomial_basis, wedge_mul
from .harmonics import _generic_echelon, in_ideal
from .linalg import Echelon, coordinates
from .operators import partial
from .report import Report
from .symfunc import BigradedSeries, complete_h

__all__ = [
    "partial_h_generators",
    "partial_h_quotient_series",
    "partial_h_closed",
    "verify_partial_h",
    "common_zero_witness",
    "window",
    "verify_h_window_membership",
    "verify_window_ideal_membership",
    "window_membership_degree",
    "regseq_cases",
    "verify_regseq",
]


def partial_h_generators(n: int, k: int) -> list[SuperForm]:
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    h = complete_h(k, n)
    return [partial(h, i) for i in range(1, n + 1)]


def _quotient_dim(n: int, gens: list[SuperForm], gdeg: int, d: int) -> int:
    total = len(monomial_basis(n, (d, 0)))
    if d < gdeg:
        return total
    ech = Echelon()
    for g in gens:
        for mon in monomial_basis(n, (d - gdeg, 0)):
            ech.add(coordinates(wedge_mul(SuperForm._raw(n, {mon: 1}), g), (d, 0)))
    return total - ech.rank


def partial_h_quotient_series(n: int, k: int, cutoff: int | None = None) -> BigradedSeries:
    """Per-degree dimensions of ``C[x] / (d_i h_k)`` up to ``q^cutoff``.

    The default cutoff is one past the expected top degree ``n(k-2)``.
    """
    gens = partial_h_generators(n, k)
    cutoff = n * (k - 2) + 1 if cutoff is None else cutoff
    return BigradedSeries({(d, 0): _quotient_dim(n, gens, k - 1, d) for d in range(cutoff + 1)}, cutoff)


def partial_h_closed(n: int, k: int, cutoff: int | None = None) -> BigradedSeries:
    """``(1 + q + ... + q^{k-2})^n``."""
    base = BigradedSeries({(a, 0): 1 for a in range(k - 1)})
    out = BigradedSeries.one()
    for _ in range(n):
        out = out * base
    return out if cutoff is None else out.truncate(cutoff)


def common_zero_witness(n: int, k: int) -> Report:
    """Finite-dimensional quotient, i.e. no common zero away from the origin.

    Vanishing in one degree ``D`` forces vanishing in every degree above it
    (``R_{D+1} = R_1 R_D``), so the series computed one step past ``n(k-2)``
    is the whole series.
    """
    top = n * (k - 2)
    series = partial_h_quotient_series(n, k, top + 1)
    nonzero = [a for (a, _), c in series.coeffs.items() if c]
    top_seen = max(nonzero, default=-1)
    finite = series[(top + 1, 0)] == 0
    rep = Report("common-zero", n)
    rep.add({"k": k}, expected={"finite": True, "top_degree": top}, got={"finite": finite, "top_degree": top_seen},
            ok=finite and top_seen == top)
    return rep


def verify_partial_h(n: int, k: int) -> Report:
    rep = Report("partial-h-series", n)
    top = n * (k - 2)
    series = partial_h_quotient_series(n, k, top + 1)
    closed = partial_h_closed(n, k, top + 1)
    rep.add({"k": k}, expected=str(closed), got=str(series), ok=series == closed,
            first_difference=series.first_difference(closed))
    # sum_i d_i h_k = (k + n - 1) h_{k-1}
    total = SuperForm.zero(n)
    for g in partial_h_generators(n, k):
        total = total + g
    want = complete_h(k - 1, n).scale(k + n - 1)
    rep.add({"k": k, "identity": "sum of partials"}, expected=str(want), got=str(total), ok=total == want)
    rep.extend(common_zero_witness(n, k))
    return rep


def window(n: int, r: int) -> tuple[int, ...]:
    return tuple(range(r, n + 1))


def verify_h_window_membership(n: int, r: int) -> Report:
    """``h_r(x_r, ..., x_n)`` lies in the ideal of positive-degree symmetric polynomials."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    h = complete_h(r, n, window(n, r))
    ech = _generic_echelon(n, r, "p")
    ok = ech.contains(coordinates(h, (r, 0)))
    rep = Report("h-window", n)
    rep.add({"r": r}, expected=True, got=ok, ok=ok)
    # the window identity: sum_{i in window} d_i h_r = (r + m - 1) h_{r-1}, m = window size
    m = n - r + 1
    total = SuperForm.zero(n)
    for i in window(n, r):
        total = total + partial(h, i)
    want = complete_h(r - 1, n, window(n, r)).scale(r + m - 1)
    rep.add({"r": r, "identity": "sum of partials"}, expected=str(want), got=str(total), ok=total == want)
    return rep


def window_membership_degree(n: int, r: int) -> int:
    """Smallest degree above ``(r-2)(n-r+1)``."""
    return (r - 2) * (n - r + 1) + 1


def verify_window_ideal_membership(n: int, r: int) -> Report:
    """Window memberships in ``I`` multiplied by ``dx_r ^ ... ^ dx_n``."""
    if not 2 <= r <= n:
        raise ValueError(f"need 2 <= r <= n, got r={r}, n={n}")
    if n > 5:
        raise ValueError("window memberships are limited to n <= 5")
    rep = Report("window-ideal", n)
    win = window(n, r)
    top = SuperForm.dx(n, *win)
    h = complete_h(r, n, win)
    for i in win:
        f = wedge_mul(partial(h, i), top)
        ok = in_ideal(f)
        rep.add({"r": r, "partial": i}, expected=True, got=ok, ok=ok)
    deg = window_membership_degree(n, r)
    for exps in _window_exponents(n, win, deg):
        f = SuperForm.monomial(n, exps, win)
        ok = in_ideal(f)
        rep.add({"r": r, "monomial": list(exps)}, expected=True, got=ok, ok=ok)
    return rep


def _window_exponents(n: int, win: tuple[int, ...], deg: int):
    for comp in compositions(deg, len(win)):
        exps = [0] * n
        for i, e in zip(win, comp):
            exps[i - 1] = e
        yield tuple(exps)


def regseq_cases() -> list[tuple[int, int]]:
    return [(1, k) for k in range(2, 7)] + [(2, k) for k in range(2, 6)] + [(3, k) for k in range(2, 5)]


def verify_regseq(n: int) -> Report:
    """Everything in this module that applies to one ``n``."""
    rep = Report("regseq", n)
    for m, k in regseq_cases():
        if m == n:
            rep.extend(verify_partial_h(n, k))
    if not any(m == n for m, _ in regseq_cases()):
        for k in range(2, 4):
            rep.extend(verify_partial_h(n, k))
    for r in range(1, n + 1):
        rep.extend(verify_h_window_membership(n, r))
    if n <= 5:
        for r in range(2, n + 1):
            rep.extend(verify_window_ideal_membership(n, r))
    return rep

