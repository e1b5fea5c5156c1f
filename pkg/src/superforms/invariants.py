"""Invariant forms: products of ``g_j`` and ``dg_j`` and their independence."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .forms import Bidegree, SuperForm, wedge_mul
from .group import orbit_table
from .linalg import guard, rank
from .parallel import map_cells
from .report import Report
from .symfunc import BigradedSeries, default_cutoff, generators, invariant_hilbert_closed, vandermonde

__all__ = [
    "invariant_monomials",
    "invariant_dimension",
    "verify_free_generation",
    "jacobian_identity_check",
]


@lru_cache(maxsize=None)
def _poly_product(n: int, family: str, a: tuple[int, ...]) -> SuperForm:
    """``prod_j g_j^{a_j}``, built from the product with one factor fewer."""
    for j, e in enumerate(a):
        if e:
            smaller = a[:j] + (e - 1,) + a[j + 1:]
            return wedge_mul(_poly_product(n, family, smaller), generators(n, family)[j][0])
    return SuperForm.constant(n)


@lru_cache(maxsize=None)
def _dg_wedge(n: int, family: str, subset: tuple[int, ...]) -> SuperForm:
    out = SuperForm.constant(n)
    for i in subset:
        out = wedge_mul(out, generators(n, family)[i - 1][1])
    return out


def _weighted_exponents(total: int, n: int):
    """Exponent vectors ``a`` with ``sum_j j * a_j = total``."""
    def rec(j, left):
        if j > n:
            if left == 0:
                yield ()
            return
        for a in range(left // j + 1):
            for rest in rec(j + 1, left - a * j):
                yield (a,) + rest

    yield from rec(1, total)


def _specs(n: int, d):
    """``(subset, a)`` labels of the invariant monomials of bidegree ``d``."""
    l, k = Bidegree(*d)
    if l < 0 or not 0 <= k <= n:
        return
    for subset in combinations(range(1, n + 1), k):
        rest = l - sum(i - 1 for i in subset)
        if rest < 0:
            continue
        for a in _weighted_exponents(rest, n):
            yield subset, a


def invariant_monomials(n: int, d, family: str = "p") -> list[SuperForm]:
    """``prod g_j^{a_j} * dg_{i_1} ^ ... ^ dg_{i_k}`` of bidegree ``d``.

    Generator ``g_j`` has degree ``j`` and ``dg_j`` bidegree ``(j - 1, 1)``.
    """
    return [
        wedge_mul(_poly_product(n, family, a), _dg_wedge(n, family, subset)) for subset, a in _specs(n, d)
    ]


def _orbit_representatives(n: int, d) -> list:
    """First monomial of every orbit that survives the invariant projection."""
    reps: dict = {}
    for mon, (oid, _) in orbit_table(n, tuple(d), "invariant").items():
        reps.setdefault(oid, mon)
    return [reps[i] for i in sorted(reps)]


def _rep_coefficients(n: int, family: str, subset, a, reps) -> dict:
    """Coefficients of ``prod g^a * dg_subset`` at the given monomials, without the full product."""
    poly = _poly_product(n, family, a).terms
    wedge = _dg_wedge(n, family, subset).terms
    by_mask: dict = {}
    for (e2, m2), c2 in wedge.items():
        by_mask.setdefault(m2, []).append((e2, c2))
    out = {}
    for i, (e, m) in enumerate(reps):
        total = 0
        for e2, c2 in by_mask.get(m, ()):
            rest = tuple(x - y for x, y in zip(e, e2))
            if min(rest) < 0:
                continue
            c1 = poly.get((rest, 0))
            if c1:
                total += c1 * c2
        if total:
            out[i] = total
    return out


def invariant_dimension(n: int, d) -> int:
    """Dimension of the invariant part of ``Omega^{l,k}``.

    The projection of a monomial is a multiple of the sum over its orbit (zero
    when its stabiliser acts by a sign), so the rank of all projections is
    the number of orbits that survive.
    """
    d = Bidegree(*d)
    guard(n, d)
    return len({oid for oid, _ in orbit_table(n, tuple(d), "invariant").values()})


def _free_generation_job(n: int, l: int, k: int, family: str) -> tuple[int, int, int]:
    d = (l, k)
    guard(n, d)
    specs = list(_specs(n, d))
    # an invariant form is determined by its coefficients on one monomial
    # per surviving orbit, so the rank can be read there
    reps = _orbit_representatives(n, d)
    r = rank([_rep_coefficients(n, family, s, a, reps) for s, a in specs]) if specs else 0
    return len(specs), r, len(reps)


def verify_free_generation(
    n: int, cutoff: int | None = None, family: str = "p", workers: int | None = None
) -> Report:
    """Invariant monomials are independent and span the invariants, cell by cell."""
    cutoff = default_cutoff(n) if cutoff is None else cutoff
    rep = Report("free-generation", n)
    closed = invariant_hilbert_closed(n, cutoff)
    cells = [(n, l, k, family) for k in range(n + 1) for l in range(cutoff + 1)]
    counted = {}
    for (_, l, k, _), (count, r, inv) in zip(cells, map_cells(_free_generation_job, cells, workers)):
        want = closed[(l, k)]
        counted[(l, k)] = inv
        rep.add([l, k], expected=want, got=inv, ok=count == r == inv == want, count=count, rank=r)
    got = BigradedSeries(counted, cutoff)
    rep.add("series", expected=str(closed), got=str(got), ok=got == closed)
    return rep


def jacobian_identity_check(n: int) -> Report:
    """``dp_1 ^ ... ^ dp_n = c * Delta * dx_1 ^ ... ^ dx_n`` with ``|c| = n!``."""
    rep = Report("jacobian", n)
    wedge = SuperForm.constant(n)
    for _, dg in generators(n, "p"):
        wedge = wedge_mul(wedge, dg)
    top = SuperForm.dx(n, *range(1, n + 1))
    target = wedge_mul(vandermonde(n), top)
    ratio = None
    proportional = bool(target)
    for key, c in target.items():
        r = Fraction(wedge.terms.get(key, 0), c)
        if ratio is None:
            ratio = r
        elif r != ratio:
            proportional = False
            break
    proportional = proportional and set(wedge.terms) == set(target.terms)
    value = ratio if ratio is not None else Fraction(0)
    ok = proportional and abs(value) == factorial(n)
    sign = (value > 0) - (value < 0)
    rep.add("ratio", expected=factorial(n), got=abs(value), ok=ok, sign=sign, proportional=proportional)
    return rep
