"""The ideal generated by positive-degree invariants, harmonic forms, and alternants.

Two independent descriptions of the quotient ``Omega_n / I`` live here:

* the ideal side: ``I`` is generated by ``p_1..p_n, dp_1..dp_n``; its
  ``(l, k)`` component is ``J_l (x) Lambda^k + sum_j dp_j ^ Omega`` where ``J``
  is the polynomial ideal of the ``p_j``.  Working modulo ``J_l (x) Lambda^k``
  (by exact row reduction of ``J_l``) leaves a small quotient in which the
  ``dp_j`` part is eliminated.
* the operator side: joint kernel of ``D_1..D_n`` and ``delta_0..delta_{n-1}``.
  The ``D`` conditions act coefficient-wise, so the kernel is computed inside
  ``H^r (x) Lambda^s`` with ``H^r`` the harmonic polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod

from .forms import (
    Bidegree,
    SuperForm,
    _clean,
    basis_index,
    component_dimension,
    indices_mask,
    monomial_basis,
    popcount,
    wedge_masks,
    wedge_mul,
)
from .group import is_alternant, isotypic_coordinates
from .linalg import (
    Echelon,
    SubspaceBasis,
    coordinates,
    form_from_vector,
    guard,
    kernel,
    nullspace,
    rank,
    span,
)
from .operators import OperatorTag, op_D, op_d, op_delta
from .parallel import map_cells
from .report import Report
from .symfunc import BigradedSeries, alternant_hilbert_closed, generators, vandermonde

__all__ = [
    "vandermonde",
    "hook_sets",
    "omega",
    "complement_map",
    "designated_coefficient_check",
    "harmonic_poly_space",
    "harmonic_poly_space_apolar",
    "ideal_component",
    "IdealQuotient",
    "ideal_quotient",
    "ideal_dimension",
    "in_ideal",
    "HarmonicSpace",
    "harmonic_space",
    "quotient_hilbert",
    "verify_complementarity",
    "verify_alternant_series",
    "verify_degree_bound",
    "verify_top_degree",
]


# -- the alternant family ----------------------------------------------------

def _check_mset(mset, n: int) -> tuple[int, ...]:
    m = tuple(mset)
    if any(not 1 <= x <= n - 1 for x in m) or any(a <= b for a, b in zip(m, m[1:])):
        raise ValueError(f"{m} is not a strictly decreasing subset of 1..{n - 1}")
    return m


def hook_sets(n: int, k: int | None = None) -> list[tuple[int, ...]]:
    """Strictly decreasing sequences ``n-1 >= m_1 > ... > m_k >= 1``."""
    sizes = range(n) if k is None else [k]
    out = []
    for size in sizes:
        out.extend(tuple(sorted(c, reverse=True)) for c in combinations(range(1, n), size))
    return out


@lru_cache(maxsize=None)
def _omega(m: tuple[int, ...], n: int) -> SuperForm:
    f = vandermonde(n)
    for j in reversed(m):
        f = op_d(j, f)
    return f


def omega(mset, n: int) -> SuperForm:
    """``d_{m_1} d_{m_2} ... d_{m_k} Delta`` (``Delta`` itself for the empty set)."""
    return _omega(_check_mset(mset, n), n)


def omega_bidegree(mset, n: int) -> Bidegree:
    m = _check_mset(mset, n)
    return Bidegree(comb(n, 2) - sum(m), len(m))


def complement_map(mset, n: int) -> tuple[int, ...]:
    """The involution pairing ``m`` with the complement of ``{n - m_i}``."""
    m = _check_mset(mset, n)
    taken = {n - x for x in m}
    js = [j for j in range(1, n + 1) if j not in taken]
    return tuple(n - j for j in js[:-1])


def designated_cell(mset, n: int) -> tuple[tuple[int, ...], int]:
    """``(exponents, wedge mask)`` of the coefficient singled out for ``omega(m)``.

    Monomial ``x_1^{n-j_1} ... x_{n-k-1}^{n-j_{n-k-1}}`` inside the
    ``dx_{n-k+1} ^ ... ^ dx_n`` component, where ``j`` runs over the
    complement of ``{n - m_i}``.
    """
    m = _check_mset(mset, n)
    k = len(m)
    taken = {n - x for x in m}
    js = [j for j in range(1, n + 1) if j not in taken]
    exps = [0] * n
    for i, j in enumerate(js[:-1]):
        exps[i] = n - j
    return tuple(exps), indices_mask(range(n - k + 1, n + 1))


def designated_coefficient_check(n: int) -> Report:
    rep = Report("designated-coefficients", n)
    for m in hook_sets(n):
        k = len(m)
        cell = designated_cell(m, n)
        c = omega(m, n).terms.get(cell, 0)
        expected = factorial(k) * prod(factorial(x) for x in m)
        rep.add(
            {"mset": list(m)},
            expected=expected,
            got=abs(c),
            ok=abs(c) == expected,
            sign=(c > 0) - (c < 0),
        )
        for r in hook_sets(n, k):
            if r == m:
                continue
            other = omega(r, n).terms.get(cell, 0)
            rep.add({"mset": list(m), "other": list(r)}, expected=0, got=other, ok=other == 0)
    return rep


# -- harmonic polynomials ----------------------------------------------------

def harmonic_poly_space(n: int, j: int) -> SubspaceBasis:
    """Degree-``j`` polynomials killed by ``D_1, ..., D_n``."""
    # guard before the memo so a lowered cap is honoured on cache hits
    guard(n, (j, 0))
    return _harmonic_poly_space(n, j)


@lru_cache(maxsize=None)
def _harmonic_poly_space(n: int, j: int) -> SubspaceBasis:
    return kernel([OperatorTag("D", i) for i in range(1, n + 1)], n, (j, 0))


def harmonic_poly_space_apolar(n: int, j: int) -> SubspaceBasis:
    """The same space as the apolar orthogonal complement of ``J_j``.

    ``D_i`` is adjoint to multiplication by ``p_i``, so with ``J_j`` in
    reduced echelon form the complement has one vector per free column.
    """
    d = (j, 0)
    guard(n, d)
    rref, free = _poly_ideal(n, j, "p")
    basis = monomial_basis(n, d)
    weight = [prod(factorial(a) for a in exps) for exps, _ in basis]
    by_free: dict = {f: {f: 1} for f in free}
    for p, row in rref.items():
        for f, y in row.items():
            if f != p:
                by_free[f][p] = -y * Fraction(weight[f], weight[p])
    return span([form_from_vector(n, d, by_free[f]) for f in free], n, d)


# -- the ideal ---------------------------------------------------------------

def _gen_degrees(n: int, family: str):
    return [(sum(next(iter(g))[0]), g, dg) for g, dg in generators(n, family)]


def ideal_component(n: int, d, family: str = "p") -> SubspaceBasis:
    """Component of ``I`` as the span of all monomial multiples of the generators."""
    d = Bidegree(*d)
    guard(n, d)
    l, k = d
    forms = []
    for deg, g, dg in _gen_degrees(n, family):
        for mon in monomial_basis(n, (l - deg, k)):
            forms.append(wedge_mul(SuperForm._raw(n, {mon: 1}), g))
        for mon in monomial_basis(n, (l - deg + 1, k - 1)):
            forms.append(wedge_mul(SuperForm._raw(n, {mon: 1}), dg))
    return span(forms, n, d)


def _generic_echelon(n: int, l: int, family: str) -> Echelon:
    """Echelon form of all monomial multiples of the generators in degree ``l``."""
    index = basis_index(n, (l, 0))
    ech = Echelon()
    for deg, g, _ in _gen_degrees(n, family):
        for mon in monomial_basis(n, (l - deg, 0)):
            v = {}
            for key, c in g.items():
                v[index[(tuple(a + b for a, b in zip(mon[0], key[0])), 0)]] = c
            ech.add(v)
    return ech


def _window(n: int, k: int) -> SuperForm:
    from .symfunc import complete_h

    return complete_h(k, n, tuple(range(k, n + 1)))


def _window_row(n: int, l: int, mon: tuple[int, ...], k: int) -> dict:
    index = basis_index(n, (l, 0))
    shift = list(mon)
    shift[k - 1] -= k
    return {index[(tuple(a + b for a, b in zip(shift, key[0])), 0)]: c for key, c in _window(n, k).items()}


def _first_excess(exps: tuple[int, ...]) -> int:
    """Smallest ``k`` with ``a_k >= k`` (0 for the standard monomials ``a_k < k``)."""
    for k, a in enumerate(exps, start=1):
        if a >= k:
            return k
    return 0


@lru_cache(maxsize=None)
def _windows_generate(n: int, family: str) -> bool:
    """Whether ``h_k(x_k, ..., x_n)``, ``k = 1..n``, generate the same ideal as the family.

    Both inclusions only involve degrees up to ``n``: each window must lie in
    ``J_k`` and each generator must reduce to zero against the window rows.
    """
    for k in range(1, n + 1):
        ech = _generic_echelon(n, k, family)
        if not ech.contains(coordinates(_window(n, k), (k, 0))):
            return False
    for deg, g, _ in _gen_degrees(n, family):
        ech = Echelon()
        ech.rows = _window_rows(n, deg)
        if not ech.contains(coordinates(g, (deg, 0))):
            return False
    return True


def _window_rows(n: int, l: int) -> dict:
    """One row per non-standard monomial ``u``: ``(u / x_k^k) * h_k(x_k..x_n)``.

    Its leading (lex-largest) monomial is ``u`` itself, so the rows are
    already in echelon form.
    """
    rows = {}
    for col, (exps, _) in enumerate(monomial_basis(n, (l, 0))):
        k = _first_excess(exps)
        if k:
            rows[col] = dict(sorted(_window_row(n, l, exps, k).items()))
    return rows


@lru_cache(maxsize=None)
def _poly_ideal(n: int, l: int, family: str):
    """Reduced echelon form of ``J_l`` and its complementary (free) monomials.

    Uses the triangular window rows once they are certified to generate the
    same ideal, and plain elimination of generator multiples otherwise.
    """
    if _windows_generate(n, family):
        ech = Echelon()
        ech.rows = _window_rows(n, l)
    else:
        ech = _generic_echelon(n, l, family)
    rref = ech.rref()
    free = [i for i in range(len(monomial_basis(n, (l, 0)))) if i not in rref]
    return rref, free


def _poly_ideal_generic(n: int, l: int, family: str):
    """Same as :func:`_poly_ideal` by elimination of all generator multiples."""
    rref = _generic_echelon(n, l, family).rref()
    free = [i for i in range(len(monomial_basis(n, (l, 0)))) if i not in rref]
    return rref, free


def _poly_nf(n: int, l: int, family: str, poly: dict) -> dict:
    """Normal form modulo ``J_l`` of ``{exponents: coef}``, keyed by free position."""
    rref, free = _poly_ideal(n, l, family)
    index = basis_index(n, (l, 0))
    pos = _free_pos(n, l, family)
    v: dict = {}
    for exps, c in poly.items():
        col = index[(exps, 0)]
        row = rref.get(col)
        if row is None:
            v[col] = v.get(col, 0) + c
        else:
            for cc, y in row.items():
                if cc != col:
                    v[cc] = v.get(cc, 0) - c * y
    return {pos[col]: _clean(c) for col, c in v.items() if c}


@lru_cache(maxsize=None)
def _free_pos(n: int, l: int, family: str) -> dict:
    return {col: i for i, col in enumerate(_poly_ideal(n, l, family)[1])}


def quotient_monomials(n: int, l: int, family: str = "p") -> list[tuple[int, ...]]:
    """Monomials whose classes form a basis of ``R_l / J_l``."""
    basis = monomial_basis(n, (l, 0))
    return [basis[c][0] for c in _poly_ideal(n, l, family)[1]]


class IdealQuotient:
    """``Omega^{l,k}`` modulo ``J_l (x) Lambda^k``, with the image of the ``dg_j`` part.

    Coordinates of the small quotient are ``(free monomial, wedge mask)``.
    """

    def __init__(self, n: int, d, family: str = "p"):
        self.n = n
        self.bidegree = d = Bidegree(*d)
        self.family = family
        l, k = d
        self.masks = wedge_masks(n, k) if 0 <= k <= n else ()
        self.mask_pos = {m: i for i, m in enumerate(self.masks)}
        self.width = len(_poly_ideal(n, l, family)[1]) if l >= 0 else 0
        self.poly_rank = len(_poly_ideal(n, l, family)[0]) if l >= 0 else 0
        self.echelon = Echelon()
        if l < 0 or not self.masks:
            return
        for deg, _, dg in _gen_degrees(n, family):
            for b in quotient_monomials(n, l - deg + 1, family) if l - deg + 1 >= 0 else []:
                for t in wedge_masks(n, k - 1) if k >= 1 else []:
                    term = wedge_mul(SuperForm._raw(n, {(b, 0): 1}), dg)
                    term = wedge_mul(term, SuperForm._raw(n, {((0,) * n, t): 1}))
                    self.echelon.add(self.quotient_vector(term))

    def quotient_vector(self, f: SuperForm) -> dict:
        by_mask: dict = {}
        for (exps, mask), c in f.items():
            by_mask.setdefault(mask, {})[exps] = c
        out = {}
        l = self.bidegree.l
        for mask, poly in by_mask.items():
            base = self.mask_pos[mask] * self.width
            for i, c in _poly_nf(self.n, l, self.family, poly).items():
                out[base + i] = c
        return out

    @property
    def dimension(self) -> int:
        """Dimension of the ideal component."""
        return len(self.masks) * self.poly_rank + self.echelon.rank

    @property
    def quotient_dimension(self) -> int:
        return len(self.masks) * self.width - self.echelon.rank

    def contains(self, f: SuperForm) -> bool:
        if f.n != self.n:
            raise ValueError("ambient dimension mismatch")
        degs = f.bidegrees()
        if degs and degs != [self.bidegree]:
            raise ValueError(f"form has bidegrees {degs}, expected {tuple(self.bidegree)}")
        return self.echelon.contains(self.quotient_vector(f))


def ideal_quotient(n: int, d, family: str = "p") -> IdealQuotient:
    guard(n, tuple(d))
    return _ideal_quotient(n, tuple(d), family)


@lru_cache(maxsize=256)
def _ideal_quotient(n: int, d, family: str) -> IdealQuotient:
    return IdealQuotient(n, d, family)


def ideal_dimension(n: int, d, family: str = "p") -> int:
    return ideal_quotient(n, tuple(d), family).dimension


def in_ideal(f: SuperForm, family: str = "p") -> bool:
    """Exact membership of a form in ``I`` (checked component by component)."""
    from .forms import homogeneous_components

    return all(ideal_quotient(f.n, d, family).contains(part) for d, part in homogeneous_components(f).items())


# -- harmonic forms ----------------------------------------------------------

@dataclass(frozen=True)
class HarmonicSpace:
    n: int
    bidegree: Bidegree
    basis: SubspaceBasis

    @property
    def dimension(self) -> int:
        return self.basis.rank

    def isotypic_dimension(self, mode: str = "sign") -> int:
        vecs = [isotypic_coordinates(f, self.bidegree, mode) for f in self.basis.rows]
        return rank(vecs)


def _falling(a: int, j: int) -> int:
    return prod(range(a - j + 1, a + 1))


def harmonic_space(n: int, d) -> HarmonicSpace:
    """Joint kernel of ``D_1..D_n`` and ``delta_0..delta_{n-1}`` on ``Omega^{r,s}``.

    The ``D`` kernel is ``H^r (x) Lambda^s``; the ``delta_l`` images of its
    basis land in ``H^{r-l} (x) Lambda^{s-1}`` and are written in the echelon
    coordinates of that space (coefficients at its pivot monomials).
    """
    d = Bidegree(*d)
    guard(n, d)
    return _harmonic_space(n, d)


@lru_cache(maxsize=256)
def _harmonic_space(n: int, d: Bidegree) -> HarmonicSpace:
    r, s = d
    if r < 0 or not 0 <= s <= n:
        return HarmonicSpace(n, d, SubspaceBasis.from_rref(n, d, {}))
    hr = harmonic_poly_space(n, r)
    masks = wedge_masks(n, s)
    sources = [(h, m) for m in masks for h in hr.rows]
    if not sources:
        return HarmonicSpace(n, d, SubspaceBasis.from_rref(n, d, {}))
    equations: dict = {}
    if s > 0:
        for l in range(0, n):
            if r - l < 0:
                break
            target = harmonic_poly_space(n, r - l)
            for j_src, (h, mask) in enumerate(sources):
                terms = h.terms
                m = mask
                while m:
                    low = m & -m
                    m ^= low
                    j = low.bit_length() - 1
                    sign = -1 if popcount(mask & (low - 1)) & 1 else 1
                    for t_idx, (pexps, _) in enumerate(target.pivots):
                        src = list(pexps)
                        src[j] += l
                        c = terms.get((tuple(src), 0))
                        if c:
                            key = (l, t_idx, mask ^ low)
                            equations.setdefault(key, {})[j_src] = sign * c * _falling(src[j], l)
    null = nullspace(equations.values(), len(sources))
    forms = []
    for vec in null:
        acc: dict = {}
        for j_src, c in vec.items():
            h, mask = sources[j_src]
            for (exps, _), y in h.items():
                key = (exps, mask)
                acc[key] = acc.get(key, 0) + c * y
        forms.append(SuperForm(n, acc))
    return HarmonicSpace(n, d, span(forms, n, d))


def harmonic_space_direct(n: int, d) -> SubspaceBasis:
    """Same space by brute force: one joint kernel over the whole component."""
    ops = [OperatorTag("D", i) for i in range(1, n + 1)] + [OperatorTag("delta", i) for i in range(n)]
    return kernel(ops, n, d)


# -- series and verifications ------------------------------------------------

def _lmax(n: int) -> int:
    return comb(n, 2) + 1


def _quotient_job(n: int, l: int, k: int, family: str) -> int:
    guard(n, (l, k))
    return ideal_quotient(n, (l, k), family).quotient_dimension


def quotient_hilbert(n: int, lmax: int | None = None, family: str = "p", workers: int | None = None) -> BigradedSeries:
    """Dimensions of ``Omega^{l,k} / I`` for ``l <= lmax`` (default ``C(n,2)+1``)."""
    if n > 6:
        raise ValueError("quotient_hilbert is limited to n <= 6")
    lmax = _lmax(n) if lmax is None else lmax
    cells = [(n, l, k, family) for l in range(lmax + 1) for k in range(n + 1)]
    for _, l, k, _ in cells:
        guard(n, (l, k))
    dims = map_cells(_quotient_job, cells, workers)
    return BigradedSeries({(l, k): v for (_, l, k, _), v in zip(cells, dims)})


def complementarity_cell(n: int, d, family: str = "p", direct: bool = False) -> dict:
    d = Bidegree(*d)
    guard(n, d)
    full = component_dimension(n, d)
    ideal = ideal_dimension(n, d, family)
    harm = harmonic_space(n, d).dimension
    out = {"component": full, "ideal": ideal, "harmonic": harm, "ok": ideal + harm == full}
    if direct:
        out["ideal_direct"] = ideal_component(n, d, family).rank
        out["harmonic_direct"] = harmonic_space_direct(n, d).rank
        out["ok"] = out["ok"] and out["ideal_direct"] == ideal and out["harmonic_direct"] == harm
    return out


def verify_complementarity(
    n: int, lmax: int | None = None, family: str = "p", direct: bool = False, workers: int | None = None
) -> Report:
    from .linalg import component_cap

    lmax = _lmax(n) if lmax is None else lmax
    rep = Report("complementarity", n)
    cells = []
    for l in range(lmax + 1):
        for k in range(n + 1):
            if component_dimension(n, (l, k)) > component_cap():
                rep.note(f"skipped ({l},{k}): component above the resource cap")
                continue
            cells.append((n, (l, k), family, direct))
    for (_, (l, k), _, _), cell in zip(cells, map_cells(complementarity_cell, cells, workers)):
        ok = cell.pop("ok")
        rep.add([l, k], expected=cell["component"], got=cell["ideal"] + cell["harmonic"], ok=ok, **cell)
    return rep


def _alternant_job(n: int, l: int, k: int) -> tuple[int, int]:
    d = Bidegree(l, k)
    sign_dim = harmonic_space(n, d).isotypic_dimension("sign")
    omegas = [omega(m, n) for m in hook_sets(n) if omega_bidegree(m, n) == d]
    return sign_dim, rank([coordinates(f, d) for f in omegas])


def verify_alternant_series(n: int, workers: int | None = None) -> Report:
    """Sign-isotypic harmonic dimensions vs. the omega family vs. the closed product."""
    rep = Report("alternant-series", n)
    closed = alternant_hilbert_closed(n)
    family = hook_sets(n)
    cells = [(n, l, k) for k in range(n + 1) for l in range(comb(n, 2) + 1)]
    total_rank = 0
    for (_, l, k), (sign_dim, omega_rank) in zip(cells, map_cells(_alternant_job, cells, workers)):
        expected = closed[(l, k)]
        total_rank += omega_rank
        if sign_dim == omega_rank == expected == 0:
            continue
        rep.add(
            [l, k],
            expected=expected,
            got=sign_dim,
            ok=sign_dim == omega_rank == expected,
            omega_rank=omega_rank,
        )
    alternant = all(is_alternant(omega(m, n)) for m in family)
    size = 2 ** (n - 1)
    rep.add(
        "omega-family",
        expected=size,
        got=total_rank,
        ok=len(family) == size and total_rank == size and alternant,
        members=len(family),
        alternant=alternant,
    )
    return rep


def sharpness_witness(n: int, k: int) -> SuperForm:
    """``d_1 d_2 ... d_k Delta``."""
    return omega(tuple(range(k, 0, -1)), n)


def verify_degree_bound(n: int, family: str = "p") -> Report:
    rep = Report("degree-bound", n)
    for k in range(n):
        bound = comb(n, 2) - comb(k + 1, 2)
        at = ideal_quotient(n, (bound, k), family).quotient_dimension
        above = ideal_quotient(n, (bound + 1, k), family).quotient_dimension
        w = sharpness_witness(n, k)
        witness_ok = bool(w) and w.bidegree == (bound, k) and not in_ideal(w, family)
        rep.add(
            {"k": k, "bound": bound},
            expected="above=0, at>0, witness outside I",
            got={"at": at, "above": above, "witness_outside_ideal": witness_ok},
            ok=above == 0 and at > 0 and witness_ok,
        )
    return rep


def verify_top_degree(n: int, family: str = "p") -> Report:
    rep = Report("top-degree", n)
    top = comb(n, 2)
    total = 0
    cells = {}
    for k in range(n + 1):
        l = top - k
        if l < 0:
            continue
        dim = ideal_quotient(n, (l, k), family).quotient_dimension
        cells[(l, k)] = dim
        total += dim
    delta = vandermonde(n)
    d_delta = op_d(1, delta)
    expected_cells = {(top, 0): 1, (top - 1, 1): 1} if n > 1 else {(0, 0): 1}
    nonzero = {c: v for c, v in cells.items() if v}
    witnesses = not in_ideal(delta, family) and (n == 1 or not in_ideal(d_delta, family))
    rep.add("total", expected=2 if n > 1 else 1, got=total, ok=total == (2 if n > 1 else 1))
    rep.add(
        "cells",
        expected=[[l, k, v] for (l, k), v in sorted(expected_cells.items())],
        got=[[l, k, v] for (l, k), v in sorted(nonzero.items())],
        ok=nonzero == expected_cells and witnesses,
    )
    # nothing survives above total degree C(n,2)
    over = []
    for k in range(n + 1):
        l = top - k + 1
        if l >= 0:
            over.append(ideal_quotient(n, (l, k), family).quotient_dimension)
    rep.add("above-top", expected=0, got=sum(over), ok=sum(over) == 0)
    return rep


def annihilated(f: SuperForm) -> bool:
    n = f.n
    return all(not op_D(i, f) for i in range(1, n + 1)) and all(not op_delta(i, f) for i in range(n))
