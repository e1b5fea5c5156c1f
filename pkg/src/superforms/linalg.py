"""Exact sparse linear algebra over Q for bidegree components.

Vectors are dicts ``{column: coefficient}`` with integer column ids (the
position of a monomial in :func:`forms.monomial_basis`).  Elimination is
fraction-free: rows are kept as primitive integer vectors and combined as
``p * v - a * row`` with the common factor removed, so no rational arithmetic
happens mid-elimination.  Rationals only appear in the final reduced echelon
form.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .forms import (
    Bidegree,
    SuperForm,
    _clean,
    basis_index,
    component_dimension,
    monomial_basis,
)

DEFAULT_COMPONENT_CAP = 200_000


class ResourceLimitError(RuntimeError):
    """A bidegree component is larger than the configured cap."""


_cap = [DEFAULT_COMPONENT_CAP]


def set_component_cap(cap: int) -> None:
    _cap[0] = int(cap)


def component_cap() -> int:
    return _cap[0]


def guard(n: int, d: tuple[int, int]) -> None:
    size = component_dimension(n, d)
    if size > _cap[0]:
        raise ResourceLimitError(
            f"component n={n} bidegree={tuple(d)} has {size} monomials, above the cap of {_cap[0]}"
        )


def _integral(v: dict) -> dict:
    """Scale a rational vector to a primitive integer vector."""
    den = 0
    for c in v.values():
        if not isinstance(c, int):
            den = lcm(den or 1, c.denominator)
    if den:
        v = {k: int(c * den) for k, c in v.items()}
    g = reduce(gcd, v.values(), 0)
    if g > 1:
        v = {k: c // g for k, c in v.items()}
    return v


class Echelon:
    """Incremental row echelon form over Q.

    Every stored row is a primitive integer vector whose smallest column is
    its pivot (positive); pivots are distinct.  Rows are added in the order
    given, so the result is fully determined by the input order.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _eliminate(self, v: dict, heap: list, c: int) -> dict:
        row = self.rows[c]
        p = row[c]
        a = v[c]
        g = gcd(p, a)
        mp, ma = p // g, a // g
        if mp != 1:
            if mp < 0:
                mp, ma = -mp, -ma
            v = {k: x * mp for k, x in v.items()}
        for col, x in row.items():
            old = v.get(col)
            if old is None:
                v[col] = -ma * x
                heapq.heappush(heap, col)
            else:
                new = old - ma * x
                if new:
                    v[col] = new
                else:
                    del v[col]
        if mp != 1 and v:
            g = reduce(gcd, v.values())
            if g > 1:
                v = {k: x // g for k, x in v.items()}
        return v

    def _reduce(self, v: dict, full: bool) -> dict:
        v = _integral(v)
        heap = list(v)
        heapq.heapify(heap)
        rows = self.rows
        while heap:
            c = heapq.heappop(heap)
            if c not in v:
                continue
            if c in rows:
                v = self._eliminate(v, heap, c)
            elif not full:
                break
        return v

    def leading_reduce(self, v: dict) -> dict:
        """Reduce until the leading column is not a pivot (or ``v`` is zero)."""
        return self._reduce(dict(v), full=False)

    def normal_form(self, v: dict) -> dict:
        """Remove every pivot column; result is a scalar multiple of the unique normal form."""
        return self._reduce(dict(v), full=True)

    def contains(self, v: dict) -> bool:
        return not self.leading_reduce(v)

    def add(self, v: dict) -> bool:
        """Insert ``v``; returns ``True`` when it enlarged the span."""
        if not v:
            return False
        v = self.leading_reduce(v)
        if not v:
            return False
        pivot = min(v)
        v = _integral(v)
        if v[pivot] < 0:
            v = {k: -x for k, x in v.items()}
        self.rows[pivot] = dict(sorted(v.items()))
        return True

    def extend(self, vectors: Iterable[dict]) -> "Echelon":
        for v in vectors:
            self.add(v)
        return self

    def rref(self) -> dict[int, dict[int, int | Fraction]]:
        """Reduced echelon rows ``{pivot: row}`` with pivot entry 1, ordered by pivot."""
        done: dict[int, dict[int, int]] = {}
        for c in sorted(self.rows, reverse=True):
            v = dict(self.rows[c])
            for p in [col for col in v if col != c and col in done]:
                x = v.get(p)
                if not x:
                    continue
                row = done[p]
                q = row[p]
                g = gcd(q, x)
                mq, mx = q // g, x // g
                if mq != 1:
                    v = {k: y * mq for k, y in v.items()}
                for col, y in row.items():
                    new = v.get(col, 0) - mx * y
                    if new:
                        v[col] = new
                    else:
                        v.pop(col, None)
            v = _integral(v)
            if v[c] < 0:
                v = {k: -y for k, y in v.items()}
            done[c] = v
        out = {}
        for c in sorted(done):
            v = done[c]
            p = v[c]
            out[c] = {k: _clean(Fraction(y, p)) for k, y in sorted(v.items())}
        return out


def _nullspace_exact(equations: Iterable[dict], ncols: int) -> list[dict]:
    rows = Echelon().extend(equations).rref()
    by_free: dict[int, dict] = {}
    for c, row in rows.items():
        for col, y in row.items():
            if col != c:
                by_free.setdefault(col, {})[c] = -y
    out = []
    for f in range(ncols):
        if f in rows:
            continue
        vec = {f: 1}
        vec.update(by_free.get(f, {}))
        out.append(dict(sorted(vec.items())))
    return out


def _dot(a: dict, b: dict):
    if len(b) < len(a):
        a, b = b, a
    return sum(c * b[k] for k, c in a.items() if k in b)


def nullspace(equations: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of ``{x : eq . x = 0 for all eq}`` over columns ``0..ncols-1``.

    One vector per free column ``f``, with ``x[f] = 1`` and zeros on the other
    free columns.  Equations that are redundant mod a random prime are
    skipped during elimination; the candidate basis is then checked against
    every equation exactly, and a failed check falls back to eliminating all
    of them.  Both paths give the same (unique) reduced basis.
    """
    eqs = [e for e in equations if e]
    try:
        keep = independent_mod_p(eqs)
    except ZeroDivisionError:
        keep = None
    if keep is not None and len(keep) < len(eqs):
        cand = _nullspace_exact([eqs[i] for i in keep], ncols)
        if all(not _dot(e, v) for v in cand for e in eqs):
            return cand
    return _nullspace_exact(eqs, ncols)


# -- modular pre-pass --------------------------------------------------------

@lru_cache(maxsize=None)
def _random_prime(seed: int) -> int:
    rng = random.Random(seed)
    while True:
        cand = rng.randrange(2**30, 2**31) | 1
        if all(cand % d for d in range(3, int(cand**0.5) + 1, 2)):
            return cand


def independent_mod_p(vectors: Sequence[dict], p: int | None = None, seed: int = 0) -> list[int]:
    """Indices of the vectors that enlarge the span over GF(p), in input order.

    Vectors independent mod p are independent over Q, so the count is a
    lower bound for the rank over Q.
    """
    if p is None:
        p = _random_prime(seed)
    rows: dict[int, dict[int, int]] = {}
    kept = []
    for idx, v in enumerate(vectors):
        w = {}
        for k, c in v.items():
            if isinstance(c, int):
                x = c % p
            else:
                if c.denominator % p == 0:
                    raise ZeroDivisionError("prime divides a denominator")
                x = c.numerator * pow(c.denominator, -1, p) % p
            if x:
                w[k] = x
        heap = list(w)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = w.get(c)
            if a is None:
                continue
            row = rows.get(c)
            if row is None:
                inv = pow(a, -1, p)
                rows[c] = {k: x * inv % p for k, x in w.items()}
                kept.append(idx)
                break
            for col, x in row.items():
                old = w.get(col)
                new = ((old or 0) - a * x) % p
                if new:
                    if old is None:
                        heapq.heappush(heap, col)
                    w[col] = new
                elif old is not None:
                    del w[col]
    return kept


def rank_mod_p(vectors: Sequence[dict], p: int | None = None, seed: int = 0) -> int:
    """Rank over GF(p); a lower bound for the rank over Q."""
    return len(independent_mod_p(vectors, p, seed))


def rank(vectors: Sequence[dict], ncols: int | None = None) -> int:
    """Exact rank over Q; full-rank answers from the modular pass are final."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    bound = len(vectors) if ncols is None else min(len(vectors), ncols)
    try:
        r = rank_mod_p(vectors)
    except ZeroDivisionError:
        r = -1
    if r == bound:
        # a nonzero r x r minor mod p is nonzero over Q
        return r
    return Echelon().extend(vectors).rank


# -- subspaces of one bidegree component ------------------------------------

def coordinates(f: SuperForm, d: tuple[int, int]) -> dict[int, int | Fraction]:
    """``f`` restricted to component ``d`` as a column vector."""
    index = basis_index(f.n, tuple(d))
    out = {}
    for key, c in f.items():
        i = index.get(key)
        if i is not None:
            out[i] = c
    return out


def _check_component(f: SuperForm, n: int, d) -> None:
    if f.n != n:
        raise ValueError(f"form lives in n={f.n}, expected n={n}")
    degs = f.bidegrees()
    if degs and degs != [tuple(d)]:
        raise ValueError(f"form has bidegrees {degs}, expected {tuple(d)}")


def form_from_vector(n: int, d: tuple[int, int], v: dict) -> SuperForm:
    basis = monomial_basis(n, tuple(d))
    return SuperForm._raw(n, {basis[i]: _clean(c) for i, c in sorted(v.items()) if c})


@dataclass(frozen=True)
class SubspaceBasis:
    """Reduced echelon basis of a subspace of one ``(l, k)`` component.

    ``rows[i]`` has coefficient 1 on ``pivots[i]`` and no other row touches
    that monomial.
    """

    n: int
    bidegree: Bidegree
    rows: tuple[SuperForm, ...]
    pivots: tuple = ()
    _pivot_cols: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_rref(cls, n: int, d, rref: dict) -> "SubspaceBasis":
        d = Bidegree(*d)
        basis = monomial_basis(n, d)
        rows = tuple(form_from_vector(n, d, row) for row in rref.values())
        pivots = tuple(basis[c] for c in rref)
        return cls(n, d, rows, pivots, {c: row for c, row in rref.items()})

    @property
    def rank(self) -> int:
        return len(self.rows)

    dimension = rank

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, f: SuperForm) -> SuperForm:
        """Normal form of ``f`` modulo the subspace."""
        _check_component(f, self.n, self.bidegree)
        v = dict(coordinates(f, self.bidegree))
        for c, row in self._pivot_cols.items():
            a = v.get(c)
            if not a:
                continue
            for col, y in row.items():
                new = v.get(col, 0) - a * y
                if new:
                    v[col] = new
                else:
                    v.pop(col, None)
        return form_from_vector(self.n, self.bidegree, v)

    def contains(self, f: SuperForm) -> bool:
        return not self.reduce(f)

    def __contains__(self, f: SuperForm) -> bool:
        return self.contains(f)

    def coordinates(self, f: SuperForm) -> list:
        """Coefficients of ``f`` in ``rows`` (``f`` must lie in the span)."""
        if not self.contains(f):
            raise ValueError("form is not in the subspace")
        return [f.terms.get(p, 0) for p in self.pivots]


def span(forms: Sequence[SuperForm], n: int | None = None, bidegree=None) -> SubspaceBasis:
    """Reduced echelon basis of the span of forms sharing one bidegree."""
    forms = list(forms)
    if n is None:
        if not forms:
            raise ValueError("need n for an empty span")
        n = forms[0].n
    if bidegree is None:
        degs = sorted({d for f in forms for d in f.bidegrees()})
        if len(degs) != 1:
            raise ValueError(f"span needs a single bidegree, got {degs}")
        bidegree = degs[0]
    d = Bidegree(*bidegree)
    for f in forms:
        _check_component(f, n, d)
    ech = Echelon().extend(coordinates(f, d) for f in forms)
    return SubspaceBasis.from_rref(n, d, ech.rref())


def kernel(operators, n: int, d, within: SubspaceBasis | None = None) -> SubspaceBasis:
    """Joint kernel of the operators on component ``d`` (or on a subspace of it)."""
    d = Bidegree(*d)
    guard(n, d)
    if within is not None:
        sources = list(within.rows)
    else:
        sources = [SuperForm._raw(n, {mon: 1}) for mon in monomial_basis(n, d)]
    if not operators:
        if within is not None:
            return within
        return SubspaceBasis.from_rref(n, d, {i: {i: 1} for i in range(len(sources))})
    equations: dict = {}
    for j, src in enumerate(sources):
        for o, op in enumerate(operators):
            for key, c in op(src).items():
                equations.setdefault((o, key), {})[j] = c
    null = nullspace(equations.values(), len(sources))
    forms = []
    for vec in null:
        acc: dict = {}
        for j, c in vec.items():
            for key, y in sources[j].items():
                acc[key] = acc.get(key, 0) + c * y
        forms.append(SuperForm(n, acc))
    return span(forms, n, d)
