"""Characters of S_n: hooks via Murnaghan-Nakayama, graded traces on harmonics."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .forms import SuperForm, wedge_masks
from .group import act, class_representative, conjugacy_classes, partitions
from .harmonics import harmonic_poly_space
from .report import Report
from .symfunc import (
    BigradedSeries,
    e_eval_geometric,
    geometric,
    invariant_hilbert_closed,
    q_integer_factorial,
)

__all__ = [
    "hook_character",
    "character",
    "harmonic_poly_space",
    "graded_trace",
    "wedge_trace",
    "MultiplicityTable",
    "multiplicity_table",
    "multiplicities",
    "verify_hook_multiplicities",
    "verify_invariant_series_via_characters",
    "isotypic_upper_bound",
    "inner_product",
]


@lru_cache(maxsize=None)
def _hook_mn(arm: int, leg: int, parts: tuple[int, ...]) -> int:
    # shape (arm, 1^leg); arm == 0 means the empty shape
    if not parts:
        return 1 if arm == 0 and leg == 0 else 0
    m, rest = parts[0], parts[1:]
    size = arm + leg
    total = 0
    if m == size:
        total += (-1) ** leg * _hook_mn(0, 0, rest)
    else:
        if m < arm:
            total += _hook_mn(arm - m, leg, rest)
        if m <= leg:
            total += (-1) ** (m - 1) * _hook_mn(arm, leg - m, rest)
    return total


def hook_character(n: int, k: int, cycle_type) -> int:
    """``chi_{(n-k, 1^k)}`` on the class of the given cycle type."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"hook index k={k} out of range for n={n}")
    parts = tuple(sorted(cycle_type, reverse=True))
    if sum(parts) != n:
        raise ValueError(f"cycle type {parts} is not a partition of {n}")
    return _hook_mn(n - k, k, parts)


@lru_cache(maxsize=None)
def _mn_beta(beta: frozenset, parts: tuple[int, ...]) -> int:
    if not parts:
        return 1
    m, rest = parts[0], parts[1:]
    total = 0
    for b in beta:
        if b - m < 0 or (b - m) in beta:
            continue
        between = sum(1 for x in beta if b - m < x < b)
        total += (-1) ** between * _mn_beta((beta - {b}) | {b - m}, rest)
    return total


def character(shape, cycle_type) -> int:
    """Any irreducible character, by rim-hook removal on beta-numbers."""
    shape = tuple(x for x in shape if x)
    parts = tuple(sorted(cycle_type, reverse=True))
    if sum(shape) != sum(parts):
        raise ValueError("shape and cycle type have different sizes")
    length = len(shape)
    beta = frozenset(shape[i] + length - 1 - i for i in range(length))
    return _mn_beta(beta, parts)


def inner_product(n: int, f, g) -> Fraction:
    """``(1/n!) sum_x f(x) g(x)`` for class functions given as callables on cycle types."""
    total = sum(size * f(c) * g(c) for c, size, _ in conjugacy_classes(n))
    return Fraction(total, factorial(n))


@lru_cache(maxsize=None)
def graded_trace(n: int, cycle_type, j: int) -> int:
    """Trace of a class representative on the degree-``j`` harmonic polynomials."""
    basis = harmonic_poly_space(n, j)
    rep = class_representative(tuple(cycle_type))
    total = 0
    for row, pivot in zip(basis.rows, basis.pivots):
        total += act(rep, row).terms.get(pivot, 0)
    return total


def wedge_trace(n: int, cycle_type, k: int) -> int:
    """Trace on ``Lambda^k R^n`` read off the diagonal of the action on ``dx_S``."""
    rep = class_representative(tuple(cycle_type))
    total = 0
    zero = (0,) * n
    for mask in wedge_masks(n, k):
        total += act(rep, SuperForm._raw(n, {(zero, mask): 1})).terms.get((zero, mask), 0)
    return total


@dataclass
class MultiplicityTable:
    """``entries[(j, k)]`` = multiplicity of the hook ``(n-k, 1^k)`` in ``H^j``."""

    n: int
    entries: dict = field(default_factory=dict)

    def column(self, k: int) -> BigradedSeries:
        return BigradedSeries({(j, 0): m for (j, kk), m in self.entries.items() if kk == k})

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": [{"j": j, "k": k, "m": m} for (j, k), m in sorted(self.entries.items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j"] + [f"k={k}" for k in range(self.n)])
        for j in range(comb(self.n, 2) + 1):
            w.writerow([j] + [self.entries.get((j, k), 0) for k in range(self.n)])
        return buf.getvalue()


@lru_cache(maxsize=None)
def multiplicities(n: int) -> dict:
    """``m_{j, shape}`` for every partition ``shape`` of n, from graded traces."""
    out = {}
    classes = conjugacy_classes(n)
    for j in range(comb(n, 2) + 1):
        traces = {c: graded_trace(n, c, j) for c, _, _ in classes}
        for shape in partitions(n):
            total = sum(size * traces[c] * character(shape, c) for c, size, _ in classes)
            out[(j, shape)] = Fraction(total, factorial(n))
    return out


def multiplicity_table(n: int) -> MultiplicityTable:
    if n > 6:
        raise ValueError("multiplicity tables are limited to n <= 6")
    classes = conjugacy_classes(n)
    table = MultiplicityTable(n)
    for j in range(comb(n, 2) + 1):
        traces = {c: graded_trace(n, c, j) for c, _, _ in classes}
        for k in range(n):
            total = sum(size * traces[c] * hook_character(n, k, c) for c, size, _ in classes)
            m = Fraction(total, factorial(n))
            if m.denominator != 1 or m < 0:
                raise ArithmeticError(f"multiplicity m[{j},{k}] = {m} is not a non-negative integer")
            if m:
                table.entries[(j, k)] = int(m)
    return table


def verify_hook_multiplicities(n: int) -> Report:
    rep = Report("mult", n)
    table = multiplicity_table(n)
    for k in range(n):
        got = table.column(k)
        want = e_eval_geometric(k, n)
        rep.add({"k": k}, expected=str(want), got=str(got), ok=got == want)
    # degree sums: sum_j dim H^j = n!, per-degree dims match [n]_q!
    qfact = q_integer_factorial(n)
    dims = BigradedSeries({(j, 0): harmonic_poly_space(n, j).rank for j in range(comb(n, 2) + 2)})
    rep.add("harmonic-dims", expected=str(qfact), got=str(dims), ok=dims == qfact)
    return rep


def verify_invariant_series_via_characters(n: int, cutoff: int | None = None) -> Report:
    rep = Report("invariant-series-characters", n)
    table = multiplicity_table(n)
    numerator = BigradedSeries()
    for (l, k), m in table.entries.items():
        numerator = numerator + BigradedSeries({(l, k): m, (l, k + 1): m})
    product = BigradedSeries.one()
    for j in range(1, n + 1):
        product = product * BigradedSeries({(0, 0): 1, (j - 1, 1): 1})
    rep.add("numerator", expected=str(product), got=str(numerator), ok=numerator == product)
    cutoff = comb(n, 2) + n if cutoff is None else cutoff
    series = numerator.truncate(cutoff)
    for j in range(1, n + 1):
        series = series * geometric(j, cutoff)
    closed = invariant_hilbert_closed(n, cutoff)
    diff = series.first_difference(closed)
    rep.add("series", expected=closed.to_json(), got=series.to_json(), ok=diff is None, first_difference=diff)
    # gamma_k = chi_k + chi_{k-1}, class by class
    for c, _, _ in conjugacy_classes(n):
        for k in range(n + 1):
            gamma = wedge_trace(n, c, k)
            hooks = (hook_character(n, k, c) if k <= n - 1 else 0) + (hook_character(n, k - 1, c) if k >= 1 else 0)
            rep.add({"class": list(c), "k": k}, expected=gamma, got=hooks, ok=gamma == hooks)
    rep.note(
        "t^k coefficient of prod (1 + q^{j-1} t) is e_k(1, q, ..., q^{n-1}) = "
        "e_k(q, ..., q^{n-1}) + e_{k-1}(q, ..., q^{n-1}); the hook columns are checked against e_k(q, ..., q^{n-1})"
    )
    return rep


def isotypic_upper_bound(n: int, r: int, s: int, shape=None) -> int:
    """``sum_mu m_{r,mu} (chi_mu chi_{(n-s,1^s)}, chi_shape)``; default shape is the sign."""
    if shape is None:
        shape = (1,) * n
    if s > n - 1:
        return 0
    mult = multiplicities(n)
    total = Fraction(0)
    for mu in partitions(n):
        m = mult.get((r, mu), 0)
        if not m:
            continue
        total += m * inner_product(
            n, lambda c, mu=mu: character(mu, c) * hook_character(n, s, c), lambda c: character(shape, c)
        )
    if total.denominator != 1:
        raise ArithmeticError("non-integral bound")
    return int(total)
