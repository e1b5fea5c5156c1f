"""Symmetric polynomials as 0-forms, and bigraded q,t series."""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .forms import SuperForm, compositions, indices_mask
from .operators import exterior_derivative


# -- symmetric polynomials ---------------------------------------------------

@lru_cache(maxsize=None)
def power_sum(j: int, n: int) -> SuperForm:
    if j < 1:
        raise ValueError("power sums start at p_1")
    return SuperForm(n, {(tuple(j if i == v else 0 for i in range(n)), 0): 1 for v in range(n)})


@lru_cache(maxsize=None)
def elementary(k: int, n: int) -> SuperForm:
    if not 0 <= k <= n:
        raise ValueError(f"e_{k} is not defined in {n} variables")
    terms = {}
    for subset in combinations(range(n), k):
        terms[(tuple(1 if i in subset else 0 for i in range(n)), 0)] = 1
    return SuperForm(n, terms)


@lru_cache(maxsize=None)
def complete_h(k: int, n: int, window: tuple[int, ...] | None = None) -> SuperForm:
    """``h_k`` in the variables ``x_i, i in window`` (default: all of them)."""
    if k < 0:
        raise ValueError("h_k needs k >= 0")
    window = tuple(range(1, n + 1)) if window is None else tuple(window)
    if any(not 1 <= i <= n for i in window):
        raise ValueError(f"window {window} not inside 1..{n}")
    terms = {}
    for comp in compositions(k, len(window)) if window else ([()] if k == 0 else []):
        exps = [0] * n
        for i, e in zip(window, comp):
            exps[i - 1] = e
        terms[(tuple(exps), 0)] = 1
    return SuperForm(n, terms)


def u_form(n: int) -> SuperForm:
    """``u = dx_1 + ... + dx_n``, the degree-one invariant of the exterior algebra."""
    return SuperForm(n, {((0,) * n, indices_mask([i])): 1 for i in range(1, n + 1)})


def vandermonde(n: int) -> SuperForm:
    """``prod_{i<j} (x_i - x_j)``."""
    out = SuperForm.constant(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (SuperForm.x(n, i) - SuperForm.x(n, j))
    return out


def generators(n: int, family: str = "p") -> list[tuple[SuperForm, SuperForm]]:
    """``(g_j, dg_j)`` for the power sums (``"p"``) or elementary polynomials (``"e"``)."""
    if family == "p":
        gens = [power_sum(j, n) for j in range(1, n + 1)]
    elif family == "e":
        gens = [elementary(j, n) for j in range(1, n + 1)]
    else:
        raise ValueError(f"unknown generator family {family!r}")
    return [(g, exterior_derivative(g)) for g in gens]


# -- q,t series --------------------------------------------------------------

class BigradedSeries:
    """Integer polynomial in ``q`` and ``t``, optionally truncated above ``q^cutoff``.

    Terms with ``q``-power beyond the cutoff are dropped on construction and
    after every product, so truncated expansions of rational functions stay
    exact within the window.
    """

    __slots__ = ("coeffs", "cutoff")

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None, cutoff: int | None = None):
        clean = {}
        for (a, b), c in (coeffs or {}).items():
            if cutoff is not None and a > cutoff:
                continue
            if c:
                clean[(int(a), int(b))] = clean.get((a, b), 0) + int(c)
        self.coeffs = {k: v for k, v in sorted(clean.items()) if v}
        self.cutoff = cutoff

    @classmethod
    def one(cls, cutoff=None):
        return cls({(0, 0): 1}, cutoff)

    @classmethod
    def q_power(cls, a: int, cutoff=None):
        return cls({(a, 0): 1}, cutoff)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.coeffs.get(tuple(key), 0)

    def _cut(self, other):
        cuts = [c for c in (self.cutoff, getattr(other, "cutoff", None)) if c is not None]
        return min(cuts) if cuts else None

    def __add__(self, other):
        if isinstance(other, int):
            other = BigradedSeries({(0, 0): other})
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BigradedSeries(out, self._cut(other))

    __radd__ = __add__

    def __neg__(self):
        return BigradedSeries({k: -v for k, v in self.coeffs.items()}, self.cutoff)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BigradedSeries({k: v * other for k, v in self.coeffs.items()}, self.cutoff)
        cut = self._cut(other)
        out: dict = {}
        for (a, b), c in self.coeffs.items():
            for (x, y), e in other.coeffs.items():
                if cut is not None and a + x > cut:
                    continue
                out[(a + x, b + y)] = out.get((a + x, b + y), 0) + c * e
        return BigradedSeries(out, cut)

    __rmul__ = __mul__

    def truncate(self, cutoff: int) -> "BigradedSeries":
        return BigradedSeries(self.coeffs, cutoff if self.cutoff is None else min(cutoff, self.cutoff))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedSeries):
            return NotImplemented
        return self.first_difference(other) is None

    def first_difference(self, other: "BigradedSeries"):
        """First ``(q, t)`` cell (in (t, q) order) where the series disagree within both windows."""
        cut = self._cut(other)
        keys = sorted(set(self.coeffs) | set(other.coeffs), key=lambda k: (k[1], k[0]))
        for k in keys:
            if cut is not None and k[0] > cut:
                continue
            if self[k] != other[k]:
                return k
        return None

    def max_t(self) -> int:
        return max((b for _, b in self.coeffs), default=0)

    def t_coefficient(self, b: int) -> dict[int, int]:
        return {a: c for (a, y), c in self.coeffs.items() if y == b}

    def to_json(self) -> list[dict]:
        return [{"q": a, "t": b, "c": c} for (a, b), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], cutoff=None) -> "BigradedSeries":
        return cls({(int(d["q"]), int(d["t"])): int(d["c"]) for d in data}, cutoff)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (a, b), c in sorted(self.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = " ".join(
                s for s in ("" if a == 0 else "q" if a == 1 else f"q^{a}", "" if b == 0 else "t" if b == 1 else f"t^{b}") if s
            )
            if not mono:
                parts.append((c, str(abs(c))))
            else:
                parts.append((c, mono if abs(c) == 1 else f"{abs(c)} {mono}"))
        out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
        for c, s in parts[1:]:
            out += (" - " if c < 0 else " + ") + s
        return out

    def __repr__(self) -> str:
        return f"BigradedSeries({self!s}, cutoff={self.cutoff})"


def geometric(step: int, cutoff: int) -> BigradedSeries:
    """``1 / (1 - q^step)`` expanded up to ``q^cutoff``."""
    return BigradedSeries({(step * m, 0): 1 for m in range(cutoff // step + 1)}, cutoff)


def default_cutoff(n: int) -> int:
    return comb(n, 2) + n


def invariant_hilbert_closed(n: int, cutoff: int | None = None) -> BigradedSeries:
    """``prod_{j=1}^n (1 + q^{j-1} t) / (1 - q^j)`` truncated at ``q^cutoff``."""
    if cutoff is None:
        cutoff = default_cutoff(n)
    out = BigradedSeries.one(cutoff)
    for j in range(1, n + 1):
        out = out * BigradedSeries({(0, 0): 1, (j - 1, 1): 1}, cutoff) * geometric(j, cutoff)
    return out


def alternant_hilbert_closed(n: int) -> BigradedSeries:
    """``prod_{j=1}^{n-1} (q^j + t)``."""
    out = BigradedSeries.one()
    for j in range(1, n):
        out = out * BigradedSeries({(j, 0): 1, (0, 1): 1})
    return out


def e_eval_geometric(k: int, n: int) -> BigradedSeries:
    """``e_k(q, q^2, ..., q^{n-1})`` as a q-series."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n-1, got k={k}, n={n}")
    out: dict = {}
    for subset in combinations(range(1, n), k):
        a = sum(subset)
        out[(a, 0)] = out.get((a, 0), 0) + 1
    return BigradedSeries(out)


def q_integer_factorial(n: int) -> BigradedSeries:
    """``[n]_q! = prod_{j=1}^n (1 + q + ... + q^{j-1})``."""
    out = BigradedSeries.one()
    for j in range(1, n + 1):
        out = out * BigradedSeries({(a, 0): 1 for a in range(j)})
    return out
