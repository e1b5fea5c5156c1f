"""Sparse exact superforms: polynomial differential forms on R^n.

A super-monomial ``x^a dx_S`` is stored as the key ``(a, mask)`` where ``a`` is
a tuple of ``n`` exponents and bit ``i - 1`` of ``mask`` is set when ``dx_i``
occurs in the (sorted) wedge word.  A :class:`SuperForm` maps such keys to
exact rational coefficients (``int`` when integral, ``Fraction`` otherwise).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Rational
from operator import add
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

Monomial = tuple  # (exponent tuple, wedge mask)


class Bidegree(NamedTuple):
    """Polynomial degree ``l`` and form degree ``k``."""

    l: int
    k: int


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_indices(mask: int) -> tuple[int, ...]:
    """1-based indices of the set bits, increasing."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def normalize_wedge(indices: Sequence[int], n: int | None = None) -> tuple[int | None, int]:
    """Sort a wedge word ``dx_{i1} ^ ... ^ dx_{ik}``.

    Returns ``(mask, sign)`` with ``sign`` the parity of the sorting
    permutation.  A repeated index gives ``(None, 0)``: the word is zero.
    """
    for i in indices:
        if i < 1 or (n is not None and i > n):
            raise ValueError(f"wedge index {i} out of range for n={n}")
    if len(set(indices)) != len(indices):
        return None, 0
    inversions = sum(
        1 for a in range(len(indices)) for b in range(a + 1, len(indices)) if indices[a] > indices[b]
    )
    return indices_mask(indices), -1 if inversions % 2 else 1


def wedge_sign(a: int, b: int) -> int:
    """Sign of ``dx_A ^ dx_B`` relative to the sorted word of ``A | B``; 0 if they overlap."""
    if a & b:
        return 0
    swaps = 0
    while b:
        low = b & -b
        # generators of A sitting above this generator of B must be passed
        swaps += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


def _clean(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class SuperForm:
    """Immutable sparse element of ``R[x_1..x_n] (x) Lambda(dx_1..dx_n)``."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        if n < 1:
            raise ValueError("ambient dimension must be positive")
        clean = {}
        full = (1 << n) - 1
        for key, c in (terms or {}).items():
            exps, mask = key
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps) or mask & ~full:
                raise ValueError(f"monomial {key!r} does not live in n={n}")
            if not isinstance(c, Rational):
                raise TypeError(f"coefficients must be exact rationals, got {c!r}")
            c = _clean(Fraction(c)) if not isinstance(c, int) else c
            if c:
                key = (exps, mask)
                c = _clean(clean.get(key, 0) + c)
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", clean)

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "SuperForm":
        # trusted constructor: keys canonical, no zero values
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "_terms", terms)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("SuperForm is immutable")

    def __reduce__(self):
        return (SuperForm._raw, (self.n, self._terms))

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def coefficient(self, exps: Sequence[int], indices: Iterable[int] = ()) -> int | Fraction:
        return self._terms.get((tuple(exps), indices_mask(indices)), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, SuperForm):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, Rational) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def _check(self, other: "SuperForm"):
        if not isinstance(other, SuperForm):
            raise TypeError(f"expected SuperForm, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, Rational):
            other = SuperForm.constant(self.n, other)
        self._check(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = _clean(out.get(key, 0) + c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return SuperForm._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperForm._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, Rational):
            other = SuperForm.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SuperForm":
        if not isinstance(c, Rational):
            raise TypeError("scalars must be exact rationals")
        if c == 0:
            return SuperForm._raw(self.n, {})
        if not isinstance(c, int):
            c = Fraction(c)
        return SuperForm._raw(self.n, {k: _clean(v * c) for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        if isinstance(other, SuperForm):
            return wedge_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, SuperForm):
            return wedge_mul(self, other)
        return NotImplemented

    def __truediv__(self, c):
        return self.scale(Fraction(1) / Fraction(c))

    # -- grading ---------------------------------------------------------

    def bidegrees(self) -> list[Bidegree]:
        return sorted({Bidegree(sum(e), popcount(m)) for e, m in self._terms})

    @property
    def bidegree(self) -> Bidegree | None:
        """The common bidegree of a homogeneous nonzero form, else ``None``."""
        degs = self.bidegrees()
        return degs[0] if len(degs) == 1 else None

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SuperForm":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c=1) -> "SuperForm":
        return cls(n, {((0,) * n, 0): c})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int] = None, indices: Sequence[int] = (), c=1) -> "SuperForm":
        exps = tuple(exps) if exps is not None else (0,) * n
        mask, sign = normalize_wedge(tuple(indices), n)
        if sign == 0:
            return cls.zero(n)
        return cls(n, {(exps, mask): c * sign})

    @classmethod
    def x(cls, n: int, i: int, power: int = 1) -> "SuperForm":
        exps = [0] * n
        exps[i - 1] = power
        return cls.monomial(n, exps)

    @classmethod
    def dx(cls, n: int, *indices: int) -> "SuperForm":
        return cls.monomial(n, None, indices)

    def __repr__(self) -> str:
        return f"SuperForm({self.n}, {render(self)!r})"

    def __str__(self) -> str:
        return render(self)


@lru_cache(maxsize=1 << 16)
def _pair_sign(a: int, b: int) -> int:
    return wedge_sign(a, b)


def wedge_mul(a: SuperForm, b: SuperForm) -> SuperForm:
    """Super-commutative product: polynomial parts multiply, wedge words concatenate."""
    a._check(b)
    by_mask: dict = {}
    for (eb, mb), cb in b._terms.items():
        by_mask.setdefault(mb, []).append((eb, cb))
    out: dict = {}
    get = out.get
    for (ea, ma), ca in a._terms.items():
        for mb, group in by_mask.items():
            s = _pair_sign(ma, mb)
            if not s:
                continue
            m = ma | mb
            sc = s * ca
            for eb, cb in group:
                key = (tuple(map(add, ea, eb)), m)
                out[key] = get(key, 0) + sc * cb
    return SuperForm._raw(a.n, {k: _clean(v) for k, v in out.items() if v})


def bidegree_component(f: SuperForm, d: tuple[int, int]) -> SuperForm:
    l, k = d
    return SuperForm._raw(
        f.n, {key: c for key, c in f._terms.items() if sum(key[0]) == l and popcount(key[1]) == k}
    )


def homogeneous_components(f: SuperForm) -> dict[Bidegree, SuperForm]:
    parts: dict = {}
    for key, c in f._terms.items():
        parts.setdefault(Bidegree(sum(key[0]), popcount(key[1])), {})[key] = c
    return {d: SuperForm._raw(f.n, t) for d, t in sorted(parts.items())}


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the given degree, lexicographically decreasing."""
    if parts == 1:
        return ((total,),)
    return tuple(
        (first,) + rest for first in range(total, -1, -1) for rest in compositions(total - first, parts - 1)
    )


@lru_cache(maxsize=None)
def wedge_masks(n: int, k: int) -> tuple[int, ...]:
    return tuple(m for m in range(1 << n) if popcount(m) == k)


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: tuple[int, int]) -> tuple[Monomial, ...]:
    """Canonical ordered basis of the ``(l, k)`` component.

    Ordered by wedge mask ascending, then exponent vectors graded-lex
    decreasing (so ``x_1^l`` comes first).
    """
    l, k = d
    if l < 0 or k < 0 or k > n:
        return ()
    return tuple((e, m) for m in wedge_masks(n, k) for e in compositions(l, n))


@lru_cache(maxsize=None)
def basis_index(n: int, d: tuple[int, int]) -> dict:
    return {mon: i for i, mon in enumerate(monomial_basis(n, d))}


def component_dimension(n: int, d: tuple[int, int]) -> int:
    l, k = d
    if l < 0 or k < 0 or k > n:
        return 0
    return comb(n, k) * comb(l + n - 1, n - 1)


def monomial_form(n: int, mon: Monomial, c=1) -> SuperForm:
    return SuperForm._raw(n, {mon: c})


# -- text format -----------------------------------------------------------

def _term_key(key):
    exps, mask = key
    return (popcount(mask), mask, sum(exps), tuple(-e for e in exps))


def _fmt_coef(c) -> str:
    c = _clean(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def render_monomial(key) -> str:
    exps, mask = key
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    if mask:
        parts.append("dx(" + ",".join(str(i) for i in mask_indices(mask)) + ")")
    return " ".join(parts)


def render(f: SuperForm) -> str:
    """Render as ``c * x1^a1 ... dx(i1,...,ik)`` terms joined by `` + ``."""
    if not f._terms:
        return "0"
    out = []
    for key in sorted(f._terms, key=_term_key):
        mono = render_monomial(key)
        coef = _fmt_coef(f._terms[key])
        out.append(f"{coef} * {mono}" if mono else coef)
    return " + ".join(out)


_TERM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*(?:\*\s*(.*?))?\s*$")
_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?$")
_WEDGE = re.compile(r"dx\(([\d,\s]*)\)$")


def parse(text: str, n: int) -> SuperForm:
    """Inverse of :func:`render`; accepts ``xi`` or ``xi^a`` factors in any order."""
    text = text.strip()
    if text == "0":
        return SuperForm.zero(n)
    f = SuperForm.zero(n)
    for chunk in text.split(" + "):
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        coef = Fraction(m.group(1))
        exps = [0] * n
        indices: tuple[int, ...] = ()
        for tok in (m.group(2) or "").split():
            fm = _FACTOR.match(tok)
            wm = _WEDGE.match(tok)
            if fm:
                i = int(fm.group(1))
                if not 1 <= i <= n:
                    raise ValueError(f"variable x{i} out of range for n={n}")
                exps[i - 1] += int(fm.group(2) or 1)
            elif wm:
                body = wm.group(1).strip()
                indices = tuple(int(s) for s in body.split(",")) if body else ()
            else:
                raise ValueError(f"cannot parse factor {tok!r}")
        f = f + SuperForm.monomial(n, exps, indices, coef)
    return f
