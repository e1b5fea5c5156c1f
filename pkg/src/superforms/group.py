"""Diagonal action of S_n on superforms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from typing import Iterator

from .forms import SuperForm, _clean, indices_mask, mask_indices, monomial_basis


@dataclass(frozen=True)
class Permutation:
    """``images[i - 1] = s(i)``; composition ``(s * t)(i) = s(t(i))``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        img = list(range(1, n + 1))
        img[i - 1], img[j - 1] = j, i
        return cls(tuple(img))

    @classmethod
    def from_cycles(cls, n: int, *cycles) -> "Permutation":
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return cls(tuple(img))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise ValueError("permutation size mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycle_type(self) -> tuple[int, ...]:
        seen = set()
        parts = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            length = 0
            i = start
            while i not in seen:
                seen.add(i)
                i = self(i)
                length += 1
            parts.append(length)
        return tuple(sorted(parts, reverse=True))

    @property
    def sign(self) -> int:
        return -1 if (self.n - len(self.cycle_type())) % 2 else 1


def all_permutations(n: int) -> Iterator[Permutation]:
    for img in permutations(range(1, n + 1)):
        yield Permutation(img)


@lru_cache(maxsize=None)
def _group(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    return tuple((p.images, p.sign) for p in all_permutations(n))


def act_monomial(images: tuple[int, ...], key) -> tuple[tuple, int]:
    """Image of ``x^a dx_S`` under the permutation, as ``(key, sign)``."""
    exps, mask = key
    new = [0] * len(exps)
    for i, e in enumerate(exps):
        if e:
            new[images[i] - 1] = e
    if not mask:
        return (tuple(new), 0), 1
    word = [images[i - 1] for i in mask_indices(mask)]
    inv = 0
    for a in range(len(word)):
        wa = word[a]
        for b in range(a + 1, len(word)):
            if wa > word[b]:
                inv += 1
    return (tuple(new), indices_mask(word)), -1 if inv & 1 else 1


def act(s: Permutation, f: SuperForm) -> SuperForm:
    if s.n != f.n:
        raise ValueError(f"permutation of {s.n} letters cannot act on forms in n={f.n}")
    out = {}
    for key, c in f.items():
        new, sign = act_monomial(s.images, key)
        out[new] = c if sign > 0 else -c
    return SuperForm._raw(f.n, out)


def project_isotypic(f: SuperForm, mode: str = "invariant") -> SuperForm:
    """Average of ``act(s, f)`` (weighted by ``sgn(s)`` in sign mode) over S_n."""
    if mode not in ("invariant", "sign"):
        raise ValueError(f"unknown isotypic mode {mode!r}")
    out: dict = {}
    for images, sg in _group(f.n):
        w = sg if mode == "sign" else 1
        for key, c in f.items():
            new, sign = act_monomial(images, key)
            v = out.get(new, 0) + w * sign * c
            if v:
                out[new] = v
            else:
                out.pop(new, None)
    scale = Fraction(1, factorial(f.n))
    return SuperForm._raw(f.n, {k: _clean(v * scale) for k, v in out.items()})


def adjacent_transpositions(n: int) -> list[Permutation]:
    return [Permutation.transposition(n, i, i + 1) for i in range(1, n)]


def is_invariant(f: SuperForm) -> bool:
    return all(act(s, f) == f for s in adjacent_transpositions(f.n))


def is_alternant(f: SuperForm) -> bool:
    return all(act(s, f) == -f for s in adjacent_transpositions(f.n))


# -- conjugacy classes -----------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of n in reverse lexicographic order, e.g. (3), (2,1), (1,1,1)."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(n - first, first))
    return tuple(out)


def class_size(cycle_type: tuple[int, ...]) -> int:
    n = sum(cycle_type)
    z = 1
    for part in set(cycle_type):
        mult = cycle_type.count(part)
        z *= part**mult * factorial(mult)
    return factorial(n) // z


def class_representative(cycle_type: tuple[int, ...]) -> Permutation:
    """Cycles on consecutive integers, longest first: (3,1) -> (1 2 3)(4)."""
    n = sum(cycle_type)
    cycles = []
    start = 1
    for part in cycle_type:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(n, *cycles)


def conjugacy_classes(n: int) -> list[tuple[tuple[int, ...], int, Permutation]]:
    """``(cycle type, class size, representative)``, identity class first."""
    if n < 1:
        raise ValueError("n must be positive")
    return [(c, class_size(c), class_representative(c)) for c in reversed(partitions(n))]


# -- orbit coordinates for the isotypic projectors ---------------------------

@lru_cache(maxsize=64)
def orbit_table(n: int, d: tuple[int, int], mode: str) -> dict:
    """Coordinates of the isotypic projection of each basis monomial.

    The projection of every monomial of the component is ``c * A_O`` for the
    orbit sum ``A_O`` of its orbit ``O`` (zero when the stabiliser acts by
    -1).  Returns ``{monomial: (orbit id, c)}`` for monomials with nonzero
    projection; orbit ids are numbered in basis order.
    """
    table: dict = {}
    seen: set = set()
    orbit_id = 0
    group = _group(n)
    for rep in monomial_basis(n, d):
        if rep in seen:
            continue
        # sign with which s maps rep onto each orbit element (weighted in sign mode)
        images: dict = {}
        vanishes = False
        for img, sg in group:
            new, sign = act_monomial(img, rep)
            w = sign * (sg if mode == "sign" else 1)
            prev = images.get(new)
            if prev is None:
                images[new] = w
            elif prev != w:
                vanishes = True
        seen.update(images)
        if vanishes:
            continue
        # projection(rep) = (|Stab|/n!) * sum_m w_m m; projection(m) = w_m * projection(rep)
        for mon, w in images.items():
            table[mon] = (orbit_id, w)
        orbit_id += 1
    return table


def isotypic_coordinates(f: SuperForm, d: tuple[int, int], mode: str) -> dict[int, int | Fraction]:
    """Projection of the ``d`` component of ``f`` written in orbit-sum coordinates.

    Agrees with :func:`project_isotypic` up to the fixed nonzero scale of each
    orbit sum, so ranks computed from these coordinates are exact.
    """
    table = orbit_table(f.n, tuple(d), mode)
    out: dict = {}
    for key, c in f.items():
        hit = table.get(key)
        if hit is None:
            continue
        oid, w = hit
        v = out.get(oid, 0) + w * c
        if v:
            out[oid] = v
        else:
            out.pop(oid, None)
    return out


def group_order(n: int) -> int:
    return prod(range(1, n + 1))
