"""Constant-coefficient differential and contraction operators on superforms.

Conventions: ``D_l = sum_i d^l/dx_i^l`` acting on coefficients,
``delta_l = sum_j (d/dx_j)^l iota(dx_j)``, ``d_j = sum_l (d/dx_l)^j dx_l ^``.
The pairing is the apolar one, ``<x^a dx_S, x^b dx_T> = a! [a = b][S = T]``,
under which multiplication by ``p_l`` is adjoint to ``D_l`` and left
multiplication by ``dp_l`` is adjoint to ``l * delta_{l-1}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .forms import SuperForm, popcount

_DEBUG = False


def set_debug(on: bool) -> None:
    """Check the bidegree shift of every operator application."""
    global _DEBUG
    _DEBUG = bool(on)

KINDS = ("D", "delta", "d", "exterior_d", "iota", "partial")


@dataclass(frozen=True)
class OperatorTag:
    """A named operator of the family, e.g. ``OperatorTag("delta", 2)``."""

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.index < 0:
            raise ValueError("operator index must be non-negative")

    def __call__(self, f: SuperForm) -> SuperForm:
        if self.kind == "D":
            return op_D(self.index, f)
        if self.kind == "delta":
            return op_delta(self.index, f)
        if self.kind == "d":
            return op_d(self.index, f)
        if self.kind == "exterior_d":
            return exterior_derivative(f)
        if self.kind == "iota":
            return iota(self.index, f)
        raise ValueError("partial needs a variable and an order; call partial() directly")

    def shift(self) -> tuple[int, int]:
        """Bidegree change ``(dl, dk)``."""
        return {
            "D": (-self.index, 0),
            "delta": (-self.index, -1),
            "d": (-self.index, 1),
            "exterior_d": (-1, 1),
            "iota": (0, -1),
        }[self.kind]


def _falling(a: int, j: int) -> int:
    return prod(range(a - j + 1, a + 1))


def _acc(out: dict, key, v):
    v = out.get(key, 0) + v
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _check_shift(f: SuperForm, g: SuperForm, dl: int, dk: int):
    if not _DEBUG:
        return
    want = {(l + dl, k + dk) for l, k in f.bidegrees()}
    got = set(g.bidegrees())
    assert got <= want, f"bidegree contract violated: {got} not within {want}"


def partial(f: SuperForm, i: int, order: int = 1) -> SuperForm:
    """``(d/dx_i)^order`` applied to every coefficient."""
    if not 1 <= i <= f.n:
        raise ValueError(f"variable index {i} out of range")
    if order == 0:
        return f
    out: dict = {}
    for (exps, mask), c in f.items():
        a = exps[i - 1]
        if a < order:
            continue
        new = list(exps)
        new[i - 1] = a - order
        _acc(out, (tuple(new), mask), c * _falling(a, order))
    return SuperForm._raw(f.n, out)


def op_D(l: int, f: SuperForm) -> SuperForm:
    """``sum_i (d/dx_i)^l``; ``D_0`` is ``n`` times the identity."""
    if l < 0:
        raise ValueError("D_l needs l >= 0")
    n = f.n
    out: dict = {}
    for (exps, mask), c in f.items():
        for i in range(n):
            a = exps[i]
            if a < l:
                continue
            new = list(exps)
            new[i] = a - l
            _acc(out, (tuple(new), mask), c * _falling(a, l))
    g = SuperForm._raw(n, out)
    _check_shift(f, g, -l, 0)
    return g


def _below(mask: int, i: int) -> int:
    # number of wedge generators with index < i
    return popcount(mask & ((1 << (i - 1)) - 1))


def iota(j: int, f: SuperForm) -> SuperForm:
    """Contraction with ``dx_j``: removes ``dx_j`` at position r with sign ``(-1)^(r-1)``."""
    if not 1 <= j <= f.n:
        raise ValueError(f"iota index {j} out of range")
    bit = 1 << (j - 1)
    out: dict = {}
    for (exps, mask), c in f.items():
        if mask & bit:
            sign = -1 if _below(mask, j) & 1 else 1
            _acc(out, (exps, mask ^ bit), sign * c)
    return SuperForm._raw(f.n, out)


def op_delta(l: int, f: SuperForm) -> SuperForm:
    if l < 0:
        raise ValueError("delta_l needs l >= 0")
    n = f.n
    out: dict = {}
    for (exps, mask), c in f.items():
        m = mask
        while m:
            low = m & -m
            m ^= low
            j = low.bit_length() - 1
            a = exps[j]
            if a < l:
                continue
            new = list(exps)
            new[j] = a - l
            sign = -1 if popcount(mask & (low - 1)) & 1 else 1
            _acc(out, (tuple(new), mask ^ low), sign * c * _falling(a, l))
    g = SuperForm._raw(n, out)
    _check_shift(f, g, -l, -1)
    return g


def op_d(j: int, f: SuperForm) -> SuperForm:
    """``sum_l (d/dx_l)^j f dx_l ^ ...``; ``d_0`` is left multiplication by ``u``."""
    if j < 0:
        raise ValueError("d_j needs j >= 0")
    n = f.n
    out: dict = {}
    for (exps, mask), c in f.items():
        for l in range(n):
            low = 1 << l
            if mask & low:
                continue
            a = exps[l]
            if a < j:
                continue
            new = list(exps)
            new[l] = a - j
            sign = -1 if popcount(mask & (low - 1)) & 1 else 1
            _acc(out, (tuple(new), mask | low), sign * c * _falling(a, j))
    g = SuperForm._raw(n, out)
    _check_shift(f, g, -j, 1)
    return g


def exterior_derivative(f: SuperForm) -> SuperForm:
    return op_d(1, f)


def inner(a: SuperForm, b: SuperForm) -> int | Fraction:
    """Apolar pairing; the ``dx_S`` form an orthonormal basis."""
    a._check(b)
    if len(b) < len(a):
        a, b = b, a
    total = 0
    bt = b.terms
    for key, c in a.items():
        other = bt.get(key)
        if other is not None:
            total += c * other * prod(factorial(e) for e in key[0])
    return total


def apply_sequence(ops, f: SuperForm) -> SuperForm:
    """Apply ``ops[0] o ops[1] o ...`` (rightmost first)."""
    for op in reversed(list(ops)):
        f = op(f)
    return f


def random_form(n: int, rng: random.Random, terms: int = 4, max_degree: int = 4) -> SuperForm:
    """Sparse form with a few random super-monomials and small rational coefficients."""
    out = {}
    for _ in range(rng.randint(1, terms)):
        exps = tuple(rng.randint(0, max_degree) for _ in range(n))
        mask = rng.getrandbits(n)
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))
        out[(exps, mask)] = out.get((exps, mask), 0) + c
    return SuperForm(n, out)


def anticommutator_defect(r: int, s: int, f: SuperForm) -> SuperForm:
    """``d_r delta_s f + delta_s d_r f - D_{r+s} f`` (zero when the identity holds)."""
    return op_d(r, op_delta(s, f)) + op_delta(s, op_d(r, f)) - op_D(r + s, f)


def verify_anticommutator(n: int, samples: int = 200, seed: int = 0, max_order: int = 3):
    from .report import Report

    rep = Report("anticommutator", n)
    for r in range(max_order + 1):
        for s in range(max_order + 1):
            rng = random.Random(f"{seed}:{n}:{r}:{s}")
            bad = 0
            for _ in range(samples):
                if anticommutator_defect(r, s, random_form(n, rng)):
                    bad += 1
            rep.add({"r": r, "s": s}, expected=0, got=bad, ok=bad == 0, samples=samples)
    return rep
