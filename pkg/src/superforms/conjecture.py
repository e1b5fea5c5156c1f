"""Evidence harness: images of harmonic polynomials under products of ``d_j``.

Compares the span of ``d_{j_1} ... d_{j_k} h`` (``h`` harmonic) with the
space of harmonic forms.  Only the sign-isotypic parts are asserted to agree;
full agreement is recorded as evidence.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

from .forms import Bidegree, compositions, homogeneous_components
from .harmonics import HarmonicSpace, harmonic_poly_space, harmonic_space, hook_sets, omega
from .linalg import SubspaceBasis, guard, span
from .operators import op_d, partial
from .parallel import map_cells
from .report import Report

BANNER = "CONJECTURE EVIDENCE - NOT A PROOF"

__all__ = ["BANNER", "conjecture_span", "derivative_span", "conjecture_report"]


def _sequences(n: int, k: int, multisets: bool):
    pool = range(1, n)
    return combinations_with_replacement(pool, k) if multisets else combinations(pool, k)


def conjecture_span(n: int, d, multisets: bool = False, max_n: int = 4) -> SubspaceBasis:
    """Span of ``d_{j_1} ... d_{j_k} h`` in bidegree ``d``.

    ``j_1 < ... < j_k`` run over ``1..n-1`` (with repeats when ``multisets``)
    and ``h`` over a basis of harmonic polynomials of degree ``l + sum j``.
    """
    if n > max_n:
        raise ValueError(f"n={n} exceeds the configured limit {max_n}")
    d = Bidegree(*d)
    guard(n, d)
    l, k = d
    forms = []
    if l >= 0 and 0 <= k <= n:
        for seq in _sequences(n, k, multisets):
            for h in harmonic_poly_space(n, l + sum(seq)).rows:
                f = h
                for j in reversed(seq):
                    f = op_d(j, f)
                if f:
                    forms.append(f)
    return span(forms, n, d)


@lru_cache(maxsize=None)
def derivative_span(n: int) -> dict:
    """``{bidegree: basis}`` of all partial derivatives of the alternants ``omega``."""
    by_degree: dict = {}
    for m in hook_sets(n):
        w = omega(m, n)
        top = max((sum(e) for e, _ in w.terms), default=0)
        for total in range(top + 1):
            for a in compositions(total, n):
                f = w
                for i, e in enumerate(a, start=1):
                    if e:
                        f = partial(f, i, e)
                if not f:
                    continue
                for deg, part in homogeneous_components(f).items():
                    by_degree.setdefault(tuple(deg), []).append(part)
    return {d: span(forms, n, d) for d, forms in sorted(by_degree.items())}


def _conjecture_job(n: int, l: int, k: int, multisets: bool, max_n: int):
    d = (l, k)
    harm = harmonic_space(n, d)
    conj = conjecture_span(n, d, multisets=multisets, max_n=max_n)
    if not harm.dimension and not conj.rank:
        return None
    contained = all(harm.basis.contains(f) for f in conj.rows)
    alt_h = harm.isotypic_dimension("sign")
    alt_c = HarmonicSpace(n, Bidegree(*d), conj).isotypic_dimension("sign")
    der = derivative_span(n).get(d)
    return {
        "harmonic": harm.dimension,
        "span": conj.rank,
        "alt_harmonic": alt_h,
        "alt_span": alt_c,
        "contained": contained,
        "derivatives": der.rank if der is not None else 0,
    }


def conjecture_report(n: int, multisets: bool = False, max_n: int = 4, workers: int | None = None) -> Report:
    if n > max_n:
        raise ValueError(f"n={n} exceeds the configured limit {max_n}")
    rep = Report("conjecture", n)
    rep.note(BANNER)
    cells = [(n, l, k, multisets, max_n) for k in range(n + 1) for l in range(comb(n, 2) + 1)]
    for (_, l, k, _, _), c in zip(cells, map_cells(_conjecture_job, cells, workers)):
        if c is None:
            continue
        rep.add([l, k], expected=c["alt_harmonic"], got=c["alt_span"],
                ok=c["contained"] and c["alt_harmonic"] == c["alt_span"], part="alternant", contained=c["contained"])
        rep.add([l, k], expected=c["harmonic"], got=c["span"], ok=c["harmonic"] == c["span"],
                informational=True, part="full")
        rep.add([l, k], expected=c["harmonic"], got=c["derivatives"], ok=c["harmonic"] == c["derivatives"],
                informational=True, part="alternant-derivatives")
    return rep
