"""Command-line front end: series, verification reports, bases, conjecture evidence."""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from . import __version__
from .cache import ResultCache
from .config import load_config
from .forms import render
from .linalg import DEFAULT_COMPONENT_CAP, ResourceLimitError, component_cap, set_component_cap
from .parallel import resolve_workers, set_default_workers
from .report import Report
from .symfunc import BigradedSeries, alternant_hilbert_closed, default_cutoff, invariant_hilbert_closed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VERIFY_KINDS = (
    "all",
    "free-generation",
    "alternants",
    "coefficients",
    "complement",
    "degree-bound",
    "top-degree",
    "mult",
    "regseq",
    "anticommutator",
)
ALL_ORDER = VERIFY_KINDS[1:]
# older spellings kept as accepted names
VERIFY_ALIASES = {"solomon": "free-generation", "theorem13": "alternants"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bidegree(text: str) -> tuple[int, int]:
    try:
        l, k = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected L,K, got {text!r}") from None
    if l < 0 or k < 0:
        raise argparse.ArgumentTypeError("bidegree entries must be non-negative")
    return l, k


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, help="worker processes (default: SUPERFORM_THREADS or config, else 1)")
    common.add_argument("--config", help="JSON config file (component_cap, workers, cache_dir)")
    common.add_argument("--cache-dir", help="directory of the result cache")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write cached results")
    common.add_argument("--component-cap", type=_positive, help="largest component dimension to build")
    common.add_argument("--debug", action="store_true", help="check operator bidegree shifts")

    p = _Parser(prog="superforms", description="Exact verification suite for polynomial differential forms.")
    p.add_argument("--version", action="version", version=f"superforms {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("series", parents=[common], help="bigraded Hilbert series")
    s.add_argument("which", choices=("invariants", "alternants", "quotient"))
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--cutoff", type=int, help="largest q-degree (invariants and quotient)")
    s.add_argument("--closed", action="store_true", help="print the product formula instead of computing")
    s.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", parents=[common], help="run verification reports")
    v.add_argument("which", choices=VERIFY_KINDS + tuple(VERIFY_ALIASES))
    v.add_argument("--n", type=_positive, required=True)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--samples", type=_positive, default=200, help="random forms per (r, s) for anticommutator")
    v.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("basis", parents=[common], help="print a basis")
    b.add_argument("which", choices=("omega", "harmonic", "multiplicities"))
    b.add_argument("--n", type=_positive, required=True)
    b.add_argument("--bidegree", type=_bidegree)
    b.add_argument("--format", choices=("text", "json", "csv"), default="text")

    c = sub.add_parser("conjecture", parents=[common], help="conjecture evidence table")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--multisets", action="store_true", help="also allow repeated d_j indices")
    c.add_argument("--max-n", type=_positive, default=4)
    c.add_argument("--format", choices=("text", "json"), default="text")

    k = sub.add_parser("cache", parents=[common], help="manage the result cache")
    k.add_argument("action", choices=("clear",))
    return p


# -- commands ----------------------------------------------------------------

def _series(args, cache: ResultCache) -> tuple[str, int]:
    n = args.n
    if args.which == "alternants":
        if args.closed:
            series = alternant_hilbert_closed(n)
        else:
            series = _cached_series(cache, "series:alternants", n, {}, lambda: _alternant_series(n))
    elif args.which == "invariants":
        cutoff = default_cutoff(n) if args.cutoff is None else args.cutoff
        if args.closed:
            series = invariant_hilbert_closed(n, cutoff)
        else:
            series = _cached_series(cache, "series:invariants", n, {"cutoff": cutoff},
                                    lambda: _invariant_series(n, cutoff), cutoff)
    else:
        from .harmonics import quotient_hilbert

        if args.closed:
            raise ValueError("the quotient series has no closed form here; drop --closed")
        lmax = comb(n, 2) + 1 if args.cutoff is None else args.cutoff
        series = _cached_series(cache, "series:quotient", n, {"lmax": lmax}, lambda: quotient_hilbert(n, lmax))
    text = series.dumps() if args.format == "json" else str(series)
    return text, EXIT_OK


def _cached_series(cache, kind, n, params, compute, cutoff=None) -> BigradedSeries:
    key = cache.key(kind, n, cap=component_cap(), **params)
    hit = cache.get(key)
    if hit is not None:
        try:
            return BigradedSeries.from_json(hit, cutoff)
        except (KeyError, TypeError, ValueError):
            pass
    series = compute()
    cache.put(key, series.to_json())
    return series


def _alternant_series(n: int) -> BigradedSeries:
    from .harmonics import harmonic_space

    coeffs = {}
    for k in range(n + 1):
        for l in range(comb(n, 2) + 1):
            coeffs[(l, k)] = harmonic_space(n, (l, k)).isotypic_dimension("sign")
    return BigradedSeries(coeffs)


def _invariant_series(n: int, cutoff: int) -> BigradedSeries:
    from .invariants import invariant_dimension

    return BigradedSeries(
        {(l, k): invariant_dimension(n, (l, k)) for k in range(n + 1) for l in range(cutoff + 1)}, cutoff
    )


def _verify_one(kind: str, n: int, args) -> list[Report]:
    if kind == "free-generation":
        from .invariants import jacobian_identity_check, verify_free_generation

        return [verify_free_generation(n), jacobian_identity_check(n)]
    if kind == "alternants":
        from .harmonics import verify_alternant_series

        return [verify_alternant_series(n)]
    if kind == "coefficients":
        from .harmonics import designated_coefficient_check

        return [designated_coefficient_check(n)]
    if kind == "complement":
        from .harmonics import verify_complementarity

        return [verify_complementarity(n)]
    if kind == "degree-bound":
        from .harmonics import verify_degree_bound

        return [verify_degree_bound(n)]
    if kind == "top-degree":
        from .harmonics import verify_top_degree

        return [verify_top_degree(n)]
    if kind == "mult":
        from .characters import verify_invariant_series_via_characters, verify_hook_multiplicities

        return [verify_hook_multiplicities(n), verify_invariant_series_via_characters(n)]
    if kind == "regseq":
        from .regseq import verify_regseq

        return [verify_regseq(n)]
    if kind == "anticommutator":
        from .operators import verify_anticommutator

        return [verify_anticommutator(n, samples=args.samples, seed=args.seed)]
    raise ValueError(f"unknown verification {kind!r}")


def _verify(args, cache: ResultCache) -> tuple[str, int]:
    which = VERIFY_ALIASES.get(args.which, args.which)
    kinds = ALL_ORDER if which == "all" else (which,)
    reports: list[Report] = []
    for kind in kinds:
        params = {"samples": args.samples, "seed": args.seed} if kind == "anticommutator" else {}
        key = cache.key(f"verify:{kind}", args.n, cap=component_cap(), **params)
        hit = cache.get(key)
        got = None
        if hit is not None:
            try:
                got = [Report.from_json(r) for r in hit]
            except (KeyError, TypeError):
                got = None
        if got is None:
            got = _verify_one(kind, args.n, args)
            cache.put(key, [r.to_json() for r in got])
        reports.extend(got)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        text = json.dumps([r.to_json() for r in reports], sort_keys=True)
    else:
        lines = [r.table() for r in reports]
        lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
        text = "\n".join(lines)
    return text, EXIT_OK if ok else EXIT_FAIL


def _basis(args) -> tuple[str, int]:
    n = args.n
    if args.which == "omega":
        from .harmonics import hook_sets, omega, omega_bidegree

        items = []
        for m in hook_sets(n):
            d = omega_bidegree(m, n)
            if args.bidegree is not None and tuple(d) != args.bidegree:
                continue
            items.append({"indices": list(m), "bidegree": list(d), "form": render(omega(m, n))})
        payload = {"n": n, "kind": "omega", "forms": items}
    elif args.which == "harmonic":
        from .harmonics import harmonic_space

        if args.bidegree is None:
            raise ValueError("basis harmonic needs --bidegree L,K")
        space = harmonic_space(n, args.bidegree)
        items = [{"bidegree": list(args.bidegree), "form": render(f)} for f in space.basis.rows]
        payload = {"n": n, "kind": "harmonic", "bidegree": list(args.bidegree), "forms": items}
    else:
        from .characters import multiplicity_table

        table = multiplicity_table(n)
        if args.format == "csv":
            return table.to_csv().rstrip("\n"), EXIT_OK
        if args.format == "json":
            return table.dumps(), EXIT_OK
        return table.to_csv().rstrip("\n"), EXIT_OK
    if args.format == "json":
        return json.dumps(payload, sort_keys=True), EXIT_OK
    if args.format == "csv":
        raise ValueError("csv output is only available for multiplicities")
    lines = []
    for item in payload["forms"]:
        label = f" {item['indices']}" if "indices" in item else ""
        lines.append(f"({item['bidegree'][0]},{item['bidegree'][1]}){label}: {item['form']}")
    return "\n".join(lines) if lines else "(empty)", EXIT_OK


def _conjecture(args) -> tuple[str, int]:
    from .conjecture import BANNER, conjecture_report

    rep = conjecture_report(args.n, multisets=args.multisets, max_n=args.max_n)
    if args.format == "json":
        return rep.dumps(), EXIT_OK if rep.passed else EXIT_FAIL
    return f"*** {BANNER} ***\n" + rep.table(), EXIT_OK if rep.passed else EXIT_FAIL


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        # process-wide settings are reset on every call
        set_component_cap(args.component_cap or cfg.component_cap or DEFAULT_COMPONENT_CAP)
        set_default_workers(resolve_workers(args.threads, cfg.workers))
        from .operators import set_debug

        set_debug(args.debug)
        cache = ResultCache(args.cache_dir or cfg.cache_dir, enabled=not args.no_cache)
        if args.command == "cache":
            removed = cache.clear()
            text, code = f"removed {removed} cached entries", EXIT_OK
        elif args.command == "series":
            text, code = _series(args, cache)
        elif args.command == "verify":
            text, code = _verify(args, cache)
        elif args.command == "basis":
            text, code = _basis(args)
        else:
            text, code = _conjecture(args)
    except ResourceLimitError as exc:
        print(f"superforms: resource limit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"superforms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
