"""Command line front end.

    ppcount table --qmax 11
    ppcount count --field 2^3 --method criterion
    ppcount verify --field 7 --seed 42
    ppcount bound-report --qmax 11

Exit codes: 0 success, 2 mismatch or failed check, 3 method/range error,
4 unparsable field spec.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bounds, counting
from .counting import CountResult, RangeExceeded, SubsetMask
from .gf import FieldError, FieldSpec, build_field, parse_field_spec, prime_power, prime_powers

# N as printed in the published table
PUBLISHED_TABLE = {2: 0, 3: 0, 4: 12, 5: 20, 7: 630, 8: 5368, 9: 42120, 11: 3634950}

EXIT_OK, EXIT_MISMATCH, EXIT_RANGE, EXIT_FIELD = 0, 2, 3, 4
DEFAULT_SEED = 20240521
NS_ENUM_LIMIT = 10**9


@dataclass
class RunConfig:
    field: str | None = None
    method: str = "auto"
    workers: int | None = None
    format: str | None = None
    cache: Path | None = None
    recompute: bool = False
    timing: bool = False
    seed: int = DEFAULT_SEED


class ResultCache:
    """Newline-delimited JSON CountResult records keyed by field spec."""

    def __init__(self, path: Path | None):
        self.path = path
        self.records: dict[str, CountResult] = {}
        if path is not None and path.exists():
            for line in path.read_text().splitlines():
                if line.strip():
                    r = CountResult.from_json(json.loads(line))
                    self.records[r.field] = r

    def get(self, field: str) -> CountResult | None:
        return self.records.get(field)

    def put(self, result: CountResult):
        if self.path is None or result.field in self.records:
            return
        self.records[result.field] = result
        with self.path.open("a") as fh:
            fh.write(json.dumps(result.to_json()) + "\n")


class CacheMismatch(Exception):
    pass


def _default_field(q: int) -> FieldSpec:
    return FieldSpec(*prime_power(q))


def _compute(spec: FieldSpec, cfg: RunConfig, cache: ResultCache, use_cache: bool = True):
    """Count for one field, consulting the cache; returns (result, from_cache)."""
    key = str(spec)
    cached = cache.get(key)
    if cached is not None and use_cache and not cfg.recompute:
        return cached, True
    result = counting.count(build_field(spec), cfg.method, workers=cfg.workers)
    if cached is not None and cached.N != result.N:
        raise CacheMismatch(f"q={spec.q}: cached N={cached.N} but recomputed N={result.N}")
    cache.put(result)
    return result, False


def _emit(text: str):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _markdown(header, rows) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- table ------------------------------------------------------------------------------

def cmd_table(qmax: int, cfg: RunConfig) -> int:
    if qmax > 20:
        print(f"error: --qmax must be <= 20, got {qmax}", file=sys.stderr)
        return EXIT_RANGE
    cache = ResultCache(cfg.cache)
    rows = []
    failures = []
    for q in prime_powers(2, qmax):
        try:
            res, _ = _compute(_default_field(q), cfg, cache)
        except RangeExceeded as exc:
            print(f"error: q={q}: {exc}", file=sys.stderr)
            return EXIT_RANGE
        except CacheMismatch as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MISMATCH
        expected = PUBLISHED_TABLE.get(q)
        if expected is None:
            ok = bounds.theorem_report(q, res.N).theorem_holds if q <= 64 else True
            status = "extended" if ok else "BOUND-VIOLATION"
            if not ok:
                failures.append(f"q={q}: N={res.N} violates the theorem bound")
        elif expected == res.N:
            status = "match"
        else:
            status = "MISMATCH"
            failures.append(f"q={q}: expected N={expected} (published table), got N={res.N}")
        rows.append((res, expected, status))

    fmt = cfg.format or "markdown"
    if fmt == "json":
        for res, expected, status in rows:
            d = {"q": res.q, "N": str(res.N), "factorial": str(math.factorial(res.q - 1)),
                 "method": res.method, "published": None if expected is None else str(expected),
                 "status": status, "field": res.field}
            if cfg.timing:
                d["elapsed_s"] = round(res.elapsed, 6)
            _emit(json.dumps(d))
    elif fmt == "csv":
        header = ["q", "N", "(q-1)!", "method", "published", "status"] + (["elapsed_s"] if cfg.timing else [])
        out = [[str(r.q), str(r.N), str(math.factorial(r.q - 1)), r.method,
                "" if e is None else str(e), s] + ([f"{r.elapsed:.6f}"] if cfg.timing else [])
               for r, e, s in rows]
        _emit(_csv(header, out))
    else:
        header = ["q"] + [str(r.q) for r, _, _ in rows]
        body = [["N"] + [str(r.N) for r, _, _ in rows],
                ["(q-1)!"] + [str(math.factorial(r.q - 1)) for r, _, _ in rows],
                ["method"] + [r.method for r, _, _ in rows],
                ["published"] + ["-" if e is None else str(e) for _, e, _ in rows],
                ["status"] + [s for _, _, s in rows]]
        if cfg.timing:
            body.append(["time (s)"] + [f"{r.elapsed:.3f}" for r, _, _ in rows])
        _emit(_markdown(header, body))
    for msg in failures:
        print(f"mismatch: {msg}", file=sys.stderr)
    return EXIT_MISMATCH if failures else EXIT_OK


# -- count -------------------------------------------------------------------------------

def cmd_count(cfg: RunConfig) -> int:
    try:
        spec = parse_field_spec(cfg.field)
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIELD
    if cfg.method not in ("auto",) + counting.METHODS:
        print(f"error: unknown method {cfg.method!r}", file=sys.stderr)
        return EXIT_RANGE
    cache = ResultCache(cfg.cache)
    try:
        res, _ = _compute(spec, cfg, cache, use_cache=False)
    except RangeExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except CacheMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    fmt = cfg.format or "json"
    if fmt == "json":
        _emit(json.dumps(res.to_json(timing=cfg.timing)))
    elif fmt == "csv":
        header = [h for h in CountResult.CSV_HEADER if cfg.timing or h != "elapsed_s"]
        row = [v for h, v in zip(CountResult.CSV_HEADER, res.to_csv_row())
               if cfg.timing or h != "elapsed_s"]
        _emit(_csv(header, [row]))
    else:
        header = ["q", "N", "(q-1)!", "method", "field"]
        row = [str(res.q), str(res.N), str(math.factorial(res.q - 1)), res.method, res.field]
        if cfg.timing:
            header.append("time (s)")
            row.append(f"{res.elapsed:.3f}")
        _emit(_markdown(header, [row]))
    return EXIT_OK


# -- verify ------------------------------------------------------------------------------

def _sample_subsets(q: int, count: int, rng, max_size: int | None = None) -> list[SubsetMask]:
    if max_size is None or max_size >= q:
        return counting.random_subsets(q, count, rng)
    out = []
    for _ in range(count):
        k = int(rng.integers(0, max_size + 1))
        out.append(SubsetMask.of(q, rng.choice(q, size=k, replace=False).tolist()))
    return out


def _subsets(q: int, rng, count: int, exhaustive_upto: int = 5):
    if q <= exhaustive_upto:
        return [SubsetMask(q, m) for m in range(1 << q)], f"all {1 << q} subsets"
    return counting.random_subsets(q, count, rng), f"{count} random subsets"


def verify_suites(spec: FieldSpec, seed: int, workers: int | None = None):
    """Yield (name, status, detail) with status in PASS / FAIL / SKIP."""
    F = build_field(spec)
    q = F.q
    rng = np.random.default_rng(seed)

    # field axioms
    if q <= 16:
        triples = [(a, b, c) for a in F.elements for b in F.elements for c in F.elements]
        how = "exhaustive"
    else:
        triples = [tuple(int(v) for v in t) for t in rng.integers(0, q, size=(10_000, 3))]
        how = "10000 random triples"
    ok = all(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
             and F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
             and F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)) for a, b, c in triples)
    ok = ok and all(F.mul(a, F.inv(a)) == 1 and F.add(a, F.neg(a)) == 0 for a in range(1, q))
    yield "field-axioms", ok, how

    from .gf import orthogonality_sum

    ok = all(orthogonality_sum(F, x) == (q if x == 0 else 0) for x in F.elements)
    yield "orthogonality", ok, f"all {q} elements"

    subs, how = _subsets(q, rng, 100)
    yield "parseval", all(bounds.parseval_check(F, S) for S in subs), how

    subs, how = _subsets(q, rng, 100)
    yield "complement-symmetry", all(counting.complement_symmetry_check(F, S) for S in subs), how

    smax = max(s for s in range(q + 1) if s**q <= NS_ENUM_LIMIT)
    if q <= 5:
        subs, how = [SubsetMask(q, m) for m in range(1 << q)], f"all {1 << q} subsets"
    else:
        subs, how = _sample_subsets(q, 50, rng, smax), "50 random subsets"
    ok = all(counting.ns_formula(F, S) == counting.ns_bruteforce(F, S, NS_ENUM_LIMIT)
             for S in subs)
    yield "ns-formula-vs-bruteforce", ok, how

    N = None
    if 2 < q <= 11:
        crit = counting.count_exhaustive(F, workers=workers).N
        incl = counting.count_inclusion_exclusion(F).N
        N = crit
        yield "inclusion-exclusion", incl == crit, f"N = {incl} (criterion {crit})"
    else:
        yield "inclusion-exclusion", None, "skipped (range)"

    qs = sorted(set(range(2, 12)) | ({q} if q <= 64 else set()))
    detail = "q = 2..11" + (f" and q = {q}" if q > 11 else "")
    yield "surjection", all(counting.surjection_identity_check(k) for k in qs), detail

    yield "bino", all(bounds.binom_sum_identity(k) for k in range(2, 65)), "q = 2..64"

    ok = all(bounds.central_binom_check(n) for n in range(1, 129)) and \
        all(bounds.summ_check(k) for k in range(2, 65))
    yield "central-binomial", ok, "n = 1..128, summ form q = 2..64"

    subs = counting.random_subsets(q, 200, rng)
    yield "amgm", all(bounds.amgm_check(F, S) for S in subs), "200 random subsets"

    if q == 2:
        yield "chain", None, "skipped (needs q > 2)"
    elif q <= 16:
        if N is None:
            N = counting.count(F, "auto", workers=workers).N
        rep = bounds.theorem_report(q, N, F)
        yield "chain", rep.chain_holds and rep.ok, \
            f"{rep.deviation} <= {rep.bravoigor_rhs:.6g} <= {rep.fine_rhs:.6g} <= {rep.theorem_rhs:.6g}"
    else:
        yield "chain", None, "skipped (range)"


def cmd_verify(cfg: RunConfig) -> int:
    try:
        spec = parse_field_spec(cfg.field)
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIELD
    failed = []
    fmt = cfg.format or "text"
    for name, ok, detail in verify_suites(spec, cfg.seed, cfg.workers):
        status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        if ok is False:
            failed.append(name)
        if fmt == "json":
            _emit(json.dumps({"suite": name, "status": status, "detail": detail}))
        else:
            _emit(f"{status}  {name:<25} {detail}")
    if failed:
        print("failed suites: " + ", ".join(failed), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# -- bound-report ---------------------------------------------------------------------------

def cmd_bound_report(qmax: int, cfg: RunConfig) -> int:
    if qmax > 16:
        print(f"error: --qmax must be <= 16, got {qmax}", file=sys.stderr)
        return EXIT_RANGE
    cache = ResultCache(cfg.cache)
    reports = []
    for q in prime_powers(2, qmax):
        spec = _default_field(q)
        try:
            res, _ = _compute(spec, cfg, cache)
        except RangeExceeded as exc:
            print(f"error: q={q}: {exc}", file=sys.stderr)
            return EXIT_RANGE
        except CacheMismatch as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_MISMATCH
        reports.append(bounds.theorem_report(q, res.N, build_field(spec)))

    fmt = cfg.format or "markdown"
    if fmt == "json":
        for r in reports:
            _emit(json.dumps(r.to_json()))
    elif fmt == "csv":
        _emit(_csv(bounds.BoundReport.MARKDOWN_HEADER, [r.markdown_cells() for r in reports]))
    else:
        _emit(_markdown(bounds.BoundReport.MARKDOWN_HEADER, [r.markdown_cells() for r in reports]))
        _emit(f"\nsqrt(2e/pi) = {bounds.THEOREM_CONSTANT:.6f} (proved), "
              f"sqrt(e/2pi) = {bounds.CONJECTURED_CONSTANT:.6f} (suggested, not asserted)")
    bad = [r.q for r in reports if not r.ok]
    if bad:
        print(f"bound check failed for q = {bad}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------------

def _global_options(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "csv", "markdown"), default=d(None))
    parser.add_argument("--workers", type=int, default=d(None),
                        help=f"worker processes (default: ${counting.WORKERS_ENV} or CPU count)")
    parser.add_argument("--cache", type=Path, default=d(None),
                        help="newline-delimited JSON results cache")
    parser.add_argument("--recompute", action="store_true", default=d(False),
                        help="recompute cached counts and compare")
    parser.add_argument("--timing", action="store_true", default=d(False),
                        help="include elapsed times in the output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppcount",
        description="Count permutations of GF(q) whose permutation polynomial has degree < q-2.")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="reproduce the table of N")
    p.add_argument("--qmax", type=int, default=11)

    p = sub.add_parser("count", parents=[common], help="count N for one field")
    p.add_argument("--field", required=True, help='"q", "p^f" or "p^f/c_f,...,c_0"')
    p.add_argument("--method", default="auto",
                   help="auto, interpolation, criterion, inclexcl or permanent")

    p = sub.add_parser("verify", parents=[common], help="run the identity and inequality suites")
    p.add_argument("--field", required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("bound-report", parents=[common], help="bound margins per q")
    p.add_argument("--qmax", type=int, default=11)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(field=getattr(args, "field", None), method=getattr(args, "method", "auto"),
                    workers=args.workers, format=args.format, cache=args.cache,
                    recompute=args.recompute, timing=args.timing,
                    seed=getattr(args, "seed", DEFAULT_SEED))
    if args.command == "table":
        return cmd_table(args.qmax, cfg)
    if args.command == "count":
        return cmd_count(cfg)
    if args.command == "verify":
        return cmd_verify(cfg)
    return cmd_bound_report(args.qmax, cfg)


if __name__ == "__main__":
    sys.exit(main())
