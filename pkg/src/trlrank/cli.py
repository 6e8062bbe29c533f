"""Command-line surface: tensor generation and machine-readable reports.

Reports go to stdout as JSON (schema "trl-1"); logs go to stderr.  Exact
big counts are serialized as decimal strings, floats appear only for
analytic-rank values.  Exit codes: 0 ok, 2 input/validation error,
3 budget exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .bounds import chain_report
from .counting import (
    DEFAULT_MAX_POINTS,
    DEFAULT_MAX_VECTORS,
    PointCount,
    ScanRow,
    liminf_scan,
    point_count_bruteforce,
    point_count_stratified,
)
from .errors import (
    BudgetExceededError,
    InvariantViolationError,
    TrlrankError,
    ValidationError,
)
from .exactlinalg import is_prime
from .geometric import DEFAULT_MODULAR_PRIMES, GrResult, gr_exact, gr_modular
from .groebner import DEFAULT_MAX_PAIRS, Budget
from .tensor import (
    Hypergraph3,
    Tensor3,
    hypergraph_tensor,
    identity_tensor,
    matmul_tensor,
    random_tensor,
    w_tensor,
)
from .tensorfile import dump_tensor, load_tensor, tensor_to_doc

SCHEMA = "trl-1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4


def _parse_ints(text: str, n: int | None = None) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"cannot parse integer list {text!r}") from exc
    if n is not None and len(vals) != n:
        raise ValidationError(f"expected {n} comma-separated integers, got {text!r}")
    return vals


def _parse_primes(text: str) -> list[int]:
    """Either a comma list "53,59,61" or an inclusive range "2..47"
    (primes within it)."""
    text = text.strip()
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError as exc:
            raise ValidationError(f"cannot parse prime range {text!r}") from exc
        primes = [p for p in range(max(2, lo), hi + 1) if is_prime(p)]
        if not primes:
            raise ValidationError(f"no primes in range {text!r}")
        return primes
    primes = _parse_ints(text)
    for p in primes:
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
    return primes


def _parse_range(text: str) -> tuple[int, int]:
    if ".." not in text:
        raise ValidationError(f"coefficient range must look like '-2..2', got {text!r}")
    lo_s, hi_s = text.split("..", 1)
    try:
        return int(lo_s), int(hi_s)
    except ValueError as exc:
        raise ValidationError(f"cannot parse coefficient range {text!r}") from exc


def _generate(args) -> Tensor3:
    family = args.family
    if family == "identity":
        (r,) = _parse_ints(_require(args.params, "--params"), 1)
        return identity_tensor(r)
    if family == "w":
        return w_tensor()
    if family == "matmul":
        e, h, l = _parse_ints(_require(args.params, "--params"), 3)
        return matmul_tensor(e, h, l)
    if family == "hypergraph":
        params = _require(args.params, "--params")
        parts = [s for s in params.split(";") if s.strip()]
        if not parts:
            raise ValidationError("hypergraph params: 'n;i,j,k;i,j,k;...'")
        n = int(parts[0])
        gens = [_parse_ints(s, 3) for s in parts[1:]]
        return hypergraph_tensor(Hypergraph3.from_generators(n, gens))
    if family == "random":
        dims = _parse_ints(_require(args.dims, "--dims"), 3)
        lo, hi = _parse_range(_require(args.coeff_range, "--coeff-range"))
        return random_tensor(dims, lo, hi, args.seed)
    raise ValidationError(f"unknown family {family!r}")


def _require(value, flag: str):
    if value is None:
        raise ValidationError(f"{flag} is required for this family")
    return value


def _point_count_doc(pc: PointCount) -> dict:
    return {
        "prime": pc.prime,
        "count": str(pc.count),
        "ambient": pc.ambient,
        "ar": pc.ar,
    }


def _gr_doc(g: GrResult) -> dict:
    doc = {"gr": g.gr, "method": g.method, "ambient": g.ambient, "dim": g.dim}
    if g.evidence is not None:
        doc["evidence"] = [_point_count_doc(pc) for pc in g.evidence]
        doc["consensus_ok"] = g.consensus_ok
    return doc


def _scan_row_doc(row: ScanRow) -> dict:
    if row.point_count is None:
        return {"prime": row.prime, "error": row.error}
    return _point_count_doc(row.point_count)


def _emit(doc: dict, t0: float):
    doc["schema"] = SCHEMA
    doc["version"] = __version__
    doc["wall_time_s"] = round(time.monotonic() - t0, 6)
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _budget(args) -> Budget:
    return Budget(max_pairs=args.max_pairs, seconds=args.budget_seconds)


def cmd_gen(args) -> int:
    t = _generate(args)
    if args.out:
        with open(args.out, "w") as fp:
            dump_tensor(t, fp)
        print(f"wrote {args.out} ({t})", file=sys.stderr)
    else:
        json.dump(tensor_to_doc(t), sys.stdout, indent=2)
        sys.stdout.write("\n")
    return EXIT_OK


def cmd_gr(args) -> int:
    t0 = time.monotonic()
    t = load_tensor(args.tensor)
    if args.method == "exact":
        res = gr_exact(t, axis=args.axis, budget=_budget(args))
    else:
        primes = _parse_primes(args.primes) if args.primes else list(DEFAULT_MODULAR_PRIMES)
        res = gr_modular(t, primes, max_vectors=args.max_vectors, workers=args.workers)
    doc = {"command": "gr", "dims": list(t.dims)}
    doc.update(_gr_doc(res))
    doc["budgets"] = {
        "max_pairs": args.max_pairs,
        "budget_seconds": args.budget_seconds,
        "max_vectors": args.max_vectors,
    }
    _emit(doc, t0)
    return EXIT_OK


def cmd_ar(args) -> int:
    t0 = time.monotonic()
    t = load_tensor(args.tensor)
    if args.method == "stratified":
        pc = point_count_stratified(
            t,
            args.prime,
            enum_axis=args.enum_axis,
            max_vectors=args.max_vectors,
            workers=args.workers,
        )
    else:
        pc = point_count_bruteforce(
            t, args.prime, max_points=args.max_points, workers=args.workers
        )
    doc = {"command": "ar", "dims": list(t.dims), "method": args.method}
    doc.update(_point_count_doc(pc))
    doc["budgets"] = {"max_vectors": args.max_vectors, "max_points": args.max_points}
    _emit(doc, t0)
    return EXIT_OK


def cmd_scan(args) -> int:
    t0 = time.monotonic()
    t = load_tensor(args.tensor)
    primes = _parse_primes(args.primes)
    rows = liminf_scan(
        t, primes, enum_axis=args.enum_axis, max_vectors=args.max_vectors, workers=args.workers
    )
    doc = {
        "command": "scan",
        "dims": list(t.dims),
        "rows": [_scan_row_doc(r) for r in rows],
        "budgets": {"max_vectors": args.max_vectors},
    }
    _emit(doc, t0)
    return EXIT_OK


def cmd_chain(args) -> int:
    t0 = time.monotonic()
    t = load_tensor(args.tensor)
    primes = _parse_primes(args.primes) if args.primes else None
    rep = chain_report(
        t,
        primes=primes,
        budget=_budget(args),
        max_vectors=args.max_vectors,
        workers=args.workers,
    )
    doc = {
        "command": "chain",
        "dims": list(rep.dims),
        "flattening_ranks": list(rep.flattening),
        "sr_upper": rep.sr_upper,
        "subrank_lower": rep.subrank_lower,
        "gr": _gr_doc(rep.gr) if rep.gr is not None else None,
        "ar_samples": [_scan_row_doc(r) for r in rep.ar_samples] if rep.ar_samples else None,
        "matmul_oracle": rep.matmul_oracle,
        "missing": rep.missing,
        "budgets": {
            "max_pairs": args.max_pairs,
            "budget_seconds": args.budget_seconds,
            "max_vectors": args.max_vectors,
        },
    }
    _emit(doc, t0)
    return EXIT_OK


def _add_budget_flags(p: argparse.ArgumentParser, pairs=False, vectors=False, points=False):
    if pairs:
        p.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS,
                       help="S-pair budget for Groebner runs")
        p.add_argument("--budget-seconds", type=float, default=None,
                       help="wall-clock budget for Groebner runs")
    if vectors:
        p.add_argument("--max-vectors", type=int, default=DEFAULT_MAX_VECTORS,
                       help="stratified enumeration budget")
    if points:
        p.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS,
                       help="brute-force enumeration budget")
    p.add_argument("--workers", type=int, default=1,
                   help="worker count for counting kernels (result-invariant)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trlrank",
        description="Rank parameters of explicit small 3-tensors: geometric rank "
        "(exact and modular), analytic rank, and bound chains.",
    )
    ap.add_argument("--version", action="version", version=f"trlrank {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a tensor file")
    g.add_argument("--family", required=True,
                   choices=["identity", "w", "matmul", "hypergraph", "random"])
    g.add_argument("--params", help="identity: 'r'; matmul: 'e,h,l'; hypergraph: 'n;i,j,k;...'")
    g.add_argument("--dims", help="random family: 'n1,n2,n3'")
    g.add_argument("--coeff-range", help="random family: 'lo..hi'")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output path (default: stdout)")
    g.set_defaults(fn=cmd_gen)

    r = sub.add_parser("gr", help="geometric rank of a tensor file")
    r.add_argument("tensor")
    r.add_argument("--method", choices=["exact", "modular"], default="exact")
    r.add_argument("--axis", type=int, choices=[0, 1, 2], default=2,
                   help="eliminated axis for the exact method")
    r.add_argument("--primes", help="modular method: '53,59,61' or '50..80'")
    _add_budget_flags(r, pairs=True, vectors=True)
    r.set_defaults(fn=cmd_gr)

    a = sub.add_parser("ar", help="analytic rank / exact point count at one prime")
    a.add_argument("tensor")
    a.add_argument("--prime", type=int, required=True)
    a.add_argument("--method", choices=["stratified", "bruteforce"], default="stratified")
    a.add_argument("--enum-axis", type=int, choices=[0, 1, 2], default=None)
    _add_budget_flags(a, vectors=True, points=True)
    a.set_defaults(fn=cmd_ar)

    s = sub.add_parser("scan", help="per-prime AR table")
    s.add_argument("tensor")
    s.add_argument("--primes", required=True, help="'2..47' or '2,3,5,7'")
    s.add_argument("--enum-axis", type=int, choices=[0, 1, 2], default=None)
    _add_budget_flags(s, vectors=True)
    s.set_defaults(fn=cmd_scan)

    c = sub.add_parser("chain", help="assembled bound-chain report")
    c.add_argument("tensor")
    c.add_argument("--primes", help="optional AR sample primes")
    _add_budget_flags(c, pairs=True, vectors=True)
    c.set_defaults(fn=cmd_chain)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolationError as exc:
        print(f"internal invariant violated (this is a bug): {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except TrlrankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
