"""Command-line surface: construct / verify / bounds / search / batch.

Machine-readable JSON goes to stdout (or --out); every payload is
wrapped in an envelope {"manifest": ..., "result": ...} whose manifest
records the command, parameters, seed, version, wall time and a sha256
digest of the canonical result JSON.  Identical command + seed gives a
byte-identical result (only the manifest wall time varies).

Exit codes: 0 report produced, 2 parameter violation, 3 malformed
input, 4 computation aborted by a size guard.  The environment variable
SUBSPACE_FORGE_GUARD (an integer) overrides both the field-order guard
and the AS-enumeration guard.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .gf import DEFAULT_SIZE_GUARD, SizeGuardError, field_from_order
from .matgf import MatrixGF
from .family import DEFAULT_AS_ENUM_GUARD, Family, build_report
from .constructions import (
    bounds_table,
    build_code_based_family,
    build_random_family,
    build_rs_family,
    growth_diagnostic,
    vandermonde_matrix,
)
from .batch import BatchCode, batch_s, verify_batch
from .search import SearchConfig, exhaustive_max_family, greedy_max_family

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_PARSE = 3
EXIT_GUARD = 4


class InputParseError(Exception):
    """Raised when an input file cannot be read or decoded."""


def _guards() -> tuple[int, int]:
    raw = os.environ.get("SUBSPACE_FORGE_GUARD")
    if raw is None:
        return DEFAULT_SIZE_GUARD, DEFAULT_AS_ENUM_GUARD
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputParseError(f"SUBSPACE_FORGE_GUARD must be an integer, got {raw!r}") from exc
    return value, value


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load_json_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputParseError(f"cannot read JSON from {path}: {exc}") from exc


def _load_family(path: str) -> Family:
    obj = _load_json_file(path)
    # accept a bare family, a construct envelope, or a {"family": ...} result
    if isinstance(obj, dict) and "result" in obj:
        obj = obj["result"]
    if isinstance(obj, dict) and "family" in obj:
        obj = obj["family"]
    if not isinstance(obj, dict) or "members" not in obj:
        raise InputParseError(f"{path} does not contain a family object")
    try:
        return Family.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"malformed family in {path}: {exc}") from exc


def _emit(result: dict, command: str, params: dict, seed, out, pretty: bool, t0: float) -> None:
    digest = hashlib.sha256(canonical_json(result).encode()).hexdigest()
    envelope = {
        "manifest": {
            "command": command,
            "parameters": params,
            "seed": seed,
            "version": __version__,
            "wall_time_s": round(time.time() - t0, 6),
            "digest": f"sha256:{digest}",
        },
        "result": result,
    }
    text = json.dumps(envelope, indent=2, sort_keys=True) if pretty else canonical_json(envelope)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--out", help="write the JSON envelope to this file instead of stdout")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    p.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker threads (results are identical for any value)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subspace-forge",
        description="Construct, verify, bound and search AAD/AS subspace families.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("construct", help="build a family and emit its JSON")
    pc.add_argument("kind", choices=["rs", "random", "code-based"])
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--k", type=int, required=True)
    pc.add_argument("--q", type=int, help="field order (prime power)")
    pc.add_argument("--L", type=int, help="AS target (random kind)")
    pc.add_argument("--seed", type=int, default=0, help="64-bit seed (random kind)")
    pc.add_argument("--max-rounds", type=int, default=None, help="AS pruning round cap (random kind)")
    pc.add_argument("--matrix", help="parity-check MatrixGF JSON file (code-based kind)")
    pc.add_argument(
        "--vandermonde-rows",
        type=int,
        default=None,
        help="build the parity check as the rows x q Vandermonde over GF(q) (code-based kind)",
    )
    _add_common(pc)

    pv = sub.add_parser("verify", help="verify a family file and emit the report")
    pv.add_argument("--family", required=True, help="family JSON file")
    pv.add_argument(
        "--properties",
        default="spread,aad,as,bound,relations",
        help="comma-separated subset of spread,aad,as,bound,relations",
    )
    _add_common(pv)

    pb = sub.add_parser("bounds", help="closed-form bounds for (n, k, L, q)")
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--k", type=int, required=True)
    pb.add_argument("--L", type=int, required=True)
    pb.add_argument("--q", type=int, required=True)
    _add_common(pb)

    ps = sub.add_parser("search", help="search for a maximal family at tiny parameters")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--k", type=int, required=True)
    ps.add_argument("--L", type=int, required=True)
    ps.add_argument("--q", type=int, required=True)
    ps.add_argument("--mode", choices=["exhaustive", "greedy"], default="exhaustive")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--node-budget", type=int, default=None)
    ps.add_argument("--no-symmetry-break", action="store_true")
    _add_common(ps)

    pba = sub.add_parser("batch", help="build a batch code from a family and verify it")
    pba.add_argument("--family", required=True, help="family JSON file")
    pba.add_argument("--s", type=int, default=None, help="request count (default floor(|F|/L))")
    pba.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    pba.add_argument("--trials", type=int, default=1000)
    pba.add_argument("--seed", type=int, default=0)
    pba.add_argument("--layout", action="store_true", help="include the parity position layout")
    _add_common(pba)

    return parser


def _cmd_construct(args, field_guard: int, as_guard: int) -> dict:
    if args.kind == "rs":
        if args.q is None:
            raise ValueError("--q is required for kind rs")
        field = field_from_order(args.q, field_guard)
        fam = build_rs_family(args.n, args.k, field)
        return {"family": fam.to_json(), "diagnostics": {"members": len(fam)}}
    if args.kind == "random":
        if args.q is None or args.L is None:
            raise ValueError("--q and --L are required for kind random")
        field = field_from_order(args.q, field_guard)
        res = build_random_family(
            args.n, args.k, args.L, field, args.seed, max_rounds=args.max_rounds, as_enum_guard=as_guard
        )
        return res.to_json()
    # code-based
    if args.matrix:
        obj = _load_json_file(args.matrix)
        if args.q is None:
            raise ValueError("--q is required to interpret --matrix entries")
        field = field_from_order(args.q, field_guard)
        try:
            H = MatrixGF.from_json(field, obj)
        except (KeyError, TypeError) as exc:
            raise InputParseError(f"malformed matrix in {args.matrix}: {exc}") from exc
    elif args.vandermonde_rows:
        if args.q is None:
            raise ValueError("--q is required with --vandermonde-rows")
        field = field_from_order(args.q, field_guard)
        H = vandermonde_matrix(field, args.vandermonde_rows)
    else:
        raise ValueError("kind code-based needs --matrix or --vandermonde-rows")
    fam = build_code_based_family(H, args.k)
    return {"family": fam.to_json(), "diagnostics": {"members": len(fam)}}


def _cmd_verify(args, as_guard: int) -> dict:
    fam = _load_family(args.family)
    props = [p.strip() for p in args.properties.split(",") if p.strip()]
    report = build_report(fam, props, as_enum_guard=as_guard)
    return {
        "family_size": len(fam),
        "growth_log_q": float(growth_diagnostic(fam)) if len(fam) else None,
        "report": report.to_json(),
    }


def _cmd_search(args) -> dict:
    field = field_from_order(args.q)
    cfg = SearchConfig(
        field,
        args.n,
        args.k,
        args.L,
        mode=args.mode,
        symmetry_break=not args.no_symmetry_break,
    )
    if args.node_budget is not None:
        cfg.node_budget = args.node_budget
    if args.mode == "greedy":
        fam = greedy_max_family(cfg, args.seed)
        return {"mode": "greedy", "size": len(fam), "family": fam.to_json()}
    return exhaustive_max_family(cfg).to_json()


def _cmd_batch(args) -> dict:
    fam = _load_family(args.family)
    code = BatchCode(fam)
    s = args.s if args.s is not None else batch_s(len(fam), code.L_aad)
    ok, counterexample = verify_batch(code, s, mode=args.mode, trials=args.trials, seed=args.seed)
    result = {
        "N": code.N,
        "K": code.K,
        "s": s,
        "L_aad": code.L_aad,
        "mode": args.mode,
        "verified": ok,
        "counterexample": list(counterexample) if counterexample else None,
    }
    if args.layout:
        result["layout"] = code.layout_json()
    return result


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        field_guard, as_guard = _guards()
        if args.command == "construct":
            result = _cmd_construct(args, field_guard, as_guard)
            seed = args.seed if args.kind == "random" else None
            command = f"construct {args.kind}"
        elif args.command == "verify":
            result = _cmd_verify(args, as_guard)
            seed = None
            command = "verify"
        elif args.command == "bounds":
            result = bounds_table(args.n, args.k, args.L, args.q).to_json()
            seed = None
            command = "bounds"
        elif args.command == "search":
            result = _cmd_search(args)
            seed = args.seed
            command = "search"
        else:
            result = _cmd_batch(args)
            seed = args.seed
            command = "batch"
    except InputParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS

    params = {
        k: v
        for k, v in vars(args).items()
        if k not in {"command", "out", "pretty", "func"} and v is not None
    }
    _emit(result, command, params, seed, args.out, args.pretty, t0)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
