"""Command-line surface.

Three subcommands: ``verify`` runs registered claims over flag-chosen
ranges, ``classify`` emits the regular-subgroup classification as JSON,
and ``scan`` streams one NDJSON record per inverse-closed connection
set.  Identical invocations produce byte-identical record streams
(deterministic ordering, no timestamps inside records; runtimes go to
stderr).

Exit codes: 0 all passed, 1 verification failure, 2 usage error,
3 resource bound exceeded (override with --force).

Element notation used in reports: "a^3*x*y^2" means translate by 3,
then negate, then multiply by 5^2; "1" is the identity.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import circulant as circ_mod
from . import claims
from . import regular_classify as rc

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BOUND = 3

DEFAULT_MAX_HOL_WIDTH = 8


def _config() -> dict:
    path = os.environ.get("HOLOCIRC_CONFIG")
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _max_degree(force: bool) -> Optional[int]:
    if force:
        return None  # caller-asserted: no bound
    cfg = _config()
    env = os.environ.get("HOLOCIRC_MAX_DEGREE")
    if env:
        return int(env)
    return int(cfg.get("max_degree", circ_mod.DEFAULT_MAX_DEGREE))


def _max_hol_width(force: bool) -> int:
    if force:
        return 64
    cfg = _config()
    return int(cfg.get("max_hol_width", DEFAULT_MAX_HOL_WIDTH))


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def _parse_shard(text: str) -> tuple[int, int]:
    a, b = text.split("/", 1)
    shard, shards = int(a), int(b)
    if shards < 1 or not 0 <= shard < shards:
        raise ValueError(f"bad shard {text!r}")
    return shard, shards


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(records, indent=2, sort_keys=True) + "\n")
    elif fmt == "ndjson":
        for record in records:
            out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        for record in records:
            out.write(_as_text(record) + "\n")


def _as_text(record: dict) -> str:
    return " ".join(f"{k}={json.dumps(v, sort_keys=True)}" for k, v in record.items())


def cmd_verify(args: argparse.Namespace) -> int:
    if args.claim == "all":
        ids = claims.claim_ids()
    elif args.claim in claims.REGISTRY:
        ids = [args.claim]
    else:
        print(f"unknown claim {args.claim!r}; known: {', '.join(claims.claim_ids())}",
              file=sys.stderr)
        return EXIT_USAGE

    params: dict = {}
    if args.n is not None:
        lo, hi = _parse_range(args.n)
        cap = _max_hol_width(args.force)
        if hi > cap:
            print(f"width {hi} exceeds bound {cap} (use --force)", file=sys.stderr)
            return EXIT_BOUND
        params["n"] = (lo, hi)
    if args.modulus is not None:
        cap = _max_degree(args.force)
        if cap is not None and args.modulus > cap:
            print(f"modulus {args.modulus} exceeds bound {cap} (use --force)",
                  file=sys.stderr)
            return EXIT_BOUND
        params["modulus"] = args.modulus
    if args.samples is not None:
        params["samples"] = args.samples
    if args.seed is not None:
        params["seed"] = args.seed

    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        failed = False
        records = []
        for claim_id in ids:
            report = claims.run_claim(claim_id, params)
            failed |= report.status == "fail"
            records.append(report.to_dict())
            print(
                f"[{report.status}] {claim_id}: {claims.REGISTRY[claim_id].description}"
                f" ({report.runtime:.2f}s)",
                file=sys.stderr,
            )
        _emit(records, args.format, out)
        return EXIT_FAIL if failed else EXIT_OK
    finally:
        if args.out:
            out.close()


def cmd_classify(args: argparse.Namespace) -> int:
    lo, hi = _parse_range(args.n)
    if lo < 3 or hi > rc.STRUCTURED_ENUM_MAX_N:
        print(
            f"classification covers widths 3..{rc.STRUCTURED_ENUM_MAX_N}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    cap = _max_hol_width(args.force)
    if hi > cap:
        print(f"width {hi} exceeds bound {cap} (use --force)", file=sys.stderr)
        return EXIT_BOUND
    records = []
    for n in range(lo, hi + 1):
        reps = [r.to_dict() | {"role": "representative"} for r in rc.representatives(n)]
        records.extend(reps)
        if n <= rc.FULL_ENUM_MAX_N:
            found = [
                r.to_dict() | {"role": "enumerated"}
                for r in rc.enumerate_regular_subgroups(n)
            ]
            records.extend(found)
        coincidences = rc.representative_coincidences(n)
        if coincidences:
            records.append(
                {
                    "role": "coincidence",
                    "n": n,
                    "types": [[t.label() for t in grp] for grp in coincidences],
                }
            )
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        _emit(records, args.format, out)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    n = args.modulus
    cap = _max_degree(args.force)
    if cap is not None and n > cap:
        print(f"modulus {n} exceeds bound {cap} (use --force)", file=sys.stderr)
        return EXIT_BOUND
    conn = [int(tok) for tok in args.set.split(",") if tok.strip()] if args.set else []
    circ = circ_mod.build(n, conn)
    if args.edges:
        with open(args.edges, "w", encoding="utf-8") as fh:
            for u, v in circ.edges():
                fh.write(f"{u} {v}\n")
    aut = circ_mod.automorphism_group(circ, cap)
    verdict = circ_mod.nnn_verdict(circ, aut)
    record = {
        "n": n,
        "S": sorted(circ.conn),
        "aut_order": aut.order,
        "aut_G_S": list(circ_mod.aut_G_S(circ)),
        "normal": verdict.is_normal_for_GR,
        "within_holomorph": aut.within_holomorph,
        "w_subgroups": circ_mod.w_subgroups(circ),
        "regular_cyclic_subgroups": [
            {
                "generator": [c.generator.t, c.generator.m],
                "normal_in_aut": c.normal_in_aut,
                "is_translation_group": c.is_translation_group,
            }
            for c in verdict.regular_cyclic
        ],
        "nnn": verdict.nnn,
        "connected": circ.is_connected(),
        "degenerate": circ.is_degenerate(),
    }
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        _emit([record], args.format, out)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    n = args.modulus
    cap = _max_degree(args.force)
    if cap is not None and n > cap:
        print(f"modulus {n} exceeds bound {cap} (use --force)", file=sys.stderr)
        return EXIT_BOUND
    total = circ_mod.census_size(n)
    shard, shards = _parse_shard(args.shard) if args.shard else (0, 1)
    start, stop = circ_mod.shard_bounds(total, shard, shards)

    t0 = time.perf_counter()
    if args.jobs > 1 and stop - start > 1:
        chunk_bounds = [
            (start + (stop - start) * i // args.jobs,
             start + (stop - start) * (i + 1) // args.jobs)
            for i in range(args.jobs)
        ]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = pool.map(
                _scan_chunk,
                [(n, lo, hi, args.connected_only, cap) for lo, hi in chunk_bounds],
            )
        records = [record for chunk in chunks for record in chunk]
    else:
        records = circ_mod.scan_range(n, start, stop, args.connected_only, cap)
    records.sort(key=lambda r: r["mask"])

    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        _emit(records, args.format, out)
    finally:
        if args.out:
            out.close()
    print(
        f"scanned {stop - start} connection sets on Z_{n} in "
        f"{time.perf_counter() - t0:.2f}s",
        file=sys.stderr,
    )
    return EXIT_OK


def _scan_chunk(job: tuple) -> list[dict]:
    n, lo, hi, connected_only, cap = job
    return circ_mod.scan_range(n, lo, hi, connected_only, cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holocirc",
        description=(
            "exact holomorph arithmetic, regular-subgroup classification, "
            "and normality scans for circulant graphs"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a registered claim check")
    p_verify.add_argument("claim", help="claim id, or 'all'")
    p_verify.add_argument("--n", help="width or width range, e.g. 4 or 3..5")
    p_verify.add_argument("--modulus", type=int, help="graph modulus for scan claims")
    p_verify.add_argument("--samples", type=int, help="randomized sample count")
    p_verify.add_argument("--seed", type=int, help="randomized seed")
    p_verify.set_defaults(func=cmd_verify)

    p_classify = sub.add_parser("classify", help="regular-subgroup classification")
    p_classify.add_argument("--n", required=True, help="width or range, 3..8")
    p_classify.set_defaults(func=cmd_classify)

    p_graph = sub.add_parser("graph", help="analyze one circulant")
    p_graph.add_argument("--modulus", type=int, required=True)
    p_graph.add_argument(
        "--set", required=True, help="comma-separated connection set, e.g. 1,3,13,15"
    )
    p_graph.add_argument("--edges", help="also write an edge list ('u v' lines) here")
    p_graph.set_defaults(func=cmd_graph)

    p_scan = sub.add_parser("scan", help="census scan of one modulus")
    p_scan.add_argument("--modulus", type=int, required=True)
    p_scan.add_argument("--shard", help="A/B: contiguous shard A of B")
    p_scan.add_argument("--connected-only", action="store_true")
    p_scan.set_defaults(func=cmd_scan)

    for p in (p_verify, p_classify, p_graph, p_scan):
        p.add_argument("--format", choices=("json", "ndjson", "text"), default="ndjson")
        p.add_argument("--out", help="write records to this path instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument(
            "--force", action="store_true", help="override configured resource bounds"
        )
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except circ_mod.DegreeBoundError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
