"""Command-line entry points.

Exit codes: 0 ok, 1 usage, 2 parse/input error, 3 verification divergence,
4 referee cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from collections import deque

from . import oracle
from .formats import ParseError, StatsWriter, StreamSource, save_snapshot, write_snapshot
from .window import LANDMARK, SLIDING, StreamDriver, WindowConfig, replay

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_DIVERGENCE = 3
EXIT_CAP = 4


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad arguments; usage errors are exit 1 here
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="streamclose",
                description="Closed-itemset mining over transaction windows.")
    sub = p.add_subparsers(dest="command", required=True)

    mine = sub.add_parser("mine", help="replay a stream and emit results")
    mine.add_argument("--input", required=True, help="FIMI-style transaction file")
    mine.add_argument("--window", type=int, help="sliding window capacity")
    mine.add_argument("--mode", choices=(SLIDING, LANDMARK), default=SLIDING)
    mine.add_argument("--min-supp", type=int, default=1, dest="min_supp")
    mine.add_argument("--emit-snapshot", dest="emit_snapshot",
                      help="write the final snapshot here (default: stdout)")
    mine.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    mine.add_argument("--stats", help="write per-transaction stats CSV here")
    mine.add_argument("--snapshot-every", type=int, default=0, dest="snapshot_every",
                      help="also write a snapshot every k transactions "
                           "(suffixes the --emit-snapshot path with the shift number)")

    verify = sub.add_parser("verify", help="replay while cross-checking every "
                                           "shift against the brute-force referee")
    verify.add_argument("--input", required=True)
    verify.add_argument("--window", type=int, required=True)
    verify.add_argument("--max-cis", type=int, default=oracle.DEFAULT_CI_CAP,
                        dest="max_cis")

    orc = sub.add_parser("oracle", help="print the closed itemsets of the whole file")
    orc.add_argument("--input", required=True)

    return p


def _cmd_mine(args) -> int:
    if args.mode == SLIDING and args.window is None:
        sys.stderr.write("streamclose mine: error: sliding mode needs --window\n")
        return EXIT_USAGE
    if args.snapshot_every > 0 and not args.emit_snapshot:
        sys.stderr.write("streamclose mine: error: --snapshot-every needs --emit-snapshot\n")
        return EXIT_USAGE
    try:
        config = WindowConfig(capacity=args.window, mode=args.mode,
                              min_supp=args.min_supp)
    except ValueError as e:
        sys.stderr.write(f"streamclose mine: error: {e}\n")
        return EXIT_USAGE

    source = StreamSource(args.input)
    driver = StreamDriver(config, dictionary=source.dictionary)
    stats_file = open(args.stats, "w", encoding="utf-8", newline="") if args.stats else None
    try:
        writer = StatsWriter(stats_file) if stats_file else None
        for rec in replay(source, config, driver=driver,
                          snapshot_every=args.snapshot_every):
            if writer:
                writer.write(rec)
            if rec.snapshot is not None:
                save_snapshot(f"{args.emit_snapshot}.{rec.shift:08d}",
                              rec.snapshot, args.format)
        final = driver.snapshot()
        if args.emit_snapshot:
            save_snapshot(args.emit_snapshot, final, args.format)
        else:
            sys.stdout.write(write_snapshot(final, args.format))
    finally:
        if stats_file:
            stats_file.close()
    return EXIT_OK


def _diff_families(got: dict, want: dict, dictionary) -> str:
    def name(items):
        return " ".join(str(dictionary.token(a)) for a in sorted(items))

    lines = []
    for x in sorted(set(want) - set(got), key=sorted):
        lines.append(f"  missing: {name(x)} (support {want[x]})")
    for x in sorted(set(got) - set(want), key=sorted):
        lines.append(f"  extra:   {name(x)} (support {got[x]})")
    for x in sorted(set(got) & set(want), key=sorted):
        if got[x] != want[x]:
            lines.append(f"  support: {name(x)} miner={got[x]} referee={want[x]}")
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    try:
        config = WindowConfig(capacity=args.window, mode=SLIDING, min_supp=1)
    except ValueError as e:
        sys.stderr.write(f"streamclose verify: error: {e}\n")
        return EXIT_USAGE
    source = StreamSource(args.input)
    driver = StreamDriver(config, dictionary=source.dictionary)
    engine = driver.engine
    window: deque[tuple[int, tuple]] = driver.buffer
    shift_no = 0

    def check(rep) -> str | None:
        db = {t: frozenset(x) for t, x in window}
        want = oracle.closed_itemsets(db, args.max_cis)
        got = {frozenset(x): s for x, s in engine.snapshot(1)}
        if got != want:
            return (f"divergence at shift {shift_no} ({rep.kind} tid {rep.tid}):\n"
                    f"{_diff_families(got, want, driver.dictionary)}\n")
        return None

    # step the engine directly so both halves of a push get checked
    for items in source:
        if len(window) >= config.capacity:
            old_tid, old_items = window.popleft()
            rep = engine.shift_remove(old_tid, old_items)
            shift_no += 1
            problem = check(rep)
            if problem:
                sys.stderr.write(problem)
                return EXIT_DIVERGENCE
        tid = driver.next_tid
        driver.next_tid += 1
        rep = engine.shift_add(tid, items)
        window.append((tid, items))
        shift_no += 1
        problem = check(rep)
        if problem:
            sys.stderr.write(problem)
            return EXIT_DIVERGENCE
    sys.stdout.write(f"ok: {shift_no} shifts verified, "
                     f"{driver.live_cis} closed itemsets live\n")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    source = StreamSource(args.input)
    db = {i: frozenset(items) for i, items in enumerate(source)}
    fam = oracle.closed_itemsets(db)
    tok = source.dictionary.token
    rows = sorted((tuple(sorted(items)), supp) for items, supp in fam.items())
    out = [(tuple(tok(a) for a in items), supp) for items, supp in rows]
    sys.stdout.write(write_snapshot(out, "tsv"))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "mine":
            return _cmd_mine(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
    except ParseError as e:
        sys.stderr.write(f"streamclose: parse error: {e}\n")
        return EXIT_PARSE
    except OSError as e:
        sys.stderr.write(f"streamclose: input error: {e}\n")
        return EXIT_PARSE
    except oracle.CapExceededError as e:
        sys.stderr.write(f"streamclose: {e}\n")
        return EXIT_CAP
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
