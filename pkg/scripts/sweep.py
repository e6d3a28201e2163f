"""Closed form vs oracle over every Coxeter word of the given types.

    python3 scripts/sweep.py --types A1-6,B2-5,C3-5,D4-6,F4,G2 --out sweep.json
"""
import argparse
import json
import re
import time

from clusterex.rootsys import build_root_system
from clusterex.verify import aggregate, parse_coxeter, verify_words


def expand(spec: str) -> list[tuple[str, int]]:
    out = []
    for part in spec.split(","):
        m = re.fullmatch(r"([A-G])(\d+)(?:-(\d+))?", part.strip().upper())
        if not m:
            raise SystemExit(f"bad type spec {part!r}")
        lo = int(m.group(2))
        hi = int(m.group(3) or lo)
        out.extend((m.group(1), n) for n in range(lo, hi + 1))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--types", default="A1-6,B2-5,C3-5,D4-6,F4,G2")
    ap.add_argument("--coxeter", default="all")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--level", default="structural", choices=("structural", "symbolic"))
    ap.add_argument("--no-tau", action="store_true")
    ap.add_argument("--out")
    args = ap.parse_args()

    rows = []
    for family, rank in expand(args.types):
        ctx = build_root_system(family, rank)
        t0 = time.perf_counter()
        reps = verify_words(ctx, parse_coxeter(ctx, args.coxeter, args.seed), args.level, with_tau=not args.no_tau)
        agg = aggregate(reps)
        agg["type"] = ctx.name
        rows.append({"summary": agg, "classes": [r.summary() for r in reps]})
        print(
            f"{ctx.name:4} words {agg['words']:4} classes {agg['classes']:3} pairs {agg['pairs']:6} "
            f"mismatched {agg['mismatched']:4} multi {agg['eq1_multisolution_count']:5} "
            f"{time.perf_counter() - t0:6.1f}s",
            flush=True,
        )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
