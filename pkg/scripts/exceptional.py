"""Sampled Coxeter elements in E6, E7, E8.

For E7 the script counts exchangeable pairs where the degree equation alone has two
positive-root solutions and checks that the pairing condition keeps exactly one.

    python3 scripts/exceptional.py --samples 25 --seed 2024
"""
import argparse
import time

from clusterex.rootsys import build_root_system
from clusterex.verify import parse_coxeter, verify_words


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=25)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--ranks", default="6,7,8")
    args = ap.parse_args()
    for n in map(int, args.ranks.split(",")):
        ctx = build_root_system("E", n)
        t0 = time.perf_counter()
        reps = verify_words(ctx, parse_coxeter(ctx, f"sample:{args.samples}", args.seed), with_tau=False)
        bad = [r for r in reps if not r.matched]
        multi = sum(r.multisolution for r in reps)
        settled = sum(r.pairing_settled for r in reps)
        print(
            f"E{n}: {len(reps)} classes, {sum(r.n_pairs for r in reps)} pairs, {len(bad)} failing classes, "
            f"two-solution pairs {multi}, settled by the pairing condition {settled}, {time.perf_counter() - t0:.0f}s",
            flush=True,
        )
        for r in reps:
            if r.multisolution:
                print(f"  c = {r.words[0]}: {r.multisolution} pairs, {r.pairing_settled} settled")


if __name__ == "__main__":
    main()
