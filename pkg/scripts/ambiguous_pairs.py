"""List exchangeable pairs where the degree equation and the pairing condition leave more than one root.

For each such pair print the candidates, the oracle's root, the candidates
whose coroot vanishes on every wall between the two clusters, and (when the
type is small enough) which candidates give a Laurent-polynomial identity.

    python3 scripts/ambiguous_pairs.py --type A --rank 3
"""
import argparse

from clusterex.rootsys import build_root_system, root_index
from clusterex.verify import Engine, group_words, parse_coxeter, wall_root
from clusterex.exchange import ExchangeRelation
from clusterex.gfan import add
from clusterex.laurent import BoundExceeded, compute_variables, symbolic_verify
from clusterex.oracle import enumerate_exchange_graph, oracle_relations


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--type", dest="family", required=True)
    ap.add_argument("--rank", type=int, required=True)
    ap.add_argument("--coxeter", default="all")
    args = ap.parse_args()
    ctx = build_root_system(args.family.upper(), args.rank)
    idx = root_index(ctx)
    total = 0
    for group in group_words(ctx, parse_coxeter(ctx, args.coxeter)):
        eng = Engine.build(ctx, group[0])
        _, bad = eng.relations()
        if not bad:
            continue
        graph = enumerate_exchange_graph(ctx, eng.bc)
        truth = {(r.lam, r.mu): r.alpha.root for r in oracle_relations(graph)}
        try:
            table = compute_variables(ctx, eng.bc, graph)
        except BoundExceeded:
            table = None
        print(f"c = {group[0]} (+{len(group) - 1} equivalent words): {len(bad)} ambiguous pairs")
        for rec in bad:
            total += len(group)
            lam, mu = tuple(rec["lambda"]), tuple(rec["mu"])
            key = (lam, mu) if lam < mu else (mu, lam)
            cands = [idx[tuple(s)] for s in rec["survivors"]]
            walls = [r.root for r in wall_root(eng, lam, mu, cands)]
            line = f"  {lam} / {mu}: candidates {[r.root for r in cands]}, oracle {truth[key]}, walls {walls}"
            if table is not None:
                ok = [
                    r.root
                    for r in cands
                    if symbolic_verify(ExchangeRelation.make(lam, mu, add(lam, mu), rec["uplus"], r), table, eng.clusters)
                ]
                line += f", identities {ok}"
            print(line)
    print(f"{ctx.name}: {total} ambiguous (word, pair) combinations")


if __name__ == "__main__":
    main()
