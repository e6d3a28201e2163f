"""Command-line interface.

Exit codes: 0 success, 2 usage or configuration error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Sequence

from .config import LEVELS, ConfigError, JobConfig
from .coxeter import WrongFamily, bc_kernel, build_bc, expected_kernel_dimension, kernel_structure_report, support_components
from .exchange import degree_solutions
from .gfan import add, sub
from .rootsys import cluster_count, n_positive_roots, pair, root_index
from .verify import Engine, aggregate, group_words, verify_words, wall_check

EXIT_OK, EXIT_CONFIG, EXIT_FAIL = 0, 2, 3

BASIS = {
    "weights": "fundamental weights omega_1..omega_n",
    "roots": "simple roots alpha_1..alpha_n",
    "coroots": "simple coroots alpha_1^vee..alpha_n^vee",
    "node_order": "Bourbaki labels; D forks at n-2, E attaches node n to node 3",
}


class Outcome:
    def __init__(self, results: dict, report: dict, text: list[str], code: int = EXIT_OK):
        self.results, self.report, self.text, self.code = results, report, text, code


def _fmt(w) -> str:
    return "[" + ",".join(str(x) for x in w) + "]"


def _per_class(cfg: JobConfig, fn: Callable) -> list[tuple[list, object]]:
    """Run fn(ctx, representative word) once per class; return (words, result) sorted by word."""
    ctx = cfg.context()
    groups = group_words(ctx, cfg.words())
    if cfg.jobs > 1 and len(groups) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(cfg.jobs) as ex:
            outs = list(ex.map(fn, [ctx] * len(groups), [g[0] for g in groups]))
    else:
        outs = [fn(ctx, g[0]) for g in groups]
    pairs = [(sorted(g), o) for g, o in zip(groups, outs)]
    pairs.sort(key=lambda p: p[0][0])
    return pairs


def _expand(pairs, render: Callable[[tuple, object], dict]) -> list[dict]:
    items = [render(w, o) for ws, o in pairs for w in ws]
    items.sort(key=lambda d: d["word"])
    return items


# pi ---------------------------------------------------------------------


def _pi_job(ctx, word):
    return Engine.build(ctx, word).pi


def cmd_pi(cfg: JobConfig) -> Outcome:
    ctx = cfg.context()
    pairs = _per_class(cfg, _pi_job)

    def render(w, pi):
        return {
            "word": list(w),
            "size": len(pi.elements),
            "heights": list(pi.heights),
            "tau_order": pi.order,
            "elements": [list(e) for e in pi.elements],
            "tau_orbits": [[list(pi.elements[x]) for x in cyc] for cyc in pi.cycles],
        }

    items = _expand(pairs, render)
    want = n_positive_roots(ctx.family, ctx.rank) + ctx.rank
    ok = all(it["size"] == want for it in items)
    text = []
    for it in items:
        text.append(f"c = {_fmt(it['word'])}  |Pi| = {it['size']}  h = {tuple(it['heights'])}  tau order {it['tau_order']}")
        text.extend("  " + " -> ".join(_fmt(e) for e in orb) for orb in it["tau_orbits"])
    report = {"size_is_positive_roots_plus_rank": ok, "expected_size": want}
    return Outcome({"configurations": items}, report, text, EXIT_OK if ok else EXIT_FAIL)


# relations --------------------------------------------------------------


def _relations_job(ctx, word):
    eng = Engine.build(ctx, word)
    rels, bad = eng.relations()
    _, _, per_pair = wall_check(eng, {}, skip_missing=True)
    return rels, bad, per_pair


def _record_ok(ctx, bc, rec: dict) -> bool:
    """Re-check the degree equation and the pairing condition on a serialized record."""
    lam, mu, uplus_v = rec["lambda"], rec["mu"], rec["uplus"]
    r = root_index(ctx).get(tuple(rec["alpha_root"]))
    if r is None or list(r.coroot) != rec["alpha_coroot"]:
        return False
    target = sub(add(lam, mu), uplus_v)
    ok_degree = r in degree_solutions(ctx, bc, target)
    ok_pairing = pair(ctx, lam, r) * pair(ctx, mu, r) == -1
    return ok_degree and ok_pairing and rec["sum"] == list(add(lam, mu))


def cmd_relations(cfg: JobConfig) -> Outcome:
    ctx = cfg.context()
    pairs = _per_class(cfg, _relations_job)

    def render(w, out):
        rels, bad, per_pair = out
        return {
            "word": list(w),
            "relations": [dict(r.as_record(), walls=per_pair[(r.lam, r.mu)]) for r in rels],
            "counterexamples": [
                dict(b, word=list(w), walls=per_pair[tuple(sorted((tuple(b["lambda"]), tuple(b["mu"]))))])
                for b in bad
            ],
        }

    items = _expand(pairs, render)
    records_ok = all(
        _record_ok(ctx, build_bc(ctx, it["word"]), rec) for it in items for rec in it["relations"]
    )
    n_bad = sum(len(it["counterexamples"]) for it in items)
    report = {
        "relations": sum(len(it["relations"]) for it in items),
        "relation_instances": sum(rec["walls"] for it in items for rec in it["relations"])
        + sum(b["walls"] for it in items for b in it["counterexamples"]),
        "counterexamples": n_bad,
        "records_satisfy_both_equations": records_ok,
    }
    code = EXIT_OK if records_ok and not n_bad else EXIT_FAIL
    if cfg.level != "none":
        reps = verify_words(ctx, cfg.words(), cfg.level, with_tau=False, jobs=cfg.jobs, limit=cfg.limit)
        report["verification"] = aggregate(reps)
        if not report["verification"]["all_matched"]:
            code = EXIT_FAIL
    text = []
    for it in items:
        text.append(f"c = {_fmt(it['word'])}: {len(it['relations'])} relations")
        for rec in it["relations"]:
            ymono = "·".join(
                f"y{i + 1}" if e == 1 else f"y{i + 1}^{e}" for i, e in enumerate(rec["alpha_root"]) if e
            )
            text.append(
                f"  x{_fmt(rec['lambda'])}·x{_fmt(rec['mu'])} = x{_fmt(rec['sum'])} + {ymono}·x{_fmt(rec['uplus'])}"
            )
        for b in it["counterexamples"]:
            text.append(
                f"  COUNTEREXAMPLE {b['kind']}: lambda {_fmt(b['lambda'])}, mu {_fmt(b['mu'])}, "
                f"survivors {[tuple(s) for s in b['survivors']]}"
            )
    return Outcome({"configurations": items}, report, text, code)


# clusters ---------------------------------------------------------------


def _clusters_job(ctx, word):
    eng = Engine.build(ctx, word)
    els = eng.pi.elements
    return sorted(sorted(els[x] for x in cl) for cl in eng.clusters.clusters)


def cmd_clusters(cfg: JobConfig) -> Outcome:
    ctx = cfg.context()
    pairs = _per_class(cfg, _clusters_job)
    items = _expand(
        pairs,
        lambda w, cls: {"word": list(w), "count": len(cls), "clusters": [[list(g) for g in c] for c in cls]},
    )
    want = cluster_count(ctx.family, ctx.rank)
    ok = all(it["count"] == want for it in items)
    text = []
    for it in items:
        text.append(f"c = {_fmt(it['word'])}: {it['count']} clusters")
        text.extend("  {" + ", ".join(_fmt(g) for g in c) + "}" for c in it["clusters"])
    return Outcome({"configurations": items}, {"expected_count": want, "counts_ok": ok}, text, EXIT_OK if ok else EXIT_FAIL)


# verify -----------------------------------------------------------------


def cmd_verify(cfg: JobConfig) -> Outcome:
    if cfg.level == "none":
        raise ConfigError("verify needs --level structural or symbolic")
    ctx = cfg.context()
    t0 = time.perf_counter()
    reps = verify_words(ctx, cfg.words(), cfg.level, with_tau=True, jobs=cfg.jobs, limit=cfg.limit)
    summary = aggregate(reps)
    summary["runtime"] = round(time.perf_counter() - t0, 3)
    checks = {
        "counts_ok": all(r.counts_ok for r in reps),
        "clusters_match_oracle": all(r.clusters_match for r in reps),
        "wall_failures": sum(r.wall_failures for r in reps),
        "tau_ok": all(all(r.tau.values()) for r in reps),
    }
    if cfg.level == "symbolic":
        sym = [r.symbolic for r in reps]
        checks["symbolic_checked"] = sum(s["checked"] * len(r.words) for s, r in zip(sym, reps))
        checks["symbolic_passed"] = sum(s["passed"] * len(r.words) for s, r in zip(sym, reps))
        checks["coefficient_free_passed"] = sum(s["coefficient_free_passed"] * len(r.words) for s, r in zip(sym, reps))
    ok = (
        summary["all_matched"]
        and checks["counts_ok"]
        and checks["clusters_match_oracle"]
        and not checks["wall_failures"]
        and checks["tau_ok"]
    )
    if cfg.level == "symbolic":
        ok = ok and checks["symbolic_passed"] == checks["symbolic_checked"] == checks["coefficient_free_passed"]
    text = [
        f"{ctx.name}: {summary['words']} words in {summary['classes']} classes, "
        f"{summary['pairs']} relation checks, {summary['matched']} matched, {summary['mismatched']} mismatched",
        f"  eq1_multisolution_count {summary['eq1_multisolution_count']}, counterexamples {summary['counterexamples']}",
        "  " + ", ".join(f"{k} {v}" for k, v in checks.items()),
        f"  runtime {summary['runtime']}s",
        "OK" if ok else "FAIL",
    ]
    results = {"summary": summary, "configurations": [r.summary() for r in reps]}
    return Outcome(results, dict(checks, ok=ok), text, EXIT_OK if ok else EXIT_FAIL)


# kernel -----------------------------------------------------------------


def _kernel_item(ctx, word) -> dict:
    try:
        return kernel_structure_report(ctx, word).as_dict()
    except WrongFamily:
        basis = bc_kernel(build_bc(ctx, word))
        return {
            "type": ctx.name,
            "word": list(word),
            "dimension": len(basis),
            "basis": [list(v) for v in basis],
            "support_components": [support_components(ctx, v) for v in basis],
        }


def cmd_kernel(cfg: JobConfig) -> Outcome:
    ctx = cfg.context()
    items = sorted((_kernel_item(ctx, w) for w in cfg.words()), key=lambda d: d["word"])
    report = {}
    if ctx.family in "ABCD":
        want = expected_kernel_dimension(ctx.family, ctx.rank)
        report["expected_dimension"] = want
        report["dimension_ok"] = all(it["dimension"] == want for it in items)
        if "odd_support_ok" in items[0]:
            report["odd_support_ok"] = all(it["odd_support_ok"] for it in items)
        if "d_classification_ok" in items[0]:
            report["d_classification_ok"] = all(it["d_classification_ok"] for it in items)
    text = []
    for it in items:
        line = f"c = {_fmt(it['word'])}: dim {it['dimension']}"
        if it["basis"]:
            line += "  basis " + " ".join(_fmt(v) for v in it["basis"])
            line += f"  components {it['support_components']}"
        if "d_predicted" in it:
            line += f"  D sign {it['d_predicted']} ({'ok' if it['d_classification_ok'] else 'mismatch'})"
        text.append(line)
    ok = all(v for k, v in report.items() if k != "expected_dimension")
    return Outcome({"configurations": items}, report, text, EXIT_OK if ok else EXIT_FAIL)


# decompose --------------------------------------------------------------


def parse_weight(s: str, rank: int) -> tuple[int, ...]:
    try:
        w = tuple(int(x) for x in s.replace(" ", "").split(",") if x != "")
    except ValueError as e:
        raise ConfigError(f"weight {s!r} is not a list of integers") from e
    if len(w) != rank:
        raise ConfigError(f"weight {s!r} has length {len(w)}, expected {rank}")
    return w


def cmd_decompose(cfg: JobConfig, weight: str) -> Outcome:
    ctx = cfg.context()
    w = parse_weight(weight, ctx.rank)
    items = []
    ok = True
    for word in sorted(cfg.words()):
        eng = Engine.build(ctx, word)
        c, coords = eng.clusters.decompose(w)
        gens = [eng.pi.elements[x] for x in eng.clusters.clusters[c]]
        back = eng.clusters.recombine(c, coords, 0)
        ok = ok and back == w
        items.append(
            {
                "word": list(word),
                "weight": list(w),
                "cluster": [list(g) for g in gens],
                "coords": list(coords),
                "monomial": [{"g": list(g), "exponent": a} for g, a in zip(gens, coords) if a],
            }
        )
    text = []
    for it in items:
        mono = "·".join(
            f"x{_fmt(m['g'])}" + (f"^{m['exponent']}" if m["exponent"] != 1 else "") for m in it["monomial"]
        ) or "1"
        text.append(f"c = {_fmt(it['word'])}: {_fmt(it['weight'])} -> {mono}")
        text.append("  cluster {" + ", ".join(_fmt(g) for g in it["cluster"]) + "} coords " + str(tuple(it["coords"])))
    return Outcome({"configurations": items}, {"recombines": ok}, text, EXIT_OK if ok else EXIT_FAIL)


# driver -----------------------------------------------------------------


COMMANDS = ("pi", "relations", "clusters", "verify", "kernel", "decompose")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clusterex", description="Exchange relations of finite-type cluster algebras.")
    sub_p = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub_p.add_parser(name)
        s.add_argument("--type", dest="family", required=True, type=str.upper)
        s.add_argument("--rank", type=int, required=True)
        s.add_argument("--coxeter", default=None, help="'1,2,3', 'all' or 'sample:k'")
        s.add_argument("--seed", type=int, default=0, help="seed for sample:k")
        s.add_argument("--format", choices=("json", "text"), default="json")
        s.add_argument("--level", choices=LEVELS, default=None)
        s.add_argument("--out", default=None)
        s.add_argument("--limit", type=int, default=None, help="cap on oracle seeds")
        s.add_argument("--jobs", type=int, default=1)
        if name == "decompose":
            s.add_argument("weight", nargs="?", help="comma separated, e.g. 2,1 (use -- before negative weights)")
            s.add_argument("--weight", dest="weight_opt", default=None)
    return p


def config_from_args(args: argparse.Namespace) -> JobConfig:
    coxeter = args.coxeter
    if coxeter is None:
        # a single canonical word for the lookup commands, every word for verification
        coxeter = "all" if args.command == "verify" else ",".join(str(i) for i in range(1, args.rank + 1))
    level = args.level or ("structural" if args.command == "verify" else "none")
    return JobConfig(
        family=args.family,
        rank=args.rank,
        coxeter=coxeter,
        seed=args.seed,
        format=args.format,
        level=level,
        out=args.out,
        limit=args.limit,
        jobs=args.jobs,
    )


def run(args: argparse.Namespace) -> tuple[Outcome, JobConfig]:
    cfg = config_from_args(args)
    words = cfg.words()  # validates the word spec early
    if args.command == "decompose":
        weight = args.weight_opt if args.weight_opt is not None else args.weight
        if weight is None:
            raise ConfigError("decompose needs a weight")
        out = cmd_decompose(cfg, weight)
    else:
        out = {
            "pi": cmd_pi,
            "relations": cmd_relations,
            "clusters": cmd_clusters,
            "verify": cmd_verify,
            "kernel": cmd_kernel,
        }[args.command](cfg)
    out.report.setdefault("words_evaluated", len(words))
    return out, cfg


def emit(out: Outcome, cfg: JobConfig, command: str) -> str:
    if cfg.format == "text":
        return "\n".join(out.text) + "\n"
    doc = {
        "config": dict(cfg.as_dict(), command=command),
        "results": dict(out.results, basis=BASIS),
        "invariant_report": out.report,
    }
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        out, cfg = run(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    text = emit(out, cfg, args.command)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
