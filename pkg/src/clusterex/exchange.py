"""Exchange relations in closed form.

For exchangeable g-vectors ``lam`` and ``mu`` the relation reads

    x_lam * x_mu = x_{lam+mu} + y^alpha * x_{lam (+) mu}

where ``lam (+) mu`` is the second element of the tau-orbit set of ``lam + mu``
and ``alpha`` is the unique positive root with ``-B_c alpha = lam + mu - lam (+) mu``
and ``<lam, alpha^vee> <mu, alpha^vee> = -1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import linalg
from .coxeter import ExchangeMatrix
from .gfan import ClusterSet, InternalInvariantViolation, PiSet, add, sub
from .rootsys import Root, RootSystemContext, Weight, pair, positive_roots


class NotExchangeable(ValueError):
    pass


class ClosedFormError(RuntimeError):
    """No or several positive roots solve the system; carries a counterexample record."""

    def __init__(self, message: str, counterexample: dict):
        super().__init__(message)
        self.counterexample = counterexample


class NoSolution(ClosedFormError):
    pass


class MultipleSolutions(ClosedFormError):
    pass


@dataclass(frozen=True, order=True)
class ExchangeRelation:
    lam: Weight
    mu: Weight
    sum: Weight
    uplus: Weight
    alpha: Root

    @classmethod
    def make(cls, lam, mu, plain, uplus, alpha: Root) -> "ExchangeRelation":
        lam, mu = tuple(lam), tuple(mu)
        if mu < lam:
            lam, mu = mu, lam
        return cls(lam, mu, tuple(plain), tuple(uplus), alpha)

    def as_record(self) -> dict:
        return {
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "sum": list(self.sum),
            "uplus": list(self.uplus),
            "alpha_root": list(self.alpha.root),
            "alpha_coroot": list(self.alpha.coroot),
        }

    def render(self) -> str:
        ymono = "·".join(
            f"y{i + 1}" if e == 1 else f"y{i + 1}^{e}" for i, e in enumerate(self.alpha.root) if e
        )
        fmt = lambda w: "[" + ",".join(str(x) for x in w) + "]"  # noqa: E731
        return f"x{fmt(self.lam)}·x{fmt(self.mu)} = x{fmt(self.sum)} + {ymono}·x{fmt(self.uplus)}"


@lru_cache(maxsize=256)
def _degree_table(ctx: RootSystemContext, bc: ExchangeMatrix) -> dict[Weight, list[Root]]:
    """Positive roots grouped by -B_c alpha (a weight)."""
    table: dict[Weight, list[Root]] = {}
    for r in positive_roots(ctx):
        key = tuple(-x for x in linalg.matvec(bc, r.root))
        table.setdefault(key, []).append(r)
    return table


def degree_solutions(ctx: RootSystemContext, bc: ExchangeMatrix, target: Sequence[int]) -> list[Root]:
    """Positive roots alpha with -B_c alpha = target."""
    return list(_degree_table(ctx, bc).get(tuple(target), ()))


def _check_pair(pi: PiSet, lam, mu) -> tuple[int, int]:
    x, y = pi.idx(lam), pi.idx(mu)
    if x == y or pi.degree_index(x, y) != 1 or pi.degree_index(y, x) != 1:
        raise NotExchangeable(f"{tuple(lam)} and {tuple(mu)} are not exchangeable")
    return x, y


def uplus_set(pi: PiSet, clusters: ClusterSet, lam: Sequence[int], mu: Sequence[int]) -> set[Weight]:
    """{tau^-m(tau^m lam + tau^m mu) : 0 <= m < N} with N the order of tau."""
    x, y = _check_pair(pi, lam, mu)
    out = set()
    for m in range(pi.order):
        a, b = pi.tau_pow[m][x], pi.tau_pow[m][y]
        s = add(pi.elements[a], pi.elements[b])
        start = clusters.containing[a][0]
        c, coords = clusters.decompose(s, start)
        out.add(clusters.recombine(c, coords, -m))
    return out


def uplus(pi: PiSet, clusters: ClusterSet, lam: Sequence[int], mu: Sequence[int]) -> Weight:
    vals = uplus_set(pi, clusters, lam, mu)
    plain = add(lam, mu)
    if plain not in vals or len(vals) > 2:
        raise InternalInvariantViolation(
            f"tau-orbit set for {tuple(lam)}, {tuple(mu)} is {sorted(vals)}; expected lam+mu and one more"
        )
    if len(vals) == 1:
        # only happens in rank one
        return plain
    (other,) = vals - {plain}
    return other


def _counterexample(ctx, bc, lam, mu, uplus_val, candidates, survivors) -> dict:
    return {
        "type": ctx.name,
        "bc": [list(r) for r in bc],
        "lambda": list(lam),
        "mu": list(mu),
        "uplus": list(uplus_val),
        "degree_candidates": [list(r.root) for r in candidates],
        "survivors": [list(r.root) for r in survivors],
    }


def solve_exchange_root(
    ctx: RootSystemContext, bc: ExchangeMatrix, lam: Sequence[int], mu: Sequence[int], uplus_val: Sequence[int]
) -> Root:
    target = sub(add(lam, mu), uplus_val)
    candidates = degree_solutions(ctx, bc, target)
    survivors = [r for r in candidates if pair(ctx, lam, r) * pair(ctx, mu, r) == -1]
    if len(survivors) == 1:
        return survivors[0]
    info = _counterexample(ctx, bc, lam, mu, uplus_val, candidates, survivors)
    if not survivors:
        raise NoSolution(f"no positive root solves the exchange system for {tuple(lam)}, {tuple(mu)}", info)
    raise MultipleSolutions(f"{len(survivors)} positive roots solve the exchange system", info)


def exchange_relation(
    pi: PiSet, clusters: ClusterSet, ctx: RootSystemContext, bc: ExchangeMatrix, lam, mu
) -> ExchangeRelation:
    u = uplus(pi, clusters, lam, mu)
    alpha = solve_exchange_root(ctx, bc, lam, mu, u)
    return ExchangeRelation.make(lam, mu, add(lam, mu), u, alpha)


def all_relations(pi: PiSet, clusters: ClusterSet, ctx: RootSystemContext, bc: ExchangeMatrix) -> list[ExchangeRelation]:
    """One relation per unordered exchangeable pair, sorted by (lam, mu)."""
    rels = [
        exchange_relation(pi, clusters, ctx, bc, pi.elements[x], pi.elements[y])
        for x, y in pi.exchangeable_pairs()
    ]
    rels.sort()
    return rels


def walls(clusters: ClusterSet, lam: Sequence[int], mu: Sequence[int]) -> list[tuple[Weight, ...]]:
    """Common parts (n-1 g-vectors) of every pair of adjacent clusters swapping lam and mu."""
    pi = clusters.pi
    x, y = pi.idx(lam), pi.idx(mu)
    out = []
    for c in clusters.containing[x]:
        cl = clusters.clusters[c]
        rest = tuple(z for z in cl if z != x)
        if tuple(sorted(rest + (y,))) in clusters.index:
            out.append(tuple(pi.elements[z] for z in rest))
    return out
