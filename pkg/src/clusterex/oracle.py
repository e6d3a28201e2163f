"""Brute-force ground truth: seed mutation with principal coefficients.

A labeled seed carries the exchange matrix ``b``, the c-vectors and the
g-vectors (both stored column by column).  Breadth-first search over all
mutations enumerates the exchange graph; every edge gives one exchange
relation read directly from the mutation data.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .coxeter import ExchangeMatrix
from .exchange import ExchangeRelation
from .gfan import add
from .rootsys import Root, RootSystemContext, Weight, cluster_count, root_index

Matrix = tuple[tuple[int, ...], ...]


class LimitExceeded(RuntimeError):
    pass


class InconsistentRelation(RuntimeError):
    pass


class SeedInvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class LabeledSeed:
    b: Matrix  # rows
    c: Matrix  # c-vectors, one tuple per column, simple-root coordinates
    g: Matrix  # g-vectors, one tuple per column, fundamental-weight coordinates
    path: tuple[int, ...] = ()

    @property
    def key(self) -> frozenset:
        return frozenset(self.g)

    @property
    def rank(self) -> int:
        return len(self.b)


def initial_seed(ctx: RootSystemContext, bc: ExchangeMatrix) -> LabeledSeed:
    n = ctx.rank
    eye = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
    return LabeledSeed(tuple(tuple(r) for r in bc), eye, eye, ())


def _sign_of_column(col: Sequence[int]) -> int:
    pos = any(x > 0 for x in col)
    negv = any(x < 0 for x in col)
    if pos and negv:
        raise SeedInvariantViolation(f"c-vector {tuple(col)} is not sign-coherent")
    return 1 if pos else -1


def mutated_g(seed: LabeledSeed, k: int) -> Weight:
    """New k-th g-vector: -g_k + sum_i [-eps b_ik]_+ g_i, eps the sign of c_k.

    (The initial-matrix correction term vanishes under sign-coherence.)
    """
    eps = _sign_of_column(seed.c[k])
    n = seed.rank
    out = [-x for x in seed.g[k]]
    for i in range(n):
        m = -eps * seed.b[i][k]
        if m > 0:
            gi = seed.g[i]
            for r in range(n):
                out[r] += m * gi[r]
    return tuple(out)


def mutate_seed(seed: LabeledSeed, k: int) -> LabeledSeed:
    """Mutation in direction k (0-based)."""
    n = seed.rank
    b = seed.b
    nb = [list(r) for r in b]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                nb[i][j] = -b[i][j]
            else:
                bik, bkj = b[i][k], b[k][j]
                if bik > 0 and bkj > 0:
                    nb[i][j] = b[i][j] + bik * bkj
                elif bik < 0 and bkj < 0:
                    nb[i][j] = b[i][j] - bik * bkj
    ck = seed.c[k]
    nc = []
    for j in range(n):
        if j == k:
            nc.append(tuple(-x for x in ck))
            continue
        bkj = b[k][j]
        col = list(seed.c[j])
        for i in range(n):
            cik = ck[i]
            # c'_ij = c_ij + sgn(c_ik) [c_ik b_kj]_+
            prod = cik * bkj
            if prod > 0:
                col[i] += prod if cik > 0 else -prod
        nc.append(tuple(col))
    ng = list(seed.g)
    ng[k] = mutated_g(seed, k)
    return LabeledSeed(tuple(tuple(r) for r in nb), tuple(nc), tuple(ng), seed.path + (k,))


def check_seed(ctx: RootSystemContext, seed: LabeledSeed) -> None:
    """Sign-coherence, c-vectors are roots, and <g_i, c_j^vee> = delta_ij."""
    roots = root_index(ctx)
    n = ctx.rank
    coroots = []
    for col in seed.c:
        _sign_of_column(col)
        r = roots.get(col)
        if r is None:
            raise SeedInvariantViolation(f"c-vector {col} is not a root of {ctx.name}")
        coroots.append(r.coroot)
    for i in range(n):
        gi = seed.g[i]
        for j in range(n):
            v = sum(a * b for a, b in zip(gi, coroots[j]))
            if v != (i == j):
                raise SeedInvariantViolation(f"duality fails at ({i},{j}) for path {seed.path}")


@dataclass
class ExchangeGraph:
    ctx: RootSystemContext
    bc: ExchangeMatrix
    seeds: list[LabeledSeed]
    edges: list[tuple[int, int, int]]  # (seed, direction, seed'), every direction from every seed
    index: dict[frozenset, int] = field(repr=False)
    parent: list[tuple[int, int] | None] = field(repr=False)

    @property
    def n_undirected_edges(self) -> int:
        return len(self.edges) // 2

    def clusters(self) -> set[frozenset]:
        return set(self.index)


def enumerate_exchange_graph(
    ctx: RootSystemContext, bc: ExchangeMatrix, limit: int | None = None, check: bool = True
) -> ExchangeGraph:
    """BFS over the exchange graph; seeds are identified up to relabeling by their g-vector sets."""
    if limit is None:
        limit = 2 * cluster_count(ctx.family, ctx.rank)
    n = ctx.rank
    s0 = initial_seed(ctx, bc)
    if check:
        check_seed(ctx, s0)
    seeds = [s0]
    index = {s0.key: 0}
    parent: list[tuple[int, int] | None] = [None]
    edges = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        s = seeds[u]
        for k in range(n):
            gk = mutated_g(s, k)
            key = frozenset(s.g[:k] + (gk,) + s.g[k + 1:])
            v = index.get(key)
            if v is None:
                if len(seeds) >= limit:
                    raise LimitExceeded(f"more than {limit} seeds in {ctx.name}")
                s2 = mutate_seed(s, k)
                if check:
                    check_seed(ctx, s2)
                v = len(seeds)
                seeds.append(s2)
                index[key] = v
                parent.append((u, k))
                queue.append(v)
            edges.append((u, k, v))
    return ExchangeGraph(ctx, bc, seeds, edges, index, parent)


def edge_relation(graph: ExchangeGraph, seed: LabeledSeed, k: int) -> ExchangeRelation:
    """The exchange relation of the mutation of seed in direction k."""
    ctx = graph.ctx
    n = ctx.rank
    ck = seed.c[k]
    eps = _sign_of_column(ck)
    lam = seed.g[k]
    mu = mutated_g(seed, k)
    plain = [0] * n
    ydeg = [0] * n
    for i in range(n):
        bik = seed.b[i][k]
        if bik == 0:
            continue
        # the y-free side carries prod x_i^[-eps b_ik]_+, the other side y^|c_k| prod x_i^[eps b_ik]_+
        target = plain if -eps * bik > 0 else ydeg
        m = abs(bik)
        for r in range(n):
            target[r] += m * seed.g[i][r]
    alpha_coords = tuple(eps * x for x in ck)
    alpha: Root = root_index(ctx)[alpha_coords]
    if tuple(plain) != add(lam, mu):
        raise InconsistentRelation(f"y-free monomial has degree {plain}, expected {add(lam, mu)}")
    return ExchangeRelation.make(lam, mu, plain, ydeg, alpha)


def oracle_relations(graph: ExchangeGraph) -> list[ExchangeRelation]:
    seen: dict[tuple[Weight, Weight], ExchangeRelation] = {}
    for u, k, _v in graph.edges:
        rel = edge_relation(graph, graph.seeds[u], k)
        key = (rel.lam, rel.mu)
        old = seen.get(key)
        if old is None:
            seen[key] = rel
        elif old != rel:
            raise InconsistentRelation(f"pair {key} gives {old} and {rel}")
    return sorted(seen.values())


@dataclass
class CrossReport:
    formula_count: int
    oracle_count: int
    matched: int
    only_formula: list[ExchangeRelation]
    only_oracle: list[ExchangeRelation]

    @property
    def ok(self) -> bool:
        return not self.only_formula and not self.only_oracle

    def as_dict(self) -> dict:
        return {
            "formula": self.formula_count,
            "oracle": self.oracle_count,
            "matched": self.matched,
            "only_formula": [r.as_record() for r in self.only_formula],
            "only_oracle": [r.as_record() for r in self.only_oracle],
        }


def cross_verify(formula: Sequence[ExchangeRelation], oracle: Sequence[ExchangeRelation]) -> CrossReport:
    """Exact multiset comparison on all five fields."""
    from collections import Counter

    a, b = Counter(formula), Counter(oracle)
    common = a & b
    only_f = sorted((a - b).elements())
    only_o = sorted((b - a).elements())
    return CrossReport(len(formula), len(oracle), sum(common.values()), only_f, only_o)
