"""g-vectors of cluster variables, the tau permutation, compatibility degree and the cluster fan.

The g-vectors of the cluster variables of the principal-coefficient algebra
with initial matrix B_c are the weights ``c^m omega_i`` for ``0 <= m <= h(i;c)``.
``tau`` fixes this set: it sends ``-omega_i`` to ``omega_i`` and any other
weight ``lam`` to ``c lam``.  Clusters are the maximal families of pairwise
compatible weights; their cones form a complete simplicial fan, which is what
gives the piecewise-linear extension of ``tau`` to all weights.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg
from .coxeter import CoxeterWord, apply_coxeter, check_word, coxeter_height, fundamental
from .rootsys import RootSystemContext, Weight, weight_to_root_coords


class NotInPi(KeyError):
    pass


class NonIntegral(ArithmeticError):
    pass


class InternalInvariantViolation(RuntimeError):
    pass


class NoConeFound(RuntimeError):
    pass


def add(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Sequence[int]) -> Weight:
    return tuple(-a for a in u)


@dataclass
class PiSet:
    """The g-vector set together with the tau permutation and its powers."""

    ctx: RootSystemContext
    word: CoxeterWord
    elements: list[Weight]
    heights: tuple[int, ...]
    tau_next: tuple[int, ...]
    cycles: list[list[int]]
    order: int
    index: dict[Weight, int] = field(repr=False)
    tau_pow: list[tuple[int, ...]] = field(repr=False)
    # for each element x: least k >= 0 and i with tau^k(x) = omega_i
    to_fundamental: list[tuple[int, int]] = field(repr=False)
    # simple-root coordinates of (c^-1 - id) x for each element x
    shifted_roots: list[tuple[int, ...]] = field(repr=False)
    _degrees: list[list[int]] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def idx(self, w: Sequence[int]) -> int:
        try:
            return self.index[tuple(w)]
        except KeyError:
            raise NotInPi(f"{tuple(w)} is not a g-vector of a cluster variable") from None

    def tau_index(self, x: int, power: int = 1) -> int:
        return self.tau_pow[power % self.order][x]

    def degree_index(self, x: int, y: int) -> int:
        k, i = self.to_fundamental[x]
        return max(self.shifted_roots[self.tau_pow[k][y]][i - 1], 0)

    def degree_matrix(self) -> list[list[int]]:
        if self._degrees is None:
            r = range(len(self.elements))
            self._degrees = [[self.degree_index(x, y) for y in r] for x in r]
        return self._degrees

    def exchangeable_pairs(self) -> list[tuple[int, int]]:
        deg = self.degree_matrix()
        n = len(self.elements)
        return [(x, y) for x in range(n) for y in range(x + 1, n) if deg[x][y] == 1 and deg[y][x] == 1]


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def build_pi(ctx: RootSystemContext, word: Sequence[int]) -> PiSet:
    word = check_word(ctx, word)
    n = ctx.rank
    heights = tuple(coxeter_height(ctx, word, i) for i in range(1, n + 1))
    elements: list[Weight] = []
    index: dict[Weight, int] = {}
    for i in range(1, n + 1):
        w = fundamental(ctx, i)
        for m in range(heights[i - 1] + 1):
            if w not in index:
                index[w] = len(elements)
                elements.append(w)
            w = apply_coxeter(ctx, word, w)

    fund = {fundamental(ctx, i): i for i in range(1, n + 1)}
    neg_fund = {neg(w): w for w in fund}
    tau_next = []
    for w in elements:
        t = neg_fund[w] if w in neg_fund else apply_coxeter(ctx, word, w)
        if t not in index:
            raise InternalInvariantViolation(f"tau({w}) = {t} left the g-vector set")
        tau_next.append(index[t])
    tau_next = tuple(tau_next)
    if sorted(tau_next) != list(range(len(elements))):
        raise InternalInvariantViolation("tau is not a permutation")
    cycles = _cycles(tau_next)
    order = 1
    for cyc in cycles:
        order = _lcm(order, len(cyc))

    ident = tuple(range(len(elements)))
    tau_pow = [ident]
    for _ in range(order - 1):
        prev = tau_pow[-1]
        tau_pow.append(tuple(tau_next[x] for x in prev))

    to_fund = []
    for x in range(len(elements)):
        k, y = 0, x
        while elements[y] not in fund:
            y = tau_next[y]
            k += 1
        to_fund.append((k, fund[elements[y]]))

    shifted = []
    for w in elements:
        v = sub(apply_coxeter(ctx, word, w, -1), w)
        r, integral = weight_to_root_coords(ctx, v)
        if not integral:
            raise NonIntegral(f"(c^-1 - id){w} = {v} is not in the root lattice")
        shifted.append(tuple(int(a) for a in r))

    return PiSet(ctx, word, elements, heights, tau_next, cycles, order, index, tau_pow, to_fund, shifted)


def tau(pi: PiSet, w: Sequence[int], power: int = 1) -> Weight:
    return pi.elements[pi.tau_index(pi.idx(w), power)]


def compatibility_degree(pi: PiSet, lam: Sequence[int], mu: Sequence[int]) -> int:
    return pi.degree_index(pi.idx(lam), pi.idx(mu))


def is_compatible(pi: PiSet, lam: Sequence[int], mu: Sequence[int]) -> bool:
    return compatibility_degree(pi, lam, mu) == 0


def is_exchangeable(pi: PiSet, lam: Sequence[int], mu: Sequence[int]) -> bool:
    x, y = pi.idx(lam), pi.idx(mu)
    return x != y and pi.degree_index(x, y) == 1 and pi.degree_index(y, x) == 1


def _maximal_cliques(adj: list[int]) -> Iterator[list[int]]:
    """Bron-Kerbosch with pivoting over bitset adjacency."""

    def bits(m: int) -> Iterator[int]:
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def expand(r: list[int], p: int, x: int) -> Iterator[list[int]]:
        if not p and not x:
            yield list(r)
            return
        pivot = max(bits(p | x), key=lambda u: (p & adj[u]).bit_count())
        for v in bits(p & ~adj[pivot]):
            r.append(v)
            yield from expand(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    yield from expand([], (1 << len(adj)) - 1, 0)


@dataclass
class ClusterSet:
    """All clusters of g-vectors, with the adjacency needed to walk the fan."""

    pi: PiSet
    clusters: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int] = field(repr=False)
    facets: dict[tuple[int, ...], list[int]] = field(repr=False)
    containing: list[list[int]] = field(repr=False)
    initial: int = 0
    _inverses: dict[int, tuple] = field(default_factory=dict, repr=False)
    _memo: dict[Weight, tuple[int, tuple[int, ...]]] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.clusters)

    def gmatrix(self, c: int) -> tuple[tuple[int, ...], ...]:
        """g-vectors of cluster c as columns."""
        return linalg.transpose([self.pi.elements[x] for x in self.clusters[c]])

    def inverse(self, c: int):
        inv = self._inverses.get(c)
        if inv is None:
            inv = linalg.unimodular_inverse(self.gmatrix(c))
            self._inverses[c] = inv
        return inv

    def neighbour(self, c: int, pos: int) -> int:
        cl = self.clusters[c]
        face = cl[:pos] + cl[pos + 1:]
        a, b = self.facets[face]
        return b if a == c else a

    def recombine(self, c: int, coords: Sequence[int], power: int = 0) -> Weight:
        """sum_j coords_j tau^power(g_j) over the generators of cluster c."""
        pi = self.pi
        tp = pi.tau_pow[power % pi.order]
        n = pi.ctx.rank
        out = [0] * n
        for a, x in zip(coords, self.clusters[c]):
            if a:
                g = pi.elements[tp[x]]
                for k in range(n):
                    out[k] += a * g[k]
        return tuple(out)

    def decompose(self, w: Sequence[int], start: int | None = None) -> tuple[int, tuple[int, ...]]:
        w = tuple(w)
        hit = self._memo.get(w)
        if hit is None:
            hit = self._walk(w, self.initial if start is None else start)
            self._memo[w] = hit
        return hit

    def _walk(self, w: Weight, start: int) -> tuple[int, tuple[int, ...]]:
        # Follow the segment from a generic interior point of the start cone to w,
        # crossing one wall at a time.
        n = self.pi.ctx.rank
        rng = random.Random(0x5EED)
        for _attempt in range(32):
            c = start
            coords = [rng.randint(1, 1 << 20) for _ in range(n)]
            p = self.recombine(c, coords)
            dirv = sub(w, p)
            t = Fraction(0)
            degenerate = False
            for _step in range(len(self.clusters) + 1):
                inv = self.inverse(c)
                a0 = linalg.matvec(inv, p)
                d = linalg.matvec(inv, dirv)
                exit_t = None
                exit_pos = []
                for j in range(n):
                    if d[j] >= 0:
                        continue
                    tj = Fraction(-a0[j], d[j])
                    if tj >= 1:
                        continue
                    if tj <= t:
                        degenerate = True
                        break
                    if exit_t is None or tj < exit_t:
                        exit_t, exit_pos = tj, [j]
                    elif tj == exit_t:
                        exit_pos.append(j)
                if degenerate:
                    break
                if exit_t is None:
                    coords_w = tuple(a + b for a, b in zip(a0, d))
                    if any(x < 0 for x in coords_w):
                        raise InternalInvariantViolation("walk ended outside the cone")
                    return c, coords_w
                if len(exit_pos) > 1:
                    degenerate = True
                    break
                c = self.neighbour(c, exit_pos[0])
                t = exit_t
            else:
                raise NoConeFound(f"no cone reached for {w}")
        raise NoConeFound(f"segment walk kept hitting lower-dimensional faces for {w}")

    def decompose_weight(self, w: Sequence[int]) -> tuple[tuple[Weight, ...], tuple[int, ...]]:
        """Cluster g-vectors and nonnegative coordinates of w."""
        c, coords = self.decompose(w)
        return tuple(self.pi.elements[x] for x in self.clusters[c]), coords


def enumerate_clusters(pi: PiSet) -> ClusterSet:
    n = pi.ctx.rank
    deg = pi.degree_matrix()
    size = len(pi.elements)
    adj = [0] * size
    for x in range(size):
        m = 0
        for y in range(size):
            if y != x and deg[x][y] == 0:
                m |= 1 << y
        adj[x] = m
    clusters = []
    for cl in _maximal_cliques(adj):
        cl = tuple(sorted(cl))
        if len(cl) != n:
            raise InternalInvariantViolation(f"maximal compatible set of size {len(cl)} != {n}")
        clusters.append(cl)
    clusters.sort()
    index = {cl: k for k, cl in enumerate(clusters)}
    facets: dict[tuple[int, ...], list[int]] = {}
    containing: list[list[int]] = [[] for _ in range(size)]
    for k, cl in enumerate(clusters):
        for pos in range(n):
            facets.setdefault(cl[:pos] + cl[pos + 1:], []).append(k)
        for x in cl:
            containing[x].append(k)
    if n > 1:
        bad = [f for f, cs in facets.items() if len(cs) != 2]
        if bad:
            raise InternalInvariantViolation(f"{len(bad)} facets not shared by exactly two clusters")
    elif len(clusters) != 2:
        raise InternalInvariantViolation("rank one fan should have two cones")
    else:
        facets[()] = [0, 1]
    initial = index[tuple(sorted(pi.idx(fundamental(pi.ctx, i)) for i in range(1, n + 1)))]
    cs = ClusterSet(pi, clusters, index, facets, containing, initial)
    for k in range(len(clusters)):
        if abs(linalg.det(cs.gmatrix(k))) != 1:
            raise InternalInvariantViolation(f"cluster {clusters[k]} is not unimodular")
    return cs


def decompose(clusters: ClusterSet, w: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return clusters.decompose(w)


def tau_pl(pi: PiSet, clusters: ClusterSet, w: Sequence[int], power: int = 1) -> Weight:
    c, coords = clusters.decompose(w)
    return clusters.recombine(c, coords, power)
