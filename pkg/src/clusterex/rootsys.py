"""Finite root systems: Cartan data, Weyl group action, positive roots and coroots.

Conventions
-----------
Nodes are labeled ``1..n`` following the usual finite-type diagrams: ``A_n``,
``B_n`` and ``C_n`` are chains, ``D_n`` forks at ``n-2`` into ``n-1`` and
``n``, ``E_n`` is the chain ``1..n-1`` with node ``n`` attached to node ``3``,
``F_4`` and ``G_2`` are chains.

The Cartan matrix has ``a_ij = <alpha_i^vee, alpha_j>``, so the simple root
``alpha_j`` written in fundamental-weight coordinates is the ``j``-th column of
the matrix, and ``s_i(alpha_j) = alpha_j - a_ij alpha_i``.  Short simple roots:
``alpha_n`` in ``B_n``, ``alpha_1..alpha_{n-1}`` in ``C_n``, ``alpha_3, alpha_4``
in ``F_4``, ``alpha_1`` in ``G_2``.  ``d_i`` is proportional to the squared
length of ``alpha_i``, so ``diag(d) A`` is the symmetrized Gram matrix.

Weights are integer tuples in the basis of fundamental weights; root lattice
elements are integer tuples in the basis of simple roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg

Weight = tuple[int, ...]
RootCoords = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

# Number of positive roots, used as a cross-check of the closure algorithm.
_N_POSITIVE = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class UnsupportedType(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


def _check_rank(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if family not in ok:
        raise UnsupportedType(f"unknown family {family!r}")
    if not isinstance(rank, int) or not ok[family]:
        raise UnsupportedType(f"{family}{rank} is not a finite type")


def dynkin_edges(family: str, rank: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram as pairs of 1-based labels (i < j)."""
    n = rank
    if family in "ABCFG":
        return [(i, i + 1) for i in range(1, n)]
    if family == "D":
        return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
    # E
    return [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]


def _cartan_and_symmetrizers(family: str, rank: int):
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in dynkin_edges(family, rank):
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    d = [1] * n
    if family == "B":
        # alpha_n short
        a[n - 1][n - 2] = -2
        d = [2] * (n - 1) + [1]
    elif family == "C":
        # alpha_n long
        a[n - 2][n - 1] = -2
        d = [1] * (n - 1) + [2]
    elif family == "F":
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        a[2][1] = -2
        d = [2, 2, 1, 1]
    elif family == "G":
        # alpha_1 short, alpha_2 long
        a[0][1] = -3
        d = [1, 3]
    return tuple(tuple(r) for r in a), tuple(d)


@dataclass(frozen=True)
class RootSystemContext:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i - 1][j - 1] != 0


@dataclass(frozen=True, order=True)
class Root:
    root: RootCoords
    coroot: tuple[int, ...]

    @property
    def is_positive(self) -> bool:
        return all(x >= 0 for x in self.root) and any(self.root)

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.root), tuple(-x for x in self.coroot))


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystemContext:
    family = family.upper()
    _check_rank(family, rank)
    cartan, d = _cartan_and_symmetrizers(family, rank)
    return RootSystemContext(family, rank, cartan, d)


def check_index(ctx: RootSystemContext, i: int) -> None:
    if not 1 <= i <= ctx.rank:
        raise IndexOutOfRange(f"node {i} outside 1..{ctx.rank}")


def simple_root_weight(ctx: RootSystemContext, i: int) -> Weight:
    """alpha_i in fundamental-weight coordinates (column i of the Cartan matrix)."""
    return tuple(row[i - 1] for row in ctx.cartan)


def reflect(ctx: RootSystemContext, i: int, w: Weight) -> Weight:
    check_index(ctx, i)
    wi = w[i - 1]
    if wi == 0:
        return tuple(w)
    col = i - 1
    return tuple(x - wi * row[col] for x, row in zip(w, ctx.cartan))


def reflect_root(ctx: RootSystemContext, i: int, r: RootCoords) -> RootCoords:
    """s_i on a root-lattice element in simple-root coordinates."""
    check_index(ctx, i)
    k = sum(a * b for a, b in zip(ctx.cartan[i - 1], r))  # <r, alpha_i^vee>
    out = list(r)
    out[i - 1] -= k
    return tuple(out)


def reflect_coroot(ctx: RootSystemContext, i: int, v: tuple[int, ...]) -> tuple[int, ...]:
    """s_i on a coroot-lattice element in simple-coroot coordinates."""
    check_index(ctx, i)
    k = sum(ctx.cartan[j][i - 1] * v[j] for j in range(ctx.rank))  # <alpha_i, v>
    out = list(v)
    out[i - 1] -= k
    return tuple(out)


def root_to_weight(ctx: RootSystemContext, r: RootCoords) -> Weight:
    return linalg.matvec(ctx.cartan, r)


@lru_cache(maxsize=None)
def _cartan_inverse(ctx: RootSystemContext):
    return linalg.rational_inverse(ctx.cartan)


def weight_to_root_coords(ctx: RootSystemContext, w: Weight) -> tuple[tuple[Fraction, ...], bool]:
    """Express w in simple-root coordinates; the flag says whether w lies in the root lattice."""
    inv = _cartan_inverse(ctx)
    r = tuple(sum((a * b for a, b in zip(row, w)), Fraction(0)) for row in inv)
    return r, all(x.denominator == 1 for x in r)


def coroot_of(ctx: RootSystemContext, r: RootCoords) -> tuple[int, ...]:
    """Coroot of a root r, in simple-coroot coordinates."""
    d = ctx.symmetrizers
    # 2 * (r, r) / 2 with (alpha_i, alpha_j) = d_i a_ij
    half_norm = Fraction(
        sum(r[i] * d[i] * ctx.cartan[i][j] * r[j] for i in range(ctx.rank) for j in range(ctx.rank)), 2
    )
    out = tuple(Fraction(d[j] * r[j]) / half_norm for j in range(ctx.rank))
    if any(x.denominator != 1 for x in out):
        raise ValueError(f"{r} is not a root of {ctx.name}")
    return tuple(int(x) for x in out)


@lru_cache(maxsize=None)
def positive_roots(ctx: RootSystemContext) -> tuple[Root, ...]:
    n = ctx.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = {s: s for s in simple}
    frontier = list(found)
    while frontier:
        nxt = []
        for r in frontier:
            cr = found[r]
            for i in range(1, n + 1):
                r2 = reflect_root(ctx, i, r)
                if r2 in found or not all(x >= 0 for x in r2):
                    continue
                found[r2] = reflect_coroot(ctx, i, cr)
                nxt.append(r2)
        frontier = nxt
    roots = tuple(Root(r, found[r]) for r in sorted(found))
    assert len(roots) == _N_POSITIVE[ctx.family](n), (ctx.name, len(roots))
    return roots


@lru_cache(maxsize=None)
def root_index(ctx: RootSystemContext) -> dict[RootCoords, Root]:
    """All roots (positive and negative) keyed by simple-root coordinates."""
    out = {}
    for r in positive_roots(ctx):
        out[r.root] = r
        neg = -r
        out[neg.root] = neg
    return out


def pair(ctx: RootSystemContext, w: Weight, r: Root) -> int:
    return sum(a * b for a, b in zip(w, r.coroot))


def antidominant_image(ctx: RootSystemContext, w: Weight) -> Weight:
    w = tuple(w)
    while True:
        j = next((k for k, x in enumerate(w) if x > 0), None)
        if j is None:
            return w
        w = reflect(ctx, j + 1, w)


def n_positive_roots(family: str, rank: int) -> int:
    return _N_POSITIVE[family](rank)


def cluster_count(family: str, rank: int) -> int:
    """Number of clusters (generalized Catalan number) of the finite type."""
    from math import comb

    n = rank
    if family == "A":
        return comb(2 * n + 2, n + 1) // (n + 2)
    if family in "BC":
        return comb(2 * n, n)
    if family == "D":
        return (3 * n - 2) * comb(2 * n - 2, n - 1) // n
    return {("E", 6): 833, ("E", 7): 4160, ("E", 8): 25080, ("F", 4): 105, ("G", 2): 8}[(family, n)]
