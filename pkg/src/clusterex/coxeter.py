"""Coxeter elements, the acyclic exchange matrix B_c and its kernel."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator, Sequence

from . import linalg
from .rootsys import (
    RootCoords,
    RootSystemContext,
    Weight,
    check_index,
    antidominant_image,
    positive_roots,
    reflect,
)

CoxeterWord = tuple[int, ...]
ExchangeMatrix = tuple[tuple[int, ...], ...]


class InvalidWord(ValueError):
    pass


class NotAdjacent(ValueError):
    pass


class WrongFamily(ValueError):
    pass


def check_word(ctx: RootSystemContext, word: Sequence[int]) -> CoxeterWord:
    word = tuple(int(i) for i in word)
    if sorted(word) != list(range(1, ctx.rank + 1)):
        raise InvalidWord(f"{word} is not a permutation of 1..{ctx.rank}")
    return word


def all_words(ctx: RootSystemContext) -> Iterator[CoxeterWord]:
    return permutations(range(1, ctx.rank + 1))


def precedes(ctx: RootSystemContext, word: CoxeterWord, i: int, j: int) -> bool:
    """Whether s_i comes before s_j in c; only meaningful for adjacent nodes."""
    check_index(ctx, i)
    check_index(ctx, j)
    if not ctx.adjacent(i, j):
        raise NotAdjacent(f"nodes {i} and {j} are not adjacent in {ctx.name}")
    return word.index(i) < word.index(j)


def build_bc(ctx: RootSystemContext, word: Sequence[int]) -> ExchangeMatrix:
    word = check_word(ctx, word)
    n = ctx.rank
    pos = {v: k for k, v in enumerate(word)}
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            a = ctx.cartan[i][j]
            if i == j or a == 0:
                continue
            b[i][j] = -a if pos[i + 1] < pos[j + 1] else a
    return tuple(tuple(r) for r in b)


def apply_coxeter(ctx: RootSystemContext, word: CoxeterWord, w: Weight, power: int = 1) -> Weight:
    """c^power applied to w, where c = s_{i_1} ... s_{i_n} acts right to left."""
    w = tuple(w)
    if power >= 0:
        order = tuple(reversed(word))
    else:
        order = tuple(word)
    for _ in range(abs(power)):
        for i in order:
            w = reflect(ctx, i, w)
    return w


def coxeter_matrix(ctx: RootSystemContext, word: CoxeterWord) -> tuple[tuple[int, ...], ...]:
    """Matrix of c acting on fundamental-weight coordinates (columns are c omega_j)."""
    n = ctx.rank
    cols = [apply_coxeter(ctx, word, tuple(int(i == j) for i in range(n))) for j in range(n)]
    return linalg.transpose(cols)


def fundamental(ctx: RootSystemContext, i: int) -> Weight:
    return tuple(int(j == i - 1) for j in range(ctx.rank))


def coxeter_height(ctx: RootSystemContext, word: CoxeterWord, i: int) -> int:
    """Least m >= 1 with c^m omega_i = w_0 omega_i."""
    check_index(ctx, i)
    w = fundamental(ctx, i)
    target = antidominant_image(ctx, w)
    m = 0
    # h(i;c) never exceeds the Coxeter number, which is at most 30 in finite type
    while m <= 64:
        w = apply_coxeter(ctx, word, w)
        m += 1
        if w == target:
            return m
    raise RuntimeError("Coxeter height search did not terminate")


def bc_kernel(bc: ExchangeMatrix) -> list[tuple[int, ...]]:
    """Primitive integer basis of ker B_c (root coordinates)."""
    return linalg.nullspace(bc)


def support(v: Sequence[int]) -> list[int]:
    return [i + 1 for i, x in enumerate(v) if x != 0]


def support_components(ctx: RootSystemContext, v: Sequence[int]) -> int:
    nodes = set(support(v))
    seen: set[int] = set()
    comps = 0
    for start in nodes:
        if start in seen:
            continue
        comps += 1
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for w in nodes:
                if w not in seen and ctx.adjacent(u, w):
                    seen.add(w)
                    stack.append(w)
    return comps


def _in_kernel(bc: ExchangeMatrix, v: Sequence[int]) -> bool:
    return not any(linalg.matvec(bc, v))


def _literal_odd_vector(ctx: RootSystemContext, word: CoxeterWord) -> tuple:
    """alpha_1 + sum over odd i >= 3 of eps_i / a_{i-1,i} alpha_i, read literally."""
    from fractions import Fraction

    n = ctx.rank
    v = [Fraction(0)] * n
    v[0] = Fraction(1)
    pos = {x: k for k, x in enumerate(word)}
    for i in range(3, n + 1, 2):
        chain = pos[i - 2] < pos[i - 1] < pos[i] or pos[i] < pos[i - 1] < pos[i - 2]
        eps = 1 if chain else -1
        v[i - 1] = Fraction(eps, ctx.cartan[i - 2][i - 1])
    return tuple(v)


@dataclass
class KernelReport:
    family: str
    rank: int
    word: CoxeterWord
    dimension: int
    basis: list[tuple[int, ...]]
    components: list[int]
    # A/B/C with odd rank
    odd_support_ok: bool | None = None
    expected_components: int | None = None
    literal_odd_vector_in_kernel: bool | None = None
    # D
    d_predicted: str | None = None
    d_plus_in_kernel: bool | None = None
    d_minus_in_kernel: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def d_classification_ok(self) -> bool | None:
        if self.d_predicted is None:
            return None
        want_plus = self.d_predicted == "plus"
        return self.d_plus_in_kernel == want_plus and self.d_minus_in_kernel == (not want_plus)

    def as_dict(self) -> dict:
        out = {
            "type": f"{self.family}{self.rank}",
            "word": list(self.word),
            "dimension": self.dimension,
            "basis": [list(v) for v in self.basis],
            "support_components": self.components,
        }
        if self.odd_support_ok is not None:
            out["odd_support_ok"] = self.odd_support_ok
            out["expected_components"] = self.expected_components
            out["literal_odd_vector_in_kernel"] = self.literal_odd_vector_in_kernel
        if self.d_predicted is not None:
            out["d_predicted"] = self.d_predicted
            out["d_plus_in_kernel"] = self.d_plus_in_kernel
            out["d_minus_in_kernel"] = self.d_minus_in_kernel
            out["d_classification_ok"] = self.d_classification_ok
        if self.notes:
            out["notes"] = self.notes
        return out


def expected_kernel_dimension(family: str, rank: int) -> int:
    if family == "D":
        return 2 if rank % 2 == 0 else 1
    return 0 if rank % 2 == 0 else 1


def kernel_structure_report(ctx: RootSystemContext, word: CoxeterWord, bc: ExchangeMatrix | None = None) -> KernelReport:
    """Kernel of B_c together with the structural checks for classical types.

    For A/B/C of odd rank n = 2k+1 the kernel generator should be supported on
    exactly the odd nodes (k+1 components).  For D_n one of alpha_{n-1} +- alpha_n
    lies in the kernel, '+' exactly when n-2 sits between n-1 and n in c.
    """
    if ctx.family not in "ABCD":
        raise WrongFamily(f"kernel structure is only described for classical types, got {ctx.name}")
    word = check_word(ctx, word)
    if bc is None:
        bc = build_bc(ctx, word)
    n = ctx.rank
    basis = bc_kernel(bc)
    rep = KernelReport(
        ctx.family, n, word, len(basis), basis, [support_components(ctx, v) for v in basis]
    )
    if ctx.family in "ABC" and n % 2 == 1 and len(basis) == 1:
        v = basis[0]
        rep.odd_support_ok = support(v) == list(range(1, n + 1, 2))
        rep.expected_components = (n - 1) // 2 + 1
        lit = _literal_odd_vector(ctx, word)
        rep.literal_odd_vector_in_kernel = _in_kernel(bc, lit)
        if not rep.literal_odd_vector_in_kernel:
            rep.notes.append("explicit epsilon-formula vector is not in the kernel; sign convention differs")
    if ctx.family == "D":
        pos = {x: k for k, x in enumerate(word)}
        a, m, b = pos[n - 1], pos[n - 2], pos[n]
        between = a < m < b or b < m < a
        rep.d_predicted = "plus" if between else "minus"
        plus = [0] * n
        plus[n - 2] = plus[n - 1] = 1
        minus = list(plus)
        minus[n - 1] = -1
        rep.d_plus_in_kernel = _in_kernel(bc, plus)
        rep.d_minus_in_kernel = _in_kernel(bc, minus)
    return rep


def kernel_root_differences(ctx: RootSystemContext, word: CoxeterWord) -> list[tuple[RootCoords, RootCoords]]:
    """Pairs of positive roots whose difference lies in ker B_c.

    The degree equation can have several positive-root solutions only for such pairs.
    """
    bc = build_bc(ctx, word)
    roots = [r.root for r in positive_roots(ctx)]
    return [
        (a, b) for a, b in combinations(roots, 2) if _in_kernel(bc, [x - y for x, y in zip(a, b)])
    ]
