"""Sparse Laurent polynomials in x_1..x_n, y_1..y_n and literal checks of exchange relations.

A polynomial is a mapping from exponent vectors of length 2n (x exponents
first, then y exponents) to nonzero integers.  x exponents may be negative,
y exponents may not.
"""
from __future__ import annotations

from collections import deque
from typing import Mapping, Sequence

from .coxeter import ExchangeMatrix
from .exchange import ExchangeRelation
from .gfan import ClusterSet
from .oracle import ExchangeGraph
from .rootsys import RootSystemContext, Weight

Exponent = tuple[int, ...]


class InexactDivision(ArithmeticError):
    pass


class BoundExceeded(RuntimeError):
    pass


class MissingVariable(KeyError):
    pass


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        self.nvars = nvars
        self.terms: dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ValueError("exponent length mismatch")
                    self.terms[e] = self.terms.get(e, 0) + c
            self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def constant(cls, nvars: int, c: int = 1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "LaurentPoly":
        e = [0] * nvars
        e[k] = 1
        return cls.monomial(e)

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are only defined for monomials; use exact_div")
        out = LaurentPoly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    def leading(self) -> tuple[Exponent, int]:
        e = max(self.terms)
        return e, self.terms[e]

    def min_exponents(self) -> Exponent:
        return tuple(min(col) for col in zip(*self.terms))

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector exps."""
        return LaurentPoly._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def exact_div(self, q: "LaurentPoly") -> "LaurentPoly":
        return lp_exact_div(self, q)

    def specialize_y(self) -> "LaurentPoly":
        """Set every y_j to 1; the result keeps 2n slots with zero y exponents."""
        n = self.nvars // 2
        out: dict[Exponent, int] = {}
        for e, c in self.terms.items():
            k = e[:n] + (0,) * n
            out[k] = out.get(k, 0) + c
        return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        n = self.nvars // 2
        names = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{names[i]}^{a}" for i, a in enumerate(e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def lp_exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """r with r * q == p.

    Both operands are shifted to honest polynomials (every variable's minimal
    exponent zero); in a Laurent ring the quotient of such polynomials, if it
    exists, is again a polynomial, so ordinary lex division decides it.
    """
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return LaurentPoly(p.nvars)
    mp, mq = p.min_exponents(), q.min_exponents()
    pp = p.shift([-a for a in mp])
    qq = q.shift([-a for a in mq])
    lead_e, lead_c = qq.leading()
    quotient: dict[Exponent, int] = {}
    rem = dict(pp.terms)
    while rem:
        e = max(rem)
        c = rem[e]
        de = tuple(a - b for a, b in zip(e, lead_e))
        if any(x < 0 for x in de) or c % lead_c:
            raise InexactDivision("remainder is nonzero")
        k = c // lead_c
        quotient[de] = k
        for e2, c2 in qq.terms.items():
            t = tuple(a + b for a, b in zip(e2, de))
            v = rem.get(t, 0) - k * c2
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    r = LaurentPoly._raw(p.nvars, quotient).shift([a - b for a, b in zip(mp, mq)])
    return r


def degree_of_term(exps: Exponent, b0: ExchangeMatrix) -> Weight:
    """g-grading: deg x_i = omega_i, deg y_j = -(column j of B_c)."""
    n = len(b0)
    x, y = exps[:n], exps[n:]
    return tuple(x[i] - sum(b0[i][j] * y[j] for j in range(n)) for i in range(n))


def is_homogeneous(p: LaurentPoly, b0: ExchangeMatrix, degree: Sequence[int]) -> bool:
    degree = tuple(degree)
    return all(degree_of_term(e, b0) == degree for e in p.terms)


def compute_variables(
    ctx: RootSystemContext, bc: ExchangeMatrix, graph: ExchangeGraph, bound: int = 200
) -> dict[Weight, LaurentPoly]:
    """Every cluster variable as a Laurent polynomial in the initial cluster, keyed by g-vector."""
    if len(graph.seeds) > bound:
        raise BoundExceeded(f"{len(graph.seeds)} seeds exceed the symbolic bound {bound}")
    n = ctx.rank
    nv = 2 * n
    x0 = [LaurentPoly.variable(nv, i) for i in range(n)]
    table: dict[Weight, LaurentPoly] = {graph.seeds[0].g[i]: x0[i] for i in range(n)}
    cluster_vars: dict[int, list[LaurentPoly]] = {0: x0}
    children: dict[int, list[tuple[int, int]]] = {}
    for v, par in enumerate(graph.parent):
        if par is not None:
            children.setdefault(par[0], []).append((par[1], v))
    queue = deque([0])
    while queue:
        u = queue.popleft()
        seed = graph.seeds[u]
        xs = cluster_vars[u]
        for k, v in children.get(u, []):
            ck = seed.c[k]
            pos_y = [max(a, 0) for a in ck]
            neg_y = [max(-a, 0) for a in ck]
            m1 = LaurentPoly.monomial([0] * n + pos_y)
            m2 = LaurentPoly.monomial([0] * n + neg_y)
            for i in range(n):
                bik = seed.b[i][k]
                if bik > 0:
                    m1 = m1 * xs[i] ** bik
                elif bik < 0:
                    m2 = m2 * xs[i] ** (-bik)
            new = lp_exact_div(m1 + m2, xs[k])
            g = graph.seeds[v].g[k]
            _check_variable(new, bc, g)
            old = table.get(g)
            if old is not None and old != new:
                raise InexactDivision(f"two different polynomials for g-vector {g}")
            table[g] = new
            nxt = list(xs)
            nxt[k] = new
            cluster_vars[v] = nxt
            queue.append(v)
    return table


def _check_variable(p: LaurentPoly, bc: ExchangeMatrix, g: Weight) -> None:
    n = len(bc)
    # Laurent phenomenon: monomial x-denominators only, polynomial in y
    if any(a < 0 for e in p.terms for a in e[n:]):
        raise InexactDivision("negative y exponent")
    if not is_homogeneous(p, bc, g):
        raise InexactDivision(f"cluster variable with g-vector {g} is not homogeneous of that degree")


def cluster_monomial(table: Mapping[Weight, LaurentPoly], clusters: ClusterSet, w: Sequence[int]) -> LaurentPoly:
    gens, coords = clusters.decompose_weight(w)
    nv = 2 * len(tuple(w))
    out = LaurentPoly.constant(nv)
    for g, a in zip(gens, coords):
        if not a:
            continue
        if g not in table:
            raise MissingVariable(g)
        out = out * table[g] ** a
    return out


def relation_sides(
    relation: ExchangeRelation, table: Mapping[Weight, LaurentPoly], clusters: ClusterSet
) -> tuple[LaurentPoly, LaurentPoly]:
    for g in (relation.lam, relation.mu):
        if g not in table:
            raise MissingVariable(g)
    n = len(relation.lam)
    lhs = table[relation.lam] * table[relation.mu]
    ymono = LaurentPoly.monomial((0,) * n + tuple(relation.alpha.root))
    rhs = cluster_monomial(table, clusters, relation.sum) + ymono * cluster_monomial(table, clusters, relation.uplus)
    return lhs, rhs


def symbolic_verify(relation: ExchangeRelation, table: Mapping[Weight, LaurentPoly], clusters: ClusterSet) -> bool:
    lhs, rhs = relation_sides(relation, table, clusters)
    return lhs == rhs


def coefficient_free_verify(
    relation: ExchangeRelation, table: Mapping[Weight, LaurentPoly], clusters: ClusterSet
) -> bool:
    """x_lam x_mu = x_{lam+mu} + x_{lam (+) mu} among the variables with every y_j set to 1."""
    free = {g: p.specialize_y() for g, p in table.items()}
    lhs = free[relation.lam] * free[relation.mu]
    rhs = cluster_monomial(free, clusters, relation.sum) + cluster_monomial(free, clusters, relation.uplus)
    return lhs == rhs
