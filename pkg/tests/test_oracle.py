import pytest
from hypothesis import given, strategies as st

from clusterex.coxeter import build_bc
from clusterex.oracle import (
    check_seed,
    cross_verify,
    edge_relation,
    enumerate_exchange_graph,
    initial_seed,
    mutate_seed,
    oracle_relations,
)
from clusterex.rootsys import build_root_system, cluster_count

A1, A2, A3 = (build_root_system("A", n) for n in (1, 2, 3))
BC = build_bc(A2, (1, 2))


def test_initial_seed():
    s = initial_seed(A2, BC)
    assert s.b == ((0, 1), (-1, 0)) and s.c == ((1, 0), (0, 1)) and s.g == ((1, 0), (0, 1))
    s1 = initial_seed(A1, build_bc(A1, (1,)))
    assert s1.b == ((0,),) and s1.c == ((1,),) and s1.g == ((1,),)


def test_first_mutation():
    s = mutate_seed(initial_seed(A2, BC), 0)
    assert s.b == ((0, -1), (1, 0))
    assert s.c[0] == (-1, 0)
    assert s.g[0] == (-1, 1)
    check_seed(A2, s)


@given(
    st.sampled_from([("A", 3), ("B", 3), ("G", 2), ("D", 4)]).flatmap(
        lambda t: st.tuples(
            st.just(build_root_system(*t)),
            st.permutations(range(1, t[1] + 1)),
            st.lists(st.integers(0, t[1] - 1), max_size=8),
            st.integers(0, t[1] - 1),
        )
    )
)
def test_mutation_is_involutive(data):
    ctx, word, path, k = data
    s = initial_seed(ctx, build_bc(ctx, tuple(word)))
    for j in path:
        s = mutate_seed(s, j)
    check_seed(ctx, s)
    back = mutate_seed(mutate_seed(s, k), k)
    assert (back.b, back.c, back.g) == (s.b, s.c, s.g)


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2), ("D", 4), ("C", 3)])
def test_seed_counts(family, rank):
    ctx = build_root_system(family, rank)
    g = enumerate_exchange_graph(ctx, build_bc(ctx, tuple(range(1, rank + 1))))
    assert len(g.seeds) == cluster_count(family, rank)
    assert g.n_undirected_edges == rank * len(g.seeds) // 2


def test_edge_relation_example():
    g = enumerate_exchange_graph(A2, BC)
    rel = edge_relation(g, g.seeds[0], 0)
    assert (rel.lam, rel.mu, rel.sum, rel.uplus, rel.alpha.root) == ((-1, 1), (1, 0), (0, 1), (0, 0), (1, 0))
    assert len(oracle_relations(g)) == 5


def test_a1_relation():
    g = enumerate_exchange_graph(A1, build_bc(A1, (1,)))
    (rel,) = oracle_relations(g)
    assert rel.alpha.root == (1,) and {rel.lam, rel.mu} == {(1,), (-1,)}


def test_cross_verify_detects_differences():
    g = enumerate_exchange_graph(A2, BC)
    rels = oracle_relations(g)
    assert cross_verify(rels, rels).ok
    rep = cross_verify(rels[1:], rels)
    assert not rep.ok and rep.only_oracle == [rels[0]] and rep.matched == 4
