import pytest
from hypothesis import given, strategies as st

from clusterex.gfan import (
    NotInPi,
    build_pi,
    compatibility_degree,
    decompose,
    enumerate_clusters,
    is_compatible,
    is_exchangeable,
    tau,
    tau_pl,
)
from clusterex.linalg import det
from clusterex.rootsys import build_root_system, cluster_count, n_positive_roots

A1, A2, A3 = (build_root_system("A", n) for n in (1, 2, 3))
PI_A2 = build_pi(A2, (1, 2))
CS_A2 = enumerate_clusters(PI_A2)


def test_pi_examples():
    assert sorted(PI_A2.elements) == sorted([(1, 0), (0, 1), (-1, 1), (0, -1), (-1, 0)])
    assert PI_A2.heights == (2, 1)
    assert sorted(build_pi(A1, (1,)).elements) == [(-1,), (1,)]
    assert len(build_pi(A3, (2, 1, 3))) == 9


def test_tau_examples():
    assert tau(PI_A2, (-1, 0)) == (1, 0)
    assert tau(PI_A2, (1, 0)) == (-1, 1)
    with pytest.raises(NotInPi):
        tau(PI_A2, (2, 0))


@pytest.mark.parametrize("family,rank,word", [("A", 2, (1, 2)), ("B", 3, (2, 1, 3)), ("D", 4, (4, 2, 1, 3)), ("G", 2, (2, 1))])
def test_tau_order(family, rank, word):
    pi = build_pi(build_root_system(family, rank), word)
    assert len(pi) == n_positive_roots(family, rank) + rank
    for w in pi.elements:
        assert tau(pi, w, pi.order) == w


def test_degree_examples():
    assert compatibility_degree(PI_A2, (1, 0), (0, 1)) == 0
    assert compatibility_degree(PI_A2, (1, 0), (-1, 1)) == 1
    assert compatibility_degree(PI_A2, (0, 1), (-1, 0)) == 1
    assert is_compatible(PI_A2, (1, 0), (0, 1))
    assert is_exchangeable(PI_A2, (1, 0), (-1, 1))
    assert is_compatible(PI_A2, (-1, 0), (0, -1))


@pytest.mark.parametrize(
    "family,rank,word", [("A", 1, (1,)), ("A", 2, (1, 2)), ("A", 3, (1, 2, 3)), ("B", 2, (1, 2)), ("G", 2, (1, 2)), ("D", 4, (1, 2, 3, 4)), ("F", 4, (3, 1, 4, 2))]
)
def test_cluster_enumeration(family, rank, word):
    ctx = build_root_system(family, rank)
    cs = enumerate_clusters(build_pi(ctx, word))
    assert len(cs) == cluster_count(family, rank)
    for c in range(len(cs)):
        assert abs(det(cs.gmatrix(c))) == 1


def test_a1_clusters():
    cs = enumerate_clusters(build_pi(A1, (1,)))
    assert sorted(tuple(cs.pi.elements[x] for x in cl) for cl in cs.clusters) == [((-1,),), ((1,),)]


def test_decompose_examples():
    c, coords = decompose(CS_A2, (2, 1))
    assert c == CS_A2.initial and sorted(coords) == [1, 2]
    gens, coords = CS_A2.decompose_weight((2, 1))
    assert dict(zip(gens, coords)) == {(1, 0): 2, (0, 1): 1}
    gens, coords = CS_A2.decompose_weight((0, 0))
    assert all(a == 0 for a in coords)
    gens, coords = CS_A2.decompose_weight((-1, 0))
    assert {g: a for g, a in zip(gens, coords) if a} == {(-1, 0): 1}


def test_tau_pl_examples():
    assert tau_pl(PI_A2, CS_A2, (0, 0), 3) == (0, 0)
    # linear on the initial cone: tau(w1) + tau(w2) = (-1,1) + (-1,0)
    assert tau(PI_A2, (0, 1)) == (-1, 0)
    assert tau_pl(PI_A2, CS_A2, (1, 1)) == (-2, 1)


B3 = build_root_system("B", 3)
PI_B3 = build_pi(B3, (2, 3, 1))
CS_B3 = enumerate_clusters(PI_B3)


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_decompose_recombines_and_tau_pl_has_period(w):
    w = tuple(w)
    c, coords = CS_B3.decompose(w)
    assert all(a >= 0 for a in coords)
    assert CS_B3.recombine(c, coords) == w
    assert tau_pl(PI_B3, CS_B3, w, PI_B3.order) == w
    assert tau_pl(PI_B3, CS_B3, tau_pl(PI_B3, CS_B3, w, 1), -1) == w


def test_tau_maps_clusters_to_clusters():
    t = PI_B3.tau_next
    for cl in CS_B3.clusters:
        assert tuple(sorted(t[x] for x in cl)) in CS_B3.index
