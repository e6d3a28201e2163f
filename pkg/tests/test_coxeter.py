from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from clusterex.coxeter import (
    InvalidWord,
    NotAdjacent,
    WrongFamily,
    apply_coxeter,
    bc_kernel,
    build_bc,
    check_word,
    coxeter_height,
    expected_kernel_dimension,
    kernel_root_differences,
    kernel_structure_report,
    precedes,
    support_components,
)
from clusterex.rootsys import build_root_system, positive_roots

A1, A2, A3 = (build_root_system("A", n) for n in (1, 2, 3))


def test_precedes():
    assert precedes(A2, (1, 2), 1, 2)
    assert not precedes(A2, (2, 1), 1, 2)
    with pytest.raises(NotAdjacent):
        precedes(A3, (1, 2, 3), 1, 3)


def test_bad_words():
    with pytest.raises(InvalidWord):
        check_word(A3, (1, 1, 2))
    with pytest.raises(InvalidWord):
        check_word(A2, (1, 2, 3))


def test_bc_examples():
    assert build_bc(A2, (1, 2)) == ((0, 1), (-1, 0))
    assert build_bc(A2, (2, 1)) == ((0, -1), (1, 0))
    assert build_bc(A1, (1,)) == ((0,),)


@pytest.mark.parametrize("family,rank", [("B", 3), ("C", 3), ("G", 2), ("F", 4), ("D", 5)])
def test_bc_skew_symmetrizable(family, rank):
    ctx = build_root_system(family, rank)
    d = ctx.symmetrizers
    for w in list(permutations(range(1, rank + 1)))[:12]:
        b = build_bc(ctx, w)
        for i in range(rank):
            assert b[i][i] == 0
            for j in range(rank):
                assert d[i] * b[i][j] == -d[j] * b[j][i]
                assert (b[i][j] != 0) == (i != j and ctx.cartan[i][j] != 0)


def test_coxeter_action():
    assert apply_coxeter(A2, (1, 2), (1, 0)) == (-1, 1)
    assert apply_coxeter(A2, (1, 2), (1, 0), 2) == (0, -1)
    assert apply_coxeter(A2, (1, 2), (1, 0), 0) == (1, 0)


def test_heights():
    assert coxeter_height(A2, (1, 2), 1) == 2
    assert coxeter_height(A2, (1, 2), 2) == 1
    assert coxeter_height(A1, (1,), 1) == 1


@given(
    st.sampled_from([("A", 4), ("B", 3), ("G", 2), ("E", 6), ("F", 4)]).flatmap(
        lambda t: st.tuples(
            st.just(build_root_system(*t)),
            st.permutations(range(1, t[1] + 1)),
            st.lists(st.integers(-4, 4), min_size=t[1], max_size=t[1]),
            st.integers(-6, 6),
        )
    )
)
def test_coxeter_power_inverse(data):
    ctx, word, w, k = data
    w = tuple(w)
    assert apply_coxeter(ctx, tuple(word), apply_coxeter(ctx, tuple(word), w, k), -k) == w


def test_kernel_examples():
    assert bc_kernel(build_bc(A2, (1, 2))) == []
    (v,) = bc_kernel(build_bc(A3, (1, 2, 3)))
    assert [i for i, x in enumerate(v) if x] == [0, 2]
    d4 = build_root_system("D", 4)
    assert len(bc_kernel(build_bc(d4, (1, 2, 3, 4)))) == 2


def test_support_components():
    assert support_components(A3, (1, 0, 1)) == 2
    assert support_components(A3, (1, 1, 1)) == 1
    assert support_components(A3, (0, 0, 0)) == 0


def test_kernel_report_a5_and_d5():
    a5 = build_root_system("A", 5)
    for w in [(1, 2, 3, 4, 5), (3, 1, 5, 2, 4)]:
        rep = kernel_structure_report(a5, w)
        assert rep.dimension == 1 and rep.odd_support_ok and rep.components == [3]
    d5 = build_root_system("D", 5)
    rep = kernel_structure_report(d5, (4, 3, 5, 1, 2))
    assert rep.d_predicted == "plus" and rep.basis == [(0, 0, 0, 1, 1)]
    with pytest.raises(WrongFamily):
        kernel_structure_report(build_root_system("E", 6), (1, 2, 3, 4, 5, 6))


@pytest.mark.parametrize("family,ranks", [("A", range(1, 7)), ("B", range(2, 7)), ("C", range(3, 7)), ("D", range(4, 7))])
def test_kernel_dimension_all_words(family, ranks):
    for n in ranks:
        ctx = build_root_system(family, n)
        for w in permutations(range(1, n + 1)):
            rep = kernel_structure_report(ctx, w)
            assert rep.dimension == expected_kernel_dimension(family, n)
            if rep.odd_support_ok is not None:
                assert rep.odd_support_ok and rep.components == [rep.expected_components]
            if family == "D":
                assert rep.d_classification_ok


@pytest.mark.parametrize("family,rank,bound", [("A", 6, 2), ("B", 5, 2), ("C", 5, 2), ("D", 6, 3)])
def test_difference_of_roots_has_few_components(family, rank, bound):
    ctx = build_root_system(family, rank)
    roots = [r.root for r in positive_roots(ctx)]
    worst = max(support_components(ctx, [a - b for a, b in zip(x, y)]) for x, y in combinations(roots, 2))
    assert worst <= bound


def test_kernel_root_differences():
    assert kernel_root_differences(A3, (1, 2, 3)) == [((0, 1, 0), (1, 1, 1))]
    assert kernel_root_differences(A2, (1, 2)) == []
    e7 = build_root_system("E", 7)
    assert kernel_root_differences(e7, (1, 2, 3, 4, 5, 6, 7)) == []
