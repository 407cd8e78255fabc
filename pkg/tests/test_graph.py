import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qmax.families import fan, star
from qmax.graph import (CycleGraph, EdgeExistsError, EdgeMissingError, GeneralGraph, GraphError,
                        add_edge, as_cycle_graph, boundary_cycle, degrees, is_maximal_outerplanar,
                        neighbor_degree_sum, remove_edge, signless_laplacian)


def test_cycle_graph_rejects_boundary_chords():
    with pytest.raises(GraphError):
        CycleGraph(5, frozenset({(0, 1)}))
    with pytest.raises(GraphError):
        CycleGraph(5, frozenset({(0, 4)}))
    with pytest.raises(GraphError):
        CycleGraph(5, frozenset({(0, 7)}))


def test_edge_count():
    g = CycleGraph(6, frozenset({(0, 2), (2, 4), (0, 4)}))
    assert g.m == 6 + 3 == 2 * 6 - 3


def test_q_of_k2():
    assert signless_laplacian(GeneralGraph(2, frozenset({(0, 1)}))).tolist() == [[1, 1], [1, 1]]


def test_q_of_c4():
    Q = signless_laplacian(CycleGraph(4))
    A = np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
    assert np.array_equal(Q, 2 * np.eye(4) + A)


def test_q_of_fan6_diagonal():
    assert np.diag(signless_laplacian(fan(6))).tolist() == [5, 2, 3, 3, 3, 2]


def test_q_independent_of_insertion_order():
    e = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]
    a = signless_laplacian(GeneralGraph(4, frozenset(e)))
    b = signless_laplacian(GeneralGraph(4, frozenset(reversed([(y, x) for x, y in e]))))
    assert np.array_equal(a, b)


@pytest.mark.parametrize("g, expected", [
    (CycleGraph(5), [2, 2, 2, 2, 2]),
    (star(5), [4, 1, 1, 1, 1]),
])
def test_degrees(g, expected):
    assert degrees(g) == expected


def test_fan6_degree_multiset():
    assert sorted(degrees(fan(6))) == [2, 2, 3, 3, 3, 5]


def test_neighbor_degree_sum():
    assert all(neighbor_degree_sum(CycleGraph(6), u) == 4 for u in range(6))
    assert neighbor_degree_sum(fan(6), 0) == 13
    assert neighbor_degree_sum(star(5), 3) == 4
    with pytest.raises(GraphError):
        neighbor_degree_sum(fan(6), 6)


def test_add_remove():
    c4 = CycleGraph(4)
    g = add_edge(c4, (2, 0))
    assert isinstance(g, CycleGraph) and g.chords == {(0, 2)}
    assert remove_edge(g, (0, 2)) == c4
    f = fan(6)
    assert remove_edge(f, (0, 3)).m == f.m - 1
    assert f.m == 9  # operations do not mutate
    with pytest.raises(EdgeExistsError):
        add_edge(f, (0, 3))
    with pytest.raises(EdgeMissingError):
        remove_edge(f, (1, 3))


def test_remove_boundary_edge_gives_general_graph():
    g = remove_edge(fan(5), (1, 2))
    assert isinstance(g, GeneralGraph) and g.m == 6


def test_is_maximal_outerplanar_examples():
    assert is_maximal_outerplanar(CycleGraph(6, frozenset({(0, 2), (2, 4), (0, 4)})))
    assert not is_maximal_outerplanar(CycleGraph(6, frozenset({(0, 2), (1, 3)})))
    assert not is_maximal_outerplanar(CycleGraph(5, frozenset({(0, 2)})))
    with pytest.raises(GraphError):
        is_maximal_outerplanar(CycleGraph(2))


def test_crossing_count_and_shared_endpoints():
    # n-3 chords but two of them cross
    assert not is_maximal_outerplanar(CycleGraph(6, frozenset({(0, 2), (1, 4), (0, 3)})))
    assert is_maximal_outerplanar(fan(9))


def test_boundary_recovery_after_relabel():
    g = fan(7)
    perm = [3, 6, 0, 5, 1, 4, 2]
    h = GeneralGraph(7, frozenset((perm[a], perm[b]) for a, b in g.edges))
    assert boundary_cycle(h) is not None
    back = as_cycle_graph(h)
    assert sorted(degrees(back)) == sorted(degrees(g))
    assert is_maximal_outerplanar(back)
    with pytest.raises(GraphError):
        as_cycle_graph(star(5))


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_add_remove_inverse(args):
    n, a, b = args
    g = fan(n)
    if a == b:
        return
    e = (min(a, b), max(a, b))
    if e in g.edges:
        assert add_edge(remove_edge(g, e), e) == g
    else:
        assert remove_edge(add_edge(g, e), e) == g
