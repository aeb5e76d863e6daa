import random

import pytest
from hypothesis import given, settings, strategies as st

from ihmotive.divisor import (
    INF,
    Component,
    CurveConfiguration,
    Node,
    cech_check,
    chain,
    check_walk,
    dual_graph,
    euler_char_compact,
    euler_char_divisor,
    fundamental_cycles,
    motive_dims,
    polygon,
    relabel,
    reverse_walk,
    rotate_walk,
    subdivide,
    walk_vector,
)
from ihmotive.errors import BrokenWalk, UnknownComponentId, ValidationError
from ihmotive.generators import random_multigraph


def _uf_components(V, edges):
    # independent oracle: union-find component count
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(x) for x in range(V)})


def test_dual_graph_examples():
    g = dual_graph(polygon(3))
    assert (g.V, g.E) == (3, 3)
    g = dual_graph(chain(2))
    assert (g.V, g.E) == (2, 1) and fundamental_cycles(g) == []
    loop = CurveConfiguration([Component("A")], [Node("A", 0, "A", INF)])
    g = dual_graph(loop)
    assert (g.V, g.E) == (1, 1)
    assert motive_dims(loop).m1_dim == 1


def test_motive_dims_examples():
    for r in range(3, 9):
        assert motive_dims(polygon(r)).m1_dim == 1
    assert motive_dims(chain(5)).m1_dim == 0
    elliptic = CurveConfiguration([Component("E", genus=1, coord_enabled=False)])
    assert motive_dims(elliptic).m1_dim == 2


def test_cech_examples():
    rep = cech_check(polygon(3))
    assert rep.V - rep.E == 0 == rep.m0 - rep.b1 and rep.ok
    two = CurveConfiguration([Component("A"), Component("B")],
                             [Node("A", 0, "B", 0), Node("A", 1, "B", 1)])
    rep = cech_check(two)
    assert rep.b1 == 1 and rep.ok
    p, q = polygon(3, "P"), polygon(3, "Q")
    both = CurveConfiguration(p.components + q.components, p.nodes + q.nodes)
    rep = cech_check(both)
    assert (rep.m0, rep.b1) == (2, 2) and rep.ok


def test_euler_examples():
    for r in range(3, 7):
        assert euler_char_divisor(polygon(r)) == r
    assert euler_char_compact(CurveConfiguration(()), 4) == 4
    elliptic = CurveConfiguration([Component("E", genus=1, coord_enabled=False)])
    assert euler_char_divisor(elliptic) == 0


def test_validation_errors():
    with pytest.raises(ValidationError, match="duplicate"):
        CurveConfiguration([Component("A"), Component("A")])
    with pytest.raises(UnknownComponentId):
        CurveConfiguration([Component("A")], [Node("A", 0, "B", 0)])
    with pytest.raises(ValidationError, match="coincide"):
        CurveConfiguration([Component("A"), Component("B")],
                           [Node("A", 0, "B", 0), Node("A", 0, "B", 1)])
    with pytest.raises(ValidationError):
        CurveConfiguration([Component("A"), Component("B")], [Node("A", None, "B", 0)])


def test_walks():
    c = polygon(4)
    g = dual_graph(c)
    w = c.cycles["cycle"]
    assert walk_vector(g, w) == (1, 1, 1, 1)
    assert walk_vector(g, reverse_walk(w)) == (-1, -1, -1, -1)
    assert walk_vector(g, rotate_walk(w, 2)) == (1, 1, 1, 1)
    with pytest.raises(BrokenWalk):
        check_walk(g, ((0, True), (2, True)))
    with pytest.raises(BrokenWalk):
        check_walk(g, ((0, True), (1, True), (2, True)))


def test_subdivision_and_relabel():
    c = polygon(4)
    for k in range(4):
        assert motive_dims(subdivide(c, k, "X")).m1_dim == 1
    t = subdivide(chain(3), 0, "X")
    assert motive_dims(t).m1_dim == 0
    r = relabel(c, {f"D{k}": f"E{k}" for k in range(4)}, order=[3, 1, 0, 2])
    assert motive_dims(r).b1 == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_random_multigraph_cycle_space(seed):
    c = random_multigraph(random.Random(seed))
    g = dual_graph(c)
    m0 = _uf_components(g.V, g.edges)
    rep = cech_check(c)
    assert rep.m0 == m0
    assert rep.ok
    assert g.V - g.E == m0 - rep.b1
    cyc = fundamental_cycles(g)
    assert len(cyc) == rep.b1
    d = g.boundary_matrix()
    for _, w in cyc:
        check_walk(g, w)
        assert all(x == 0 for x in d @ walk_vector(g, w))
