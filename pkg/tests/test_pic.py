import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ihmotive import fixtures
from ihmotive.divisor import INF, polygon, reverse_walk, rotate_walk
from ihmotive.errors import DegenerateGram, SupportAtNode, ValidationError
from ihmotive.exact import KStarClass, RationalMatrix as M, as_qf, block_diag
from ihmotive.generators import (
    mobius_component,
    random_cycle_bundle,
    random_degree_zero_bundle,
    random_kce_input,
    random_mobius,
)
from ihmotive.motive import SurfaceDatum
from ihmotive.pic import (
    ConfigLineBundle,
    KCEInput,
    cl_kce,
    coboundary_reduce,
    edge_transitions,
    holonomy,
    orthogonal_correction,
    pic_group_law_check,
)

F = Fraction
K = KStarClass.of


def pts(*pairs):
    return tuple((as_qf(p) if p is not INF else INF, F(m)) for p, m in pairs)


def test_edge_transitions_examples():
    div = pts((2, 1), (3, -1))
    assert edge_transitions(div, as_qf(0), as_qf(1)) == K(F(3, 4))
    assert edge_transitions((), as_qf(0), as_qf(1)) == K(1)
    assert edge_transitions(div, as_qf(0), as_qf(0)).is_trivial()


def test_edge_transitions_errors():
    with pytest.raises(ValidationError):
        edge_transitions(pts((2, 1)), as_qf(0), as_qf(1))
    with pytest.raises(SupportAtNode):
        edge_transitions(pts((0, 1), (3, -1)), as_qf(0), as_qf(1))


def test_edge_transitions_at_infinity():
    # divisor [2] - [oo]: the function z - 2 has ratio (1 - 2)/(0 - 2) = 1/2
    assert edge_transitions(pts((2, 1), (INF, -1)), as_qf(0), as_qf(1)) == K(F(1, 2))
    # node at infinity: the ratio of (z - 2)/(z - 3) at oo is 1
    assert edge_transitions(pts((2, 1), (3, -1)), INF, as_qf(1)) == K(F(1, 2))


def test_coboundary_reduce_examples():
    tri = polygon(3)
    (cls,) = coboundary_reduce(tri, {0: 2, 1: 3, 2: F(1, 6)}).classes.values()
    assert cls.is_trivial()
    (cls,) = coboundary_reduce(tri, {0: 2, 1: 1, 2: 1}).classes.values()
    assert cls == K(2) or cls == K(F(1, 2))
    assert coboundary_reduce(fixtures.tree_config(), {0: 5}).classes == {}


def test_holonomy_scalar_examples():
    tri = polygon(3)
    w = tri.cycles["cycle"]
    assert holonomy(tri, ConfigLineBundle({}, {0: 2, 1: 3, 2: F(1, 6)}), w).is_trivial()
    b = ConfigLineBundle({}, {0: 2, 1: 3, 2: 5})
    assert holonomy(tri, b, w) == K(30)
    assert holonomy(tri, b, reverse_walk(w)) == K(F(1, 30))


def test_square_holonomy_against_hand_oracle():
    # each component is entered at 0 and left at 1
    factor = (F(1 - 2) / F(1 - 3)) / (F(0 - 2) / F(0 - 3))
    assert factor == F(3, 4)
    _, config, bundle = fixtures.square_fixture()
    assert holonomy(config, bundle, config.cycles["cusp"]) == K(factor ** 4)
    assert holonomy(config, bundle, config.cycles["cusp"]) == K(F(81, 256))


def test_group_law_examples():
    tri = polygon(3)
    w = tri.cycles["cycle"]
    b1 = ConfigLineBundle({}, {0: 2, 1: 1, 2: 1})
    b2 = ConfigLineBundle({}, {0: 3, 1: 1, 2: 1})
    assert pic_group_law_check(tri, b1, ConfigLineBundle(), w)
    assert pic_group_law_check(tri, b1, b2, w)
    assert holonomy(tri, b1.tensor(b2), w) == K(6)
    assert holonomy(tri, b1.tensor(b1.inverse()), w).is_trivial()


def test_orthogonal_correction_examples():
    a = orthogonal_correction(M([[-1]]), [3])
    assert a == (-3,) and 3 - a[0] * -1 == 0
    assert orthogonal_correction(M([[-2, 1], [1, -2]]), [0, 0]) == (0, 0)
    G = M([[-2, 1], [1, -2]])
    a = orthogonal_correction(G, [-3, 0])
    assert a == (2, 1)
    assert G @ a == (-3, 0)


def test_degenerate_triangle_rejected():
    G = M([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
    v = (1, 1, 1)
    assert sum(v[i] * G[i, j] * v[j] for i in range(3) for j in range(3)) == 0
    with pytest.raises(DegenerateGram):
        orthogonal_correction(G, [0, 0, 0])
    # A2 (+) hyperbolic plane; d3 = -(e1 + e2) + u realises G inside a nondegenerate form
    Q = block_diag(M([[-2, 1], [1, -2]]), M([[0, 1], [1, 0]]))
    with pytest.raises(DegenerateGram):
        SurfaceDatum(0, Q, [(1, 0, 0, 0), (0, 1, 0, 0), (-1, -1, 1, 0)])


def test_cl_kce_trivial_and_plain_holonomy():
    surface, config, _ = fixtures.triangle_fixture()
    assert cl_kce(KCEInput(surface, config, (0, 0, 0))).value.is_trivial()
    surface, config, bundle = fixtures.square_fixture()
    res = cl_kce(KCEInput(surface, config, (0,) * 4, bundle.divisors))
    assert res.coefficients == (0,) * 4
    assert res.value == K(F(81, 256))
    assert cl_kce(KCEInput(surface, config, (0,) * 4, bundle.divisors), reverse=True).value \
        == K(F(256, 81))


def test_cl_kce_with_correction():
    surface, config, _ = fixtures.triangle_fixture()
    iv = (1, 0, -1)
    inp = KCEInput(surface, config, iv, {"D0": pts((5, 1)), "D2": pts((7, -1))})
    res = cl_kce(inp)
    G = M([[-3, 1, 1], [1, -3, 1], [1, 1, -3]])
    assert G @ res.coefficients == (1, 0, -1)
    # corrected: [5] - [oo] on D0 and [oo] - [7] on D2
    oracle = F(1 - 5, 0 - 5) * F(1 - 7, 0 - 7) ** -1
    assert res.value == K(oracle)
    assert res.value == K(F(14, 15))


def test_cl_kce_rejects_bad_inputs():
    surface, config, _ = fixtures.triangle_fixture()
    with pytest.raises(ValidationError):
        cl_kce(KCEInput(surface, config, (1, 0, 0)))  # restriction degree mismatch
    with pytest.raises(SupportAtNode):
        cl_kce(KCEInput(surface, config, (0, 0, 0), {"D0": pts((0, 1), (3, -1))}))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_holonomy_invariance(seed):
    rng = random.Random(seed)
    config, bundle, cycle = random_cycle_bundle(rng, field_d=rng.choice((None, 2, 5)))
    h = holonomy(config, bundle, cycle)
    cid = rng.choice(config.components).id
    assert holonomy(config, bundle.coboundary(config, cid, rng.randint(2, 9)), cycle) == h
    c2, b2 = mobius_component(config, bundle, cid, random_mobius(rng))
    assert holonomy(c2, b2, cycle) == h
    assert holonomy(config, bundle, rotate_walk(cycle, rng.randrange(len(cycle)))) == h
    assert holonomy(config, bundle, reverse_walk(cycle)) == h.inverse()
    assert pic_group_law_check(config, bundle, random_degree_zero_bundle(rng, config), cycle)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([F(2), F(1, 2), F(-1), F(3, 5)]))
def test_kce_linearity(seed, q):
    inp = random_kce_input(random.Random(seed))
    assert cl_kce(inp.scaled(q)).value == cl_kce(inp).value ** q
