"""Seeded random instances for the invariant suite.

Every generator takes a :class:`random.Random` and builds its object so the
relevant hypotheses hold by construction.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cusp import cycle_config, cycle_gram
from .divisor import INF, Component, CurveConfiguration, Node
from .exact import QuadraticFieldElement, RationalMatrix, as_qf, block_diag, mat_kernel
from .motive import SurfaceDatum
from .pic import ConfigLineBundle, KCEInput


def _int_matrix(rng: random.Random, rows: int, cols: int, lo=-2, hi=2) -> RationalMatrix:
    return RationalMatrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)],
                          cols=cols)


def random_invertible(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        S = _int_matrix(rng, n, n)
        if S.det() != 0:
            return S


def random_negative_definite(rng: random.Random, n: int) -> RationalMatrix:
    A = _int_matrix(rng, n, n)
    return -(A.T @ A) - RationalMatrix.identity(n)


def random_surface(rng: random.Random, b2_max: int = 8, r_max: int = 4,
                   h1_choices=(0, 2, 4)) -> SurfaceDatum:
    """Surface with a hyperbolic-type form and ``r <= r_max`` exceptional classes.

    Built as ``G_exc (+) H`` in an adapted basis, then moved to a random
    rational basis, so the Gram matrix is negative definite by construction.
    """
    b2 = rng.randint(1, b2_max)
    r = rng.randint(0, min(r_max, b2 - 1))
    n = b2 - r
    H = [[0] * n for _ in range(n)]
    H[0][0] = rng.randint(1, 4)
    for i in range(1, n):
        H[i][i] = -rng.randint(1, 4)
    Q0 = block_diag(random_negative_definite(rng, r) if r else RationalMatrix.zeros(0, 0),
                    RationalMatrix(H, cols=n))
    S = random_invertible(rng, b2)
    Sinv = S.inverse()
    Q = Sinv.T @ Q0 @ Sinv
    exceptional = [S.col(k) for k in range(r)]
    return SurfaceDatum(rng.choice(h1_choices), Q, exceptional)


def random_lefschetz_case(rng: random.Random):
    """``(surface, c, a)`` with ``c.c > 0``, ``a >= 0`` and ``c - sum a d`` orthogonal to all d."""
    s = random_surface(rng)
    B = s.basis_matrix()
    ih = mat_kernel(B.T @ s.Q) if s.r else [RationalMatrix.identity(s.b2).row(i)
                                             for i in range(s.b2)]
    while True:
        coeffs = [rng.randint(-3, 3) for _ in ih]
        ell = tuple(sum((c * v[i] for c, v in zip(coeffs, ih)), Fraction(0)) for i in range(s.b2))
        if s.pairing(ell, ell) > 0:
            break
    a = tuple(Fraction(rng.randint(0, 6), rng.randint(1, 3)) for _ in range(s.r))
    D = tuple(sum((am * d[i] for am, d in zip(a, s.exceptional)), Fraction(0))
              for i in range(s.b2))
    t = 1
    while True:
        c = tuple(t * li + Di for li, Di in zip(ell, D))
        if s.pairing(c, c) > 0:
            return s, c, a
        t += 1


def random_murre_tuple(rng: random.Random, nonzero_p1p3: bool):
    """Projectors ``pi0, p1, p3, pi4`` on ``Q^n`` with ``p3 p1 = 0``.

    In an adapted basis ``E0 (+) A (+) B (+) C (+) E4``, ``p1 = [[1, X], [0, 0]]``
    on ``A (+) B`` and ``p3`` projects onto ``B``; then conjugate by a random
    invertible matrix.  ``p1 p3 = X`` in block form.
    """
    q = rng.randint(1, 2)
    c = rng.randint(0, 2)
    n = 2 + 2 * q + c
    X = _int_matrix(rng, q, q)
    if nonzero_p1p3 and X.is_zero():
        X = RationalMatrix([[1 if (i, j) == (0, 0) else X[i, j] for j in range(q)]
                            for i in range(q)], cols=q)
    if not nonzero_p1p3:
        X = RationalMatrix.zeros(q, q)

    def embed(block, offset):
        M = [[Fraction(0)] * n for _ in range(n)]
        for i in range(block.rows):
            for j in range(block.cols):
                M[offset + i][offset + j] = block[i, j]
        return RationalMatrix(M, cols=n)

    one = RationalMatrix([[1]])
    p1_block = RationalMatrix([[1 if i == j and i < q else (X[i, j - q] if i < q <= j else 0)
                                for j in range(2 * q)] for i in range(2 * q)], cols=2 * q)
    p3_block = RationalMatrix([[1 if i == j and i >= q else 0 for j in range(2 * q)]
                               for i in range(2 * q)], cols=2 * q)
    pi0 = embed(one, 0)
    p1 = embed(p1_block, 1)
    p3 = embed(p3_block, 1)
    pi4 = embed(one, n - 1)
    S = random_invertible(rng, n)
    Si = S.inverse()
    return tuple(S @ M @ Si for M in (pi0, p1, p3, pi4)) + (n,)


def random_adjoint_pair(rng: random.Random):
    """``(Fpull, Fpush, QX, QY, n)`` with ``Fpush Fpull = n`` and the adjunction."""
    while True:
        bY = rng.randint(1, 4)
        bX = bY + rng.randint(0, 3)
        QX = random_invertible(rng, bX)
        QX = QX.T @ RationalMatrix.diag([rng.choice((-1, 1)) * rng.randint(1, 3)
                                         for _ in range(bX)]) @ QX
        Fpull = _int_matrix(rng, bX, bY)
        n = rng.randint(1, 4)
        QY = (Fpull.T @ QX @ Fpull) * Fraction(1, n)
        if QY.det() == 0:
            continue
        Fpush = QY.inverse() @ Fpull.T @ QX
        return Fpull, Fpush, QX, QY, n


def random_multigraph(rng: random.Random, max_v: int = 7, max_e: int = 10) -> CurveConfiguration:
    """Coordinate-free configuration with random genera, loops and parallel edges."""
    V = rng.randint(1, max_v)
    comps = tuple(Component(f"C{i}", rng.choice((0, 0, 0, 1, 2)), False) for i in range(V))
    nodes = tuple(Node(f"C{rng.randrange(V)}", None, f"C{rng.randrange(V)}", None)
                  for _ in range(rng.randint(0, max_e)))
    return CurveConfiguration(comps, nodes)


def random_tree(rng: random.Random, max_v: int = 8) -> CurveConfiguration:
    V = rng.randint(1, max_v)
    comps = tuple(Component(f"T{i}") for i in range(V))
    used: dict[int, int] = {}
    nodes = []
    for i in range(1, V):
        j = rng.randrange(i)
        # distinct integer coordinates per component
        pi, pj = used.get(i, 0), used.get(j, 0)
        used[i], used[j] = pi + 1, pj + 1
        nodes.append(Node(f"T{j}", as_qf(pj), f"T{i}", as_qf(pi)))
    return CurveConfiguration(comps, tuple(nodes))


def _random_rational(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


def _random_point(rng: random.Random, field_d: int | None):
    if rng.random() < 0.1:
        return INF
    x = _random_rational(rng)
    if field_d is not None and rng.random() < 0.5:
        return QuadraticFieldElement(x, Fraction(rng.randint(1, 3), rng.randint(1, 2)), field_d)
    return as_qf(x)


def _distinct_points(rng: random.Random, k: int, avoid=(), field_d: int | None = None) -> list:
    taken = list(avoid)
    out = []
    while len(out) < k:
        p = _random_point(rng, field_d)
        if any((p is INF and q is INF) or (p is not INF and q is not INF and p == q)
               for q in taken):
            continue
        taken.append(p)
        out.append(p)
    return out


def random_degree_zero_bundle(rng: random.Random, config: CurveConfiguration,
                              field_d: int | None = None) -> ConfigLineBundle:
    """Random degree-zero divisors (rational multiplicities) avoiding the node points."""
    divisors = {}
    for comp in config.components:
        npts = rng.randint(0, 3)
        if npts == 0:
            continue
        nodes = [p for _, _, p in config.node_points(comp.id)]
        pts = _distinct_points(rng, npts + 1, avoid=nodes, field_d=field_d)
        mults = [Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2, 3))) for _ in range(npts)]
        mults.append(-sum(mults, Fraction(0)))
        divisors[comp.id] = tuple(zip(pts, mults))
    return ConfigLineBundle(divisors)


def random_cycle_bundle(rng: random.Random, field_d: int | None = None):
    """A cycle of rational components with random node coordinates and a degree-zero divisor bundle.

    Returns ``(config, bundle, cycle)``.  Coordinates may include infinity.
    """
    r = rng.randint(1, 5)
    comps = tuple(Component(f"P{k}") for k in range(r))
    # node k leaves P_k at outs[k] and enters P_{k+1} at ins[k+1]
    ins, outs = [None] * r, [None] * r
    for k in range(r):
        ins[k], outs[k] = _distinct_points(rng, 2, field_d=field_d)
    nodes = tuple(Node(f"P{k}", outs[k], f"P{(k + 1) % r}", ins[(k + 1) % r]) for k in range(r))
    config = CurveConfiguration(comps, nodes)
    cycle = tuple((k, True) for k in range(r))
    return config, random_degree_zero_bundle(rng, config, field_d), cycle


def mobius_point(p, coeffs):
    """Apply ``z -> (a z + b) / (c z + d)`` on the projective line."""
    a, b, c, d = coeffs
    if p is INF:
        return INF if c == 0 else as_qf(Fraction(a, 1) / c)
    den = c * p + d
    if not den:
        return INF
    return (a * p + b) / den


def mobius_component(config: CurveConfiguration, bundle: ConfigLineBundle, cid: str, coeffs):
    """Change the coordinate on one component, moving node and divisor points."""
    nodes = []
    for n in config.nodes:
        pa = mobius_point(n.point_a, coeffs) if n.comp_a == cid else n.point_a
        pb = mobius_point(n.point_b, coeffs) if n.comp_b == cid else n.point_b
        nodes.append(Node(n.comp_a, pa, n.comp_b, pb))
    divisors = dict(bundle.divisors)
    if cid in divisors:
        divisors[cid] = tuple((mobius_point(p, coeffs), m) for p, m in divisors[cid])
    return (CurveConfiguration(config.components, tuple(nodes), config.cycles),
            ConfigLineBundle(divisors, bundle.edge_values))


def random_mobius(rng: random.Random):
    while True:
        a, b, c, d = (rng.randint(-4, 4) for _ in range(4))
        if a * d - b * c != 0:
            return a, b, c, d


def random_period(rng: random.Random, r: int) -> tuple[int, ...]:
    while True:
        period = tuple(rng.randint(2, 5) for _ in range(r))
        if max(period) >= 3 and (r > 1 or period[0] >= 3):
            return period


def random_kce_input(rng: random.Random) -> KCEInput:
    """Cusp-like polygon inside a surface ``[1] (+) G`` with random restriction data."""
    r = rng.randint(1, 5)
    period = random_period(rng, r)
    G = cycle_gram(period)
    Q = block_diag(RationalMatrix([[1]]), G)
    exc = [tuple(1 if i == k + 1 else 0 for i in range(r + 1)) for k in range(r)]
    surface = SurfaceDatum(0, Q, exc)
    config = cycle_config(period)
    iv = []
    points = {}
    for k in range(r):
        m = rng.randint(-3, 3)
        npts = rng.randint(1 if m else 0, 3)
        if npts == 0:
            iv.append(0)
            continue
        pts = []
        while len(pts) < npts:
            x = as_qf(Fraction(rng.randint(2, 12) * rng.choice((-1, 1)), rng.randint(1, 3)))
            if x not in pts and x != 0 and x != 1:
                pts.append(x)
        mults = [rng.randint(-2, 3) for _ in range(npts - 1)]
        mults.append(m - sum(mults))
        iv.append(m)
        points[f"D{k}"] = tuple(zip(pts, mults))
    return KCEInput(surface, config, tuple(iv), points)
