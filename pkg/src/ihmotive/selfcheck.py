"""Seeded run of the invariant suite over fixtures and random instances."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import fixtures
from .cusp import (
    cf_bracket,
    cusp_cycle,
    fundamental_unit,
    is_gram_negative_definite,
    minus_cf,
    unit_period_check,
)
from .divisor import (
    cech_check,
    motive_dims,
    polygon,
    reverse_walk,
    rotate_walk,
    subdivide,
)
from .errors import IHMotiveError
from .exact import (
    KStarClass,
    QuadraticFieldElement,
    RationalMatrix,
    bilinear,
    is_negative_definite,
    kstar_equal,
    mat_solve,
)
from .generators import (
    mobius_component,
    random_adjoint_pair,
    random_cycle_bundle,
    random_degree_zero_bundle,
    random_invertible,
    random_kce_input,
    random_lefschetz_case,
    random_mobius,
    random_multigraph,
    random_murre_tuple,
    random_surface,
    random_tree,
)
from .motive import (
    blow_up,
    degree_check,
    hard_lefschetz_check,
    ih_decomposition,
    is_orthogonal_decomposition,
    kunneth_betti,
    murre_correct,
    projector_p,
    restricted_form,
    signature,
)
from .pic import cl_kce, holonomy, orthogonal_correction, pic_group_law_check


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str
    seed: int


def check_surface(s) -> str | None:
    """Return a description of the first violated projector invariant, or None."""
    P = projector_p(s)
    if not P.is_idempotent():
        return "P^2 != P"
    if not P.is_self_adjoint():
        return "QP not symmetric"
    if P.rank != s.r:
        return f"rank P = {P.rank}, r = {s.r}"
    for m, d in enumerate(s.exceptional):
        if P.P @ d != d:
            return f"P d_{m} != d_{m}"
    ih, _ = ih_decomposition(s)
    if len(ih) != s.b2 - s.r:
        return "dim ker P != b2 - r"
    for v in ih:
        if any(x != 0 for x in P.P @ v):
            return "IH basis vector not in ker P"
    if ih and restricted_form(s, ih).det() == 0:
        return "restricted form degenerate"
    if not kunneth_betti(s).is_palindromic():
        return "Kunneth dims not palindromic"
    return None


def _count(n: int, fn: Callable[[random.Random], str | None], rng: random.Random) -> str | None:
    for i in range(n):
        err = fn(rng)
        if err:
            return f"instance {i}: {err}"
    return None


def _p_solve(rng):
    n = rng.randint(1, 5)
    A = random_invertible(rng, n)
    b = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n))
    return None if A @ mat_solve(A, b) == b else "A x != b"


def _p_definite(rng):
    from .generators import _int_matrix
    n = rng.randint(1, 4)
    A = _int_matrix(rng, n, n)
    G = A + A.T - RationalMatrix.identity(n) * rng.randint(0, 8)
    if is_negative_definite(G):
        for v in itertools.product(range(-3, 4), repeat=n):
            if any(v) and bilinear(v, G, v) >= 0:
                return f"v={v} has v^T G v >= 0 for a definite G"
    return None


def _p_kstar(rng):
    d = rng.choice((2, 3, 5))

    def elem():
        return QuadraticFieldElement(rng.randint(1, 5), rng.randint(-2, 2), d)

    def cls():
        return KStarClass([(elem(), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
                           for _ in range(rng.randint(0, 3))])

    u, w = cls(), cls()
    v = u * KStarClass.of(-1) * (w / w)
    if not (kstar_equal(u, u) and kstar_equal(u, v) and kstar_equal(v, u)):
        return "reflexivity/symmetry"
    if not kstar_equal(u * w, v * w):
        return "not compatible with multiplication"
    x, y = elem(), elem()
    if (x * y).norm() != x.norm() * y.norm():
        return "norm not multiplicative"
    if x.conjugate().conjugate() != x or (x * y).conjugate() != x.conjugate() * y.conjugate():
        return "conjugation not an involutive automorphism"
    return None


def _p_projector(rng):
    return check_surface(random_surface(rng))


def _p_blowup(rng):
    s = random_surface(rng)
    before = restricted_form(s)
    for t in (blow_up(s), blow_up(blow_up(s))):
        after = restricted_form(t)
        if after.rows != before.rows:
            return "IH dimension changed"
        if after.rows and (after.det() != before.det() or signature(after) != signature(before)):
            return "restricted form changed"
    return None


def _p_degree(rng):
    Fpull, Fpush, QX, QY, n = random_adjoint_pair(rng)
    if not degree_check(Fpull, Fpush, QX, QY, n):
        return "generated adjoint pair rejected"
    if degree_check(Fpull, Fpush * 2, QX, QY, n):
        return "broken adjunction accepted"
    return None


def _p_murre(rng):
    pi0, p1, p3, pi4, n = random_murre_tuple(rng, rng.random() < 0.5)
    return None if is_orthogonal_decomposition(murre_correct(pi0, p1, p3, pi4, n)) else \
        "corrected projectors not orthogonal"


def _p_lefschetz(rng):
    s, c, a = random_lefschetz_case(rng)
    rep = hard_lefschetz_check(s, c, a)
    return None if rep.ell_sq > 0 and rep.inequality_holds else "inequality fails"


def _p_divisor(rng):
    c = random_multigraph(rng)
    rep = cech_check(c)
    if not rep.ok:
        return f"Cech check failed: {rep}"
    m = motive_dims(c)
    if m.m0_dim > m.m2_dim or m.m1_dim < 0:
        return "dimension bounds"
    t = random_tree(rng)
    if motive_dims(t).m1_dim != 0:
        return "tree has m1 != 0"
    r = rng.randint(3, 8)
    p = polygon(r)
    if motive_dims(p).m1_dim != 1:
        return "polygon has m1 != 1"
    if motive_dims(subdivide(p, rng.randrange(r), "new")).m1_dim != 1:
        return "subdivision changed m1"
    return None


def _p_orthogonal_correction(rng):
    from .generators import random_negative_definite
    n = rng.randint(1, 5)
    G = random_negative_definite(rng, n)
    iv = tuple(rng.randint(-5, 5) for _ in range(n))
    a = orthogonal_correction(G, iv)
    return None if G @ a == iv else "nonzero residual"


def _p_holonomy(rng):
    config, bundle, cycle = random_cycle_bundle(rng)
    h = holonomy(config, bundle, cycle)
    cid = rng.choice(config.components).id
    if holonomy(config, bundle.coboundary(config, cid, rng.randint(2, 9)), cycle) != h:
        return "coboundary changed the class"
    c2, b2 = mobius_component(config, bundle, cid, random_mobius(rng))
    if holonomy(c2, b2, cycle) != h:
        return "Mobius change changed the class"
    if holonomy(config, bundle, rotate_walk(cycle, rng.randrange(len(cycle)))) != h:
        return "base point changed the class"
    if holonomy(config, bundle, reverse_walk(cycle)) != h.inverse():
        return "reversal did not invert"
    ok = pic_group_law_check(config, bundle, random_degree_zero_bundle(rng, config), cycle)
    return None if ok else "group law"


def _p_kce(rng):
    inp = random_kce_input(rng)
    base = cl_kce(inp).value
    for q in (Fraction(2), Fraction(1, 2), Fraction(-1), Fraction(3, 5)):
        if cl_kce(inp.scaled(q)).value != base ** q:
            return f"not linear for q={q}"
    return None


def _p_cusp(_rng):
    for d in (2, 3, 5, 6, 7, 13, 17):
        c = cusp_cycle(d)
        if min(c.period) < 2 or max(c.period) < 3:
            return f"d={d}: bad period {c.period}"
        if not is_gram_negative_definite(c):
            return f"d={d}: Gram not negative definite"
        if motive_dims(c.config).m1_dim != 1:
            return f"d={d}: m1 != 1"
        rep = unit_period_check(c)
        if not rep.ok:
            return f"d={d}: {rep.failures}"
        eps = fundamental_unit(d)
        if eps.norm() != 1 or not eps.is_totally_positive():
            return f"d={d}: epsilon not a totally positive unit"
        lo, hi = cf_bracket(c.preperiod, c.period, 40)
        w = c.seed.value()
        if not (lo <= w <= hi):
            return f"d={d}: expansion does not bracket the seed"
    pre, per = minus_cf(cusp_cycle(5).seed)
    return None if per == [3] else "d=5 period is not [3]"


PROPERTIES = [
    ("exact.solve", 30, _p_solve),
    ("exact.definiteness_vs_bruteforce", 30, _p_definite),
    ("exact.kstar_and_quadratic", 30, _p_kstar),
    ("motive.projector", 40, _p_projector),
    ("motive.blow_up", 20, _p_blowup),
    ("motive.degree", 20, _p_degree),
    ("motive.murre", 30, _p_murre),
    ("motive.lefschetz", 30, _p_lefschetz),
    ("divisor.dims_and_cech", 30, _p_divisor),
    ("pic.orthogonal_correction", 30, _p_orthogonal_correction),
    ("pic.holonomy", 30, _p_holonomy),
    ("pic.kce_linearity", 10, _p_kce),
    ("cusp.cycles", 1, _p_cusp),
]


def _fixture_checks():
    out = []
    s = fixtures.a2_surface()
    out.append(("fixture.a2", check_surface(s) or (
        None if len(ih_decomposition(s)[0]) == 1 else "IH dim != 1")))
    out.append(("fixture.smooth", check_surface(fixtures.smooth_surface())))
    surface, config, bundle = fixtures.square_fixture()
    h = holonomy(config, bundle, config.cycles["cusp"])
    out.append(("fixture.square_holonomy",
                None if h == KStarClass.of(Fraction(81, 256)) else f"holonomy {h}"))
    return out


def run_selfcheck(seed: int = 0, extra_surfaces=(), scale: float = 1.0) -> list[PropertyResult]:
    """Run every property; ``extra_surfaces`` are ``(name, loader)`` pairs checked like fixtures."""
    results = []
    for name, err in _fixture_checks():
        results.append(PropertyResult(name, err is None, err or "ok", seed))
    for name, loader in extra_surfaces:
        try:
            err = check_surface(loader())
        except IHMotiveError as exc:
            err = f"{type(exc).__name__}: {exc}"
        results.append(PropertyResult(f"fixture.{name}", err is None, err or "ok", seed))
    for name, n, fn in PROPERTIES:
        rng = random.Random(f"{seed}:{name}")
        try:
            err = _count(max(1, int(n * scale)), fn, rng)
        except IHMotiveError as exc:
            err = f"{type(exc).__name__}: {exc}"
        results.append(PropertyResult(name, err is None, err or "ok", seed))
    return results
