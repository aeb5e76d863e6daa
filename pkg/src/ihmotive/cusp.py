"""Cusp cycles of real quadratic fields.

The cusp of the Hilbert modular group of ``Q(sqrt d)`` is resolved by a
cycle of rational curves whose self-intersections are ``-b_k`` for the
period ``(b_k)`` of the minus continued fraction of a reduced generator of
the ring of integers.  The monodromy of the period is a totally positive
unit, a power of the fundamental one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .divisor import Component, CurveConfiguration, Node
from .errors import NotIrrational, NotSquarefree, ValidationError
from .exact import (
    QuadraticFieldElement,
    RationalMatrix,
    as_qf,
    is_negative_definite,
    is_square,
    is_squarefree,
)


@dataclass(frozen=True)
class QuadraticIrrational:
    """``(p + sqrt d) / q`` with ``q`` dividing ``d - p^2``."""

    p: int
    q: int
    d: int

    def __post_init__(self):
        if self.q == 0:
            raise ValidationError("q must be nonzero", field="q")
        if self.d < 0:
            raise ValidationError("d must be nonnegative", field="d")
        if (self.d - self.p * self.p) % self.q:
            raise ValidationError(f"q={self.q} does not divide d - p^2", field="q",
                                  invariant="q | d - p^2")

    def value(self) -> QuadraticFieldElement:
        r = isqrt(self.d)
        if r * r == self.d:
            return as_qf(Fraction(self.p + r, self.q))
        return QuadraticFieldElement(Fraction(self.p, self.q), Fraction(1, self.q), self.d)

    def ceil(self) -> int:
        r = isqrt(self.d)
        if self.q > 0:
            fl = (self.p + r) // self.q
        else:
            fl = (-self.p - r - 1) // (-self.q)
        return fl + 1

    def step(self, b: int) -> "QuadraticIrrational":
        """``1 / (b - w)``."""
        p = b * self.q - self.p
        return QuadraticIrrational(p, (p * p - self.d) // self.q, self.d)


def minus_cf(w: QuadraticIrrational, max_steps: int = 100000) -> tuple[list[int], list[int]]:
    """Minus continued fraction ``w = b0 - 1/(b1 - 1/(...))`` as (preperiod, period)."""
    if is_square(w.d):
        raise NotIrrational(f"d={w.d} is a perfect square", field="d",
                            invariant="w irrational")
    seen: dict[tuple[int, int], int] = {}
    digits = []
    state = w
    for _ in range(max_steps):
        key = (state.p, state.q)
        if key in seen:
            i = seen[key]
            return digits[:i], digits[i:]
        seen[key] = len(digits)
        b = state.ceil()
        digits.append(b)
        state = state.step(b)
    raise RuntimeError("minus continued fraction did not become periodic")  # pragma: no cover


def reduced_seed(d: int) -> QuadraticIrrational:
    """Reduced generator ``w`` of the ring of integers: ``w > 1 > w' > 0``."""
    r = isqrt(d)
    if d % 4 == 1:
        # (p + sqrt d)/2 with p odd and sqrt d < p < sqrt d + 2
        p = r + 1 if (r + 1) % 2 == 1 else r + 2
        return QuadraticIrrational(p, 2, d)
    return QuadraticIrrational(r + 1, 1, d)


def _check_d(d: int):
    if not isinstance(d, int) or d <= 1 or not is_squarefree(d):
        raise NotSquarefree(f"d={d!r} must be a squarefree integer > 1", field="d",
                            invariant="d squarefree > 1")


@dataclass(frozen=True)
class CuspCycle:
    d: int
    seed: QuadraticIrrational
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    config: CurveConfiguration

    @property
    def cycle(self) -> tuple:
        return tuple((k, True) for k in range(len(self.period)))


def cycle_config(period) -> CurveConfiguration:
    """Cycle of rational curves; node k leaves D_k at 1 and enters D_{k+1} at 0."""
    r = len(period)
    comps = tuple(Component(f"D{k}") for k in range(r))
    nodes = tuple(Node(f"D{k}", as_qf(1), f"D{(k + 1) % r}", as_qf(0)) for k in range(r))
    return CurveConfiguration(comps, nodes, {"cusp": tuple((k, True) for k in range(r))})


def cycle_gram(period) -> RationalMatrix:
    """Intersection matrix of the cycle; a single nodal curve has ``-b + 2``."""
    r = len(period)
    G = [[0] * r for _ in range(r)]
    for k, b in enumerate(period):
        G[k][k] = -b
    if r == 1:
        G[0][0] += 2
    else:
        for k in range(r):
            G[k][(k + 1) % r] += 1
            G[(k + 1) % r][k] += 1
    return RationalMatrix(G, cols=r)


def cusp_cycle(d: int) -> CuspCycle:
    _check_d(d)
    seed = reduced_seed(d)
    pre, per = minus_cf(seed)
    return CuspCycle(d, seed, tuple(pre), tuple(per), cycle_config(per))


def cusp_surface(cycle: CuspCycle):
    """A toy surface datum carrying the cycle's Gram matrix (plus one positive class)."""
    from .motive import SurfaceDatum
    from .exact import block_diag

    G = cycle_gram(cycle.period)
    r = G.rows
    Q = block_diag(RationalMatrix([[1]]), G)
    exc = [tuple(1 if i == k + 1 else 0 for i in range(r + 1)) for k in range(r)]
    return SurfaceDatum(0, Q, exc)


def _unit_from_cf(d: int) -> QuadraticFieldElement:
    """Fundamental unit via the regular continued fraction of the ring generator."""
    if d % 4 == 1:
        omega = QuadraticFieldElement(Fraction(1, 2), Fraction(1, 2), d)
        state = QuadraticIrrational(1, 2, d)
    else:
        omega = QuadraticFieldElement(0, 1, d)
        state = QuadraticIrrational(0, 1, d)
    r = isqrt(d)
    h_prev, h = 1, None
    k_prev, k = 0, None
    while True:
        if state.q > 0:
            a = (state.p + r) // state.q
        else:
            a = (-state.p - r - 1) // (-state.q)
        if h is None:
            h, k = a, 1
        else:
            h, h_prev = a * h + h_prev, h
            k, k_prev = a * k + k_prev, k
        u = h - k * omega
        if abs(u.norm()) == 1:
            break
        # regular CF step: w <- 1/(w - a)
        p = a * state.q - state.p
        state = QuadraticIrrational(p, (d - p * p) // state.q, d)
    if u.sign() < 0:
        u = -u
    if u < 1:
        u = u.inverse()
    return u


def fundamental_unit(d: int) -> QuadraticFieldElement:
    """Smallest totally positive unit ``> 1`` of the ring of integers of ``Q(sqrt d)``."""
    _check_d(d)
    u = _unit_from_cf(d)
    return u if u.is_totally_positive() else u * u


@dataclass(frozen=True)
class UnitPeriodReport:
    monodromy: RationalMatrix
    det_one: bool
    fixes_seed: bool
    eigenvalue: QuadraticFieldElement | None
    is_totally_positive_unit: bool
    exponent: int | None  # eigenvalue = epsilon**exponent
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def monodromy(period) -> RationalMatrix:
    M = RationalMatrix.identity(2)
    for b in period:
        M = M @ RationalMatrix([[b, -1], [1, 0]])
    return M


def mobius(M: RationalMatrix, w: QuadraticFieldElement) -> QuadraticFieldElement:
    return (M[0, 0] * w + M[0, 1]) / (M[1, 0] * w + M[1, 1])


def unit_period_check(cycle: CuspCycle) -> UnitPeriodReport:
    M = monodromy(cycle.period)
    failures = []
    det_one = M.det() == 1
    if not det_one:
        failures.append("det(M) != 1")
    w = cycle.seed.value()
    fixes = mobius(M, w) == w
    if not fixes:
        failures.append("M does not fix the seed")
    t = M[0, 0] + M[1, 1]
    disc = t * t - 4
    lam = None
    tp_unit = False
    exponent = None
    if disc.denominator == 1 and disc % cycle.d == 0 and is_square(int(disc // cycle.d)):
        s = isqrt(int(disc // cycle.d))
        lam = QuadraticFieldElement(t / 2, Fraction(s, 2), cycle.d)
        tp_unit = lam.norm() == 1 and lam.is_totally_positive()
    else:
        failures.append("eigenvalue not in Q(sqrt d)")
    if lam is not None and not tp_unit:
        failures.append("eigenvalue is not a totally positive unit")
    if tp_unit:
        eps = fundamental_unit(cycle.d)
        x, n = QuadraticFieldElement(1), 0
        while x < lam:
            x, n = x * eps, n + 1
        if x == lam:
            exponent = n
        else:
            failures.append("eigenvalue is not a power of the fundamental unit")
    return UnitPeriodReport(M, det_one, fixes, lam, tp_unit, exponent, tuple(failures))


def cf_bracket(preperiod, period, n: int) -> tuple[Fraction, Fraction]:
    """Rational interval containing the value of the expansion after ``n`` digits.

    The tail is some ``w_n`` in ``(1, oo)``; the prefix map is monotone, so its
    values at 1 and at infinity bound the expansion.
    """
    digits = list(preperiod)
    while len(digits) < n:
        digits.extend(period)
    M = monodromy(digits[:n])
    at_one = Fraction(M[0, 0] + M[0, 1]) / (M[1, 0] + M[1, 1])
    at_inf = Fraction(M[0, 0]) / M[1, 0]
    return (min(at_one, at_inf), max(at_one, at_inf))


def is_gram_negative_definite(cycle: CuspCycle) -> bool:
    return is_negative_definite(cycle_gram(cycle.period))
