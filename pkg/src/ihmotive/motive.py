"""Intersection motive of a surface at the level of realizations.

A proper surface with boundary divisor is described by its intersection
form on H^2, the classes of the exceptional curves and, optionally, an
ample class and the cup-product data H^1 -> H^3.  The projector onto the
exceptional part and its complement (the intersection cohomology IH^2)
are computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateGram,
    HypothesisViolated,
    NotSymmetric,
    PreconditionFailed,
    ShapeMismatch,
    SingularMatrix,
    ValidationError,
)
from .exact import (
    RationalMatrix,
    Vector,
    bilinear,
    block_diag,
    inertia,
    is_negative_definite,
    mat_kernel,
    vec,
)


@dataclass(frozen=True)
class SurfaceDatum:
    """H^2 with its intersection form, plus the exceptional classes.

    Validated on construction: ``Q`` symmetric and nondegenerate, exceptional
    classes independent with negative definite Gram matrix, ``h1_dim`` even.
    """

    h1_dim: int
    Q: RationalMatrix
    exceptional: tuple[Vector, ...] = ()
    ample: Vector | None = None
    cup1: tuple[RationalMatrix, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "exceptional", tuple(vec(d) for d in self.exceptional))
        if self.ample is not None:
            object.__setattr__(self, "ample", vec(self.ample))
        if self.cup1 is not None:
            object.__setattr__(self, "cup1", tuple(self.cup1))
        self._validate()

    @property
    def b2(self) -> int:
        return self.Q.rows

    @property
    def r(self) -> int:
        return len(self.exceptional)

    def _validate(self):
        if not isinstance(self.h1_dim, int) or self.h1_dim < 0 or self.h1_dim % 2:
            raise ValidationError(f"h1_dim={self.h1_dim!r} must be an even nonnegative integer",
                                  field="h1_dim", invariant="h1_dim even")
        if not self.Q.is_square():
            raise ShapeMismatch(f"Q has shape {self.Q.shape}", field="Q", invariant="Q square")
        if not self.Q.is_symmetric():
            raise NotSymmetric("intersection form is not symmetric", field="Q", invariant="Q = Q^T")
        if self.Q.det() == 0:
            raise ValidationError("intersection form is degenerate", field="Q",
                                  invariant="det Q != 0")
        for m, d in enumerate(self.exceptional):
            if len(d) != self.b2:
                raise ShapeMismatch(f"exceptional class {m} has length {len(d)}, b2={self.b2}",
                                    field=f"exceptional[{m}]")
        if self.exceptional and self.basis_matrix().rank() < self.r:
            raise ValidationError("exceptional classes are linearly dependent",
                                  field="exceptional", invariant="classes linearly independent")
        if not is_negative_definite(gram_matrix(self)):
            raise DegenerateGram("Gram matrix of exceptional classes is not negative definite",
                                 field="exceptional", invariant="Gram negative definite")
        if self.ample is not None:
            if len(self.ample) != self.b2:
                raise ShapeMismatch(f"ample class has length {len(self.ample)}", field="ample")
            if bilinear(self.ample, self.Q, self.ample) <= 0:
                raise ValidationError("ample class has c.c <= 0", field="ample",
                                      invariant="c.c > 0")
        if self.cup1 is not None:
            if len(self.cup1) != self.b2:
                raise ShapeMismatch(f"cup1 has {len(self.cup1)} matrices, expected b2={self.b2}",
                                    field="cup1")
            for i, T in enumerate(self.cup1):
                if T.shape != (self.h1_dim, self.h1_dim):
                    raise ShapeMismatch(f"cup1[{i}] has shape {T.shape}", field=f"cup1[{i}]",
                                        invariant="h1_dim x h1_dim")

    def basis_matrix(self) -> RationalMatrix:
        """B: the exceptional classes as columns (b2 x r)."""
        return RationalMatrix.from_columns(self.exceptional, self.b2)

    def pairing(self, u, v) -> Fraction:
        return bilinear(u, self.Q, v)


@dataclass(frozen=True)
class Projector:
    P: RationalMatrix
    form: RationalMatrix

    def is_idempotent(self) -> bool:
        return self.P @ self.P == self.P

    def is_self_adjoint(self) -> bool:
        return (self.form @ self.P).is_symmetric()

    @property
    def rank(self) -> int:
        return self.P.rank()


@dataclass(frozen=True)
class KunnethSummary:
    dims: tuple[int, int, int, int, int]

    def is_palindromic(self) -> bool:
        return all(self.dims[k] == self.dims[4 - k] for k in range(5))


def gram_matrix(s: SurfaceDatum) -> RationalMatrix:
    """``G[n][m] = d_n^T Q d_m``."""
    if not s.exceptional:
        return RationalMatrix.zeros(0, 0)
    B = s.basis_matrix()
    return B.T @ s.Q @ B


def projector_p(s: SurfaceDatum) -> Projector:
    """``P = B G^{-1} B^T Q``: the Q-orthogonal projection onto the exceptional span."""
    n = s.b2
    if not s.exceptional:
        return Projector(RationalMatrix.zeros(n, n), s.Q)
    B = s.basis_matrix()
    try:
        Ginv = gram_matrix(s).inverse()
    except SingularMatrix:
        raise DegenerateGram("Gram matrix is singular", field="exceptional",
                             invariant="Gram invertible") from None
    return Projector(B @ Ginv @ B.T @ s.Q, s.Q)


def ih_decomposition(s: SurfaceDatum) -> tuple[list[Vector], list[Vector]]:
    """Basis of ker P (the IH^2 part) and of im P (the exceptional part)."""
    if not s.exceptional:
        ih2 = [RationalMatrix.identity(s.b2).row(i) for i in range(s.b2)]
    else:
        ih2 = mat_kernel(s.basis_matrix().T @ s.Q)
    return ih2, list(s.exceptional)


def restricted_form(s: SurfaceDatum, basis: Sequence[Vector] | None = None) -> RationalMatrix:
    """Gram matrix of Q on ``basis`` (default: the IH^2 basis)."""
    if basis is None:
        basis = ih_decomposition(s)[0]
    if not basis:
        return RationalMatrix.zeros(0, 0)
    K = RationalMatrix.from_columns(basis, s.b2)
    return K.T @ s.Q @ K


def kunneth_betti(s: SurfaceDatum) -> KunnethSummary:
    return KunnethSummary((1, s.h1_dim, s.b2 - s.r, s.h1_dim, 1))


def blow_up(s: SurfaceDatum) -> SurfaceDatum:
    """Blow up a point: append an orthogonal class ``e`` with ``e.e = -1``."""
    n = s.b2
    Q = block_diag(s.Q, RationalMatrix([[-1]]))
    pad = (Fraction(0),)
    e = tuple(Fraction(0) for _ in range(n)) + (Fraction(1),)
    exceptional = tuple(d + pad for d in s.exceptional) + (e,)
    ample = s.ample + pad if s.ample is not None else None
    cup1 = None
    if s.cup1 is not None:
        cup1 = s.cup1 + (RationalMatrix.zeros(s.h1_dim, s.h1_dim),)
    return SurfaceDatum(s.h1_dim, Q, exceptional, ample, cup1)


def signature(G: RationalMatrix) -> tuple[int, int, int]:
    return inertia(G)


def degree_check(Fpull: RationalMatrix, Fpush: RationalMatrix, QX: RationalMatrix,
                 QY: RationalMatrix, n: int) -> bool:
    """Adjunction ``(f^* y).QX x = y.QY (f_* x)`` and ``f_* f^* = n``."""
    bX, bY = QX.rows, QY.rows
    if not (QX.is_square() and QY.is_square()):
        raise ShapeMismatch("forms must be square")
    if Fpull.shape != (bX, bY):
        raise ShapeMismatch(f"Fpull has shape {Fpull.shape}, expected {(bX, bY)}", field="Fpull")
    if Fpush.shape != (bY, bX):
        raise ShapeMismatch(f"Fpush has shape {Fpush.shape}, expected {(bY, bX)}", field="Fpush")
    adjoint = Fpull.T @ QX == QY @ Fpush
    return adjoint and Fpush @ Fpull == RationalMatrix.identity(bY) * n


@dataclass(frozen=True)
class LefschetzReport:
    ell: Vector
    ell_sq: Fraction
    c_sq: Fraction
    correction_sq: Fraction
    inequality_holds: bool
    h0_h4_iso: bool
    h1_h3_iso: bool | None  # None: cup data absent, not evaluated

    @property
    def ok(self) -> bool:
        return self.inequality_holds and self.h0_h4_iso and self.h1_h3_iso is not False


def hard_lefschetz_check(s: SurfaceDatum, c: Sequence, a: Sequence) -> LefschetzReport:
    """Check ``l = c - sum a_m d_m`` gives Lefschetz isomorphisms on the IH part."""
    c, a = vec(c), vec(a)
    if len(c) != s.b2:
        raise ShapeMismatch(f"c has length {len(c)}, expected {s.b2}", field="c")
    if len(a) != s.r:
        raise ShapeMismatch(f"a has length {len(a)}, expected {s.r}", field="a")
    if any(x < 0 for x in a):
        raise HypothesisViolated("coefficients must be nonnegative", field="a",
                                 invariant="a_m >= 0")
    c_sq = s.pairing(c, c)
    if c_sq <= 0:
        raise HypothesisViolated(f"c.c = {c_sq} is not positive", field="c", invariant="c.c > 0")
    D = tuple(sum((am * d[i] for am, d in zip(a, s.exceptional)), Fraction(0))
              for i in range(s.b2))
    ell = tuple(ci - Di for ci, Di in zip(c, D))
    for m, d in enumerate(s.exceptional):
        if s.pairing(ell, d) != 0:
            raise HypothesisViolated(f"l.D_{m} = {s.pairing(ell, d)} != 0", field=f"a[{m}]",
                                     invariant="l orthogonal to every exceptional class")
    ell_sq = s.pairing(ell, ell)
    corr = s.pairing(D, D)
    h1 = None
    if s.cup1 is not None and s.h1_dim > 0:
        L = RationalMatrix.zeros(s.h1_dim, s.h1_dim)
        for li, T in zip(ell, s.cup1):
            L = L + T * li
        h1 = L.det() != 0
    elif s.cup1 is not None:
        h1 = True  # H^1 = 0
    return LefschetzReport(ell, ell_sq, c_sq, corr, ell_sq >= c_sq - corr, ell_sq > 0, h1)


def _relation(name: str, ok: bool):
    if not ok:
        raise PreconditionFailed(f"relation {name} fails", invariant=name)


def murre_correct(pi0: RationalMatrix, p1: RationalMatrix, p3: RationalMatrix,
                  pi4: RationalMatrix, n: int | None = None):
    """Correct ``p1, p3`` (with ``p3 p1 = 0``) to orthogonal projectors.

    Returns ``(pi0, pi1, pi2, pi3, pi4)`` with ``pi1 = p1 - p1 p3 / 2``,
    ``pi3 = p3 - p1 p3 / 2`` and ``pi2`` the complement.
    """
    if n is None:
        n = pi0.rows
    for name, M in (("pi0", pi0), ("p1", p1), ("p3", p3), ("pi4", pi4)):
        if M.shape != (n, n):
            raise ShapeMismatch(f"{name} has shape {M.shape}, expected {(n, n)}", field=name)
    Z = RationalMatrix.zeros(n, n)
    for name, M in (("pi0", pi0), ("p1", p1), ("p3", p3), ("pi4", pi4)):
        _relation(f"{name}^2 = {name}", M @ M == M)
    _relation("pi0 pi4 = 0", pi0 @ pi4 == Z)
    _relation("pi4 pi0 = 0", pi4 @ pi0 == Z)
    for pname, p in (("p1", p1), ("p3", p3)):
        for qname, q in (("pi0", pi0), ("pi4", pi4)):
            _relation(f"{qname} {pname} = 0", q @ p == Z)
            _relation(f"{pname} {qname} = 0", p @ q == Z)
    _relation("p3 p1 = 0", p3 @ p1 == Z)
    half = (p1 @ p3) * Fraction(1, 2)
    pi1 = p1 - half
    pi3 = p3 - half
    pi2 = RationalMatrix.identity(n) - pi0 - pi1 - pi3 - pi4
    return pi0, pi1, pi2, pi3, pi4


def is_orthogonal_decomposition(projectors: Sequence[RationalMatrix]) -> bool:
    """``pi_i pi_j = delta_ij pi_i`` and ``sum pi_i = id``."""
    n = projectors[0].rows
    Z = RationalMatrix.zeros(n, n)
    for i, A in enumerate(projectors):
        for j, B in enumerate(projectors):
            if A @ B != (A if i == j else Z):
                return False
    total = Z
    for A in projectors:
        total = total + A
    return total == RationalMatrix.identity(n)
