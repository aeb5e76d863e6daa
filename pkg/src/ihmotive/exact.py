"""Exact arithmetic: rationals, real quadratic fields, rational matrices, k* (x) Q.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Everything here is immutable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import (
    FieldMismatch,
    NotSquarefree,
    NotSymmetric,
    ShapeMismatch,
    SingularMatrix,
    ZeroBase,
)

Vector = tuple  # tuple of Fraction


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, _RationalABC, str)):
        return Fraction(x)
    if isinstance(x, QuadraticFieldElement) and x.b == 0:
        return x.a
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    return True


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# ---------------------------------------------------------------------------
# Real quadratic fields


@total_ordering
class QuadraticFieldElement:
    """``a + b*sqrt(d)`` with rational a, b.

    When ``b == 0`` the element is rational and ``d`` is normalised to 1, so
    rationals compare equal regardless of the field they were built in.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        a, b = frac(a), frac(b)
        d = int(d)
        if b == 0:
            d = 1
        elif d <= 1 or not is_squarefree(d):
            raise NotSquarefree(
                f"radicand {d} must be a squarefree integer > 1", field="d",
                invariant="d squarefree and > 1 when b != 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticFieldElement is immutable")

    @property
    def field(self) -> int | None:
        """Radicand of the field, or None for a rational."""
        return self.d if self.b != 0 else None

    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> "QuadraticFieldElement":
        if isinstance(other, QuadraticFieldElement):
            o = other
        elif isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadraticFieldElement(other)
        else:
            return NotImplemented
        if self.b != 0 and o.b != 0 and self.d != o.d:
            raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {o.d})")
        return o

    def _d_with(self, o: "QuadraticFieldElement") -> int:
        return self.d if self.b != 0 else o.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticFieldElement(self.a + o.a, self.b + o.b, self._d_with(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticFieldElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._d_with(o)
        return QuadraticFieldElement(self.a * o.a + d * self.b * o.b,
                                     self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticFieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadraticFieldElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadraticFieldElement(1, 0, self.d)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadraticFieldElement":
        return QuadraticFieldElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def sign(self) -> int:
        """Sign under the embedding sqrt(d) > 0, decided exactly."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and d b^2 wins
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def is_totally_positive(self) -> bool:
        return self.sign() > 0 and self.conjugate().sign() > 0

    def floor(self) -> int:
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        den = lcm(self.a.denominator, self.b.denominator)
        A = int(self.a * den)
        B = int(self.b * den)
        r = isqrt(B * B * self.d)  # sqrt(B^2 d) is irrational
        if B > 0:
            return (A + r) // den
        return (A - r - 1) // den

    def ceil(self) -> int:
        f = self.floor()
        return f if self.b == 0 and self.a == f else f + 1

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __eq__(self, other):
        if isinstance(other, QuadraticFieldElement):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def sort_key(self):
        return (self.d, self.a, self.b)

    def __repr__(self):
        if self.b == 0:
            return f"QF({self.a})"
        return f"QF({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        root = f"{b}sqrt({self.d})"
        if self.a == 0:
            return root
        if root.startswith("-"):
            return f"{self.a} - {root[1:]}"
        return f"{self.a} + {root}"


QF = QuadraticFieldElement


def as_qf(x) -> QuadraticFieldElement:
    if isinstance(x, QuadraticFieldElement):
        return x
    return QuadraticFieldElement(frac(x))


def common_field(elements: Iterable[QuadraticFieldElement]) -> int | None:
    """The one radicand shared by all irrational elements (None if all rational)."""
    d = None
    for x in elements:
        f = x.field
        if f is None:
            continue
        if d is None:
            d = f
        elif d != f:
            raise FieldMismatch(f"elements from Q(sqrt {d}) and Q(sqrt {f})",
                                invariant="all bases in one field")
    return d


def quad_ops(x: QuadraticFieldElement) -> dict:
    """Conjugate, norm, trace and total positivity of ``x`` in one record."""
    return {
        "conjugate": x.conjugate(),
        "norm": x.norm(),
        "trace": x.trace(),
        "is_totally_positive": x.is_totally_positive(),
    }


# ---------------------------------------------------------------------------
# Rational matrices


class RationalMatrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), cols: int | None = None):
        data = tuple(tuple(frac(x) for x in row) for row in data)
        if cols is None:
            cols = len(data[0]) if data else 0
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ShapeMismatch(f"row {i} has {len(row)} entries, expected {cols}",
                                    invariant="entry count = rows x cols")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diag(cls, entries: Sequence) -> "RationalMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RationalMatrix":
        for c in columns:
            if len(c) != nrows:
                raise ShapeMismatch(f"column of length {len(c)}, expected {nrows}")
        return cls([[c[i] for c in columns] for i in range(nrows)], cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix([self.col(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return RationalMatrix(
                [[sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in ocols]
                 for r in self._data], cols=other.cols)
        v = vec(other)
        if len(v) != self.cols:
            raise ShapeMismatch(f"cannot apply {self.shape} matrix to vector of length {len(v)}")
        return tuple(sum((x * y for x, y in zip(r, v)), Fraction(0)) for r in self._data)

    def _check_same(self, other):
        if not isinstance(other, RationalMatrix):
            return False
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} and {other.shape} differ")
        return True

    def __add__(self, other):
        if not self._check_same(other):
            return NotImplemented
        return RationalMatrix([[x + y for x, y in zip(r, s)]
                               for r, s in zip(self._data, other._data)], cols=self.cols)

    def __sub__(self, other):
        if not self._check_same(other):
            return NotImplemented
        return RationalMatrix([[x - y for x, y in zip(r, s)]
                               for r, s in zip(self._data, other._data)], cols=self.cols)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        if isinstance(scalar, RationalMatrix):
            return NotImplemented
        s = frac(scalar)
        return RationalMatrix([[x * s for x in r] for r in self._data], cols=self.cols)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"RationalMatrix([{body}], cols={self.cols})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[self._data[i][j] for j in cols] for i in rows], cols=len(cols))

    def leading_minor(self, k: int) -> "RationalMatrix":
        return self.submatrix(range(k), range(k))

    def rref(self) -> tuple["RationalMatrix", list[int]]:
        """Reduced row echelon form and pivot columns."""
        m = [list(r) for r in self._data]
        pivots = []
        pr = 0
        for c in range(self.cols):
            p = next((i for i in range(pr, self.rows) if m[i][c] != 0), None)
            if p is None:
                continue
            m[pr], m[p] = m[p], m[pr]
            inv = 1 / m[pr][c]
            m[pr] = [x * inv for x in m[pr]]
            for i in range(self.rows):
                if i != pr and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[pr])]
            pivots.append(c)
            pr += 1
            if pr == self.rows:
                break
        return RationalMatrix(m, cols=self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ShapeMismatch(f"determinant of non-square {self.shape} matrix")
        m = [list(r) for r in self._data]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] / m[c][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def inverse(self) -> "RationalMatrix":
        if not self.is_square():
            raise ShapeMismatch(f"inverse of non-square {self.shape} matrix")
        n = self.rows
        aug = RationalMatrix([list(r) + [1 if i == j else 0 for j in range(n)]
                              for i, r in enumerate(self._data)], cols=2 * n)
        R, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise SingularMatrix("matrix is singular", invariant="det != 0")
        return R.submatrix(range(n), range(n, 2 * n))


def block_diag(*blocks: RationalMatrix) -> RationalMatrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = [[Fraction(0)] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return RationalMatrix(out, cols=m)


def bilinear(u: Sequence, Q: RationalMatrix, v: Sequence) -> Fraction:
    """``u^T Q v``."""
    Qv = Q @ v
    return sum((frac(x) * y for x, y in zip(u, Qv)), Fraction(0))


def mat_solve(A: RationalMatrix, b: Sequence) -> Vector:
    """Exact solution of ``A x = b`` for square nonsingular ``A``."""
    if not A.is_square():
        raise ShapeMismatch(f"mat_solve needs a square matrix, got {A.shape}")
    b = vec(b)
    if len(b) != A.rows:
        raise ShapeMismatch(f"right-hand side has length {len(b)}, expected {A.rows}")
    n = A.rows
    aug = RationalMatrix([list(A.row(i)) + [b[i]] for i in range(n)], cols=n + 1)
    R, piv = aug.rref()
    if piv[:n] != list(range(n)) or len(piv) > n:
        raise SingularMatrix("mat_solve: det(A) = 0", field="A", invariant="det(A) != 0")
    return R.col(n)


def mat_kernel(A: RationalMatrix) -> list[Vector]:
    """Basis of the null space, one vector per free column of the RREF."""
    R, piv = A.rref()
    free = [c for c in range(A.cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i, f]
        basis.append(tuple(v))
    return basis


def is_negative_definite(G: RationalMatrix) -> bool:
    """Sylvester's criterion on ``-G``: all ``(-1)^k det(G_k) > 0``."""
    if not G.is_symmetric():
        raise NotSymmetric("matrix is not symmetric", invariant="G = G^T")
    for k in range(1, G.rows + 1):
        if (-1) ** k * G.leading_minor(k).det() <= 0:
            return False
    return True


def inertia(G: RationalMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric form, via congruence."""
    if not G.is_symmetric():
        raise NotSymmetric("matrix is not symmetric", invariant="G = G^T")
    m = G.tolist()
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if m[i][i] != 0), None)
        if p is None:
            # all diagonal entries vanish: mix in an off-diagonal partner
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            p = i
        piv = m[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        for i in active:
            if m[i][p] != 0:
                f = m[i][p] / piv
                for k in range(n):
                    m[i][k] -= f * m[p][k]
                for k in range(n):
                    m[k][i] -= f * m[k][p]
    return pos, neg, n - pos - neg


# ---------------------------------------------------------------------------
# k* (x) Q


class KStarClass:
    """Formal product ``prod base**exponent`` in ``k* (x)_Z Q``.

    Normal form: bases made positive (``-1`` is torsion), ``+-1`` dropped,
    repeated bases merged, zero exponents dropped.  ``==`` is
    :func:`kstar_equal`, which is coarser than the normal form.
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[tuple] = ()):
        merged: dict[QuadraticFieldElement, Fraction] = {}
        for base, exponent in factors:
            base = as_qf(base)
            if not base:
                raise ZeroBase("zero base in k* (x) Q", field="factors",
                               invariant="bases nonzero")
            if base.sign() < 0:
                base = -base
            e = frac(exponent)
            if base == 1 or e == 0:
                continue
            merged[base] = merged.get(base, Fraction(0)) + e
        common_field(merged)
        items = sorted(((b, e) for b, e in merged.items() if e != 0),
                       key=lambda be: be[0].sort_key())
        object.__setattr__(self, "factors", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("KStarClass is immutable")

    @classmethod
    def of(cls, x, exponent=1) -> "KStarClass":
        return cls([(x, exponent)])

    @property
    def field(self) -> int | None:
        return common_field(b for b, _ in self.factors)

    def __mul__(self, other: "KStarClass") -> "KStarClass":
        if not isinstance(other, KStarClass):
            return NotImplemented
        return KStarClass(self.factors + other.factors)

    def inverse(self) -> "KStarClass":
        return KStarClass((b, -e) for b, e in self.factors)

    def __truediv__(self, other: "KStarClass") -> "KStarClass":
        if not isinstance(other, KStarClass):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, q) -> "KStarClass":
        q = frac(q)
        return KStarClass((b, e * q) for b, e in self.factors)

    def is_trivial(self) -> bool:
        return kstar_equal(self, KStarClass())

    def power_value(self) -> tuple[int, QuadraticFieldElement]:
        """``(N, w)`` with ``N`` clearing all exponent denominators and ``w = self**N``."""
        N = 1
        for _, e in self.factors:
            N = lcm(N, e.denominator)
        w = QuadraticFieldElement(1)
        for b, e in self.factors:
            w = w * b ** int(e * N)
        return N, w

    def to_element(self) -> QuadraticFieldElement:
        N, w = self.power_value()
        if N != 1:
            raise ValueError("class has non-integral exponents")
        return w

    def __eq__(self, other):
        if not isinstance(other, KStarClass):
            return NotImplemented
        return kstar_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"KStarClass({[(b, e) for b, e in self.factors]!r})"

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"({b})" if e == 1 else f"({b})^({e})" for b, e in self.factors)


def kstar_equal(u: KStarClass, v: KStarClass) -> bool:
    """Decide ``u == v`` in k* (x) Q: clear denominators, test ``w = +-1``."""
    common_field(b for b, _ in u.factors + v.factors)
    _, w = (u / v).power_value()
    return w == 1 or w == -1
