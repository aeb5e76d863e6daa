"""Small hand-checkable inputs shared by the self-check, tests and demos."""

from fractions import Fraction

from .cusp import cycle_config, cycle_gram
from .divisor import chain, polygon
from .exact import RationalMatrix, as_qf, block_diag
from .motive import SurfaceDatum
from .pic import ConfigLineBundle


def a2_surface() -> SurfaceDatum:
    """Two (-2)-curves meeting once, next to one positive class."""
    Q = block_diag(RationalMatrix([[1]]), RationalMatrix([[-2, 1], [1, -2]]))
    return SurfaceDatum(0, Q, [(0, 1, 0), (0, 0, 1)], ample=(1, 0, 0))


def smooth_surface() -> SurfaceDatum:
    """``P^1 x P^1``-like hyperbolic plane, nothing contracted."""
    return SurfaceDatum(0, RationalMatrix([[0, 1], [1, 0]]), [], ample=(1, 1))


def abelian_like_surface() -> SurfaceDatum:
    """q = 1 surface with one (-1)-curve and identity cup data on the ample class."""
    Q = RationalMatrix.diag([1, -1])
    cup1 = (RationalMatrix.identity(2), RationalMatrix.zeros(2, 2))
    return SurfaceDatum(2, Q, [(0, 1)], ample=(2, 1), cup1=cup1)


def square_fixture():
    """Square of rational curves (self-intersection -3), each with divisor [2] - [3].

    Returns ``(surface, config, bundle)``; the holonomy is ``(3/4)**4``.
    """
    period = (3, 3, 3, 3)
    G = cycle_gram(period)
    surface = SurfaceDatum(0, block_diag(RationalMatrix([[1]]), G),
                           [tuple(1 if i == k + 1 else 0 for i in range(5)) for k in range(4)])
    config = cycle_config(period)
    div = ((as_qf(2), Fraction(1)), (as_qf(3), Fraction(-1)))
    bundle = ConfigLineBundle({f"D{k}": div for k in range(4)})
    return surface, config, bundle


def triangle_fixture():
    """Triangle with -3 curves and the trivial bundle."""
    period = (3, 3, 3)
    surface = SurfaceDatum(0, block_diag(RationalMatrix([[1]]), cycle_gram(period)),
                           [tuple(1 if i == k + 1 else 0 for i in range(4)) for k in range(3)])
    return surface, cycle_config(period), ConfigLineBundle()


def polygon_config(r: int = 5):
    return polygon(r)


def tree_config(r: int = 4):
    return chain(r)
