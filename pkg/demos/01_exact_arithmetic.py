# Exact arithmetic tour: rationals, Q(sqrt d) and rational matrices.
from fractions import Fraction

from ihmotive.io import matrix_to_json
from ihmotive.exact import KStarClass, QuadraticFieldElement as QF, RationalMatrix, kstar_equal, mat_solve

phi = QF(Fraction(1, 2), Fraction(1, 2), 5)  # golden ratio
print("phi       =", phi)
print("phi^2     =", phi * phi, " (phi + 1 =", phi + 1, ")")
print("N(phi)    =", phi.norm())  # -1, so phi is not totally positive
print("phi^2 t.p.", (phi * phi).is_totally_positive())
print("floor phi =", phi.floor())

# a 2x2 negative definite matrix and a solve
G = RationalMatrix([[-2, 1], [1, -2]])
print("\nG =", matrix_to_json(G), " det =", G.det())
print("G^-1 =", matrix_to_json(G.inverse()))
print("solve G x = (-3, 0):", [str(x) for x in mat_solve(G, [-3, 0])])

# classes in k* (x) Q: torsion dies, roots are allowed
u = KStarClass.of(2)
v = KStarClass.of(4, Fraction(1, 2))
print("\n2 ~ 4^(1/2):", kstar_equal(u, v))
print("-1 ~ 1     :", KStarClass.of(-1).is_trivial())
print("2 ~ 3      :", kstar_equal(u, KStarClass.of(3)))
