# The class attached to a line bundle: correct it to be orthogonal, then take holonomy.
from fractions import Fraction

from ihmotive import fixtures
from ihmotive.exact import as_qf
from ihmotive.io import matrix_to_json
from ihmotive.motive import gram_matrix
from ihmotive.pic import KCEInput, cl_kce

surface, config, _ = fixtures.triangle_fixture()  # three (-3)-curves in a triangle
print("Gram of the curves:", matrix_to_json(gram_matrix(surface)))

# the bundle meets D0 once and D2 minus once; restrictions are [5] and -[7]
inp = KCEInput(surface, config, (1, 0, -1),
               {"D0": ((as_qf(5), 1),), "D2": ((as_qf(7), -1),)})
res = cl_kce(inp)
print("correction a:", [str(x) for x in res.coefficients])
print("corrected restrictions:", {k: [(str(p), str(m)) for p, m in v] for k, v in res.corrected.divisors.items()})
print("class:", res.value, " value:", res.value.power_value())

# linear in the bundle
for q in (2, Fraction(1, 2), -1):
    print(f"  q={q}: class of L^q == class^q ->", cl_kce(inp.scaled(q)).value == res.value ** q)
