# Holonomy of a degree-zero bundle around a cycle of rational curves.
from fractions import Fraction

from ihmotive import fixtures
from ihmotive.divisor import reverse_walk
from ihmotive.exact import as_qf
from ihmotive.pic import ConfigLineBundle, edge_transitions, holonomy

# one component: divisor [2] - [3], entered at 0 and left at 1
div = ((as_qf(2), Fraction(1)), (as_qf(3), Fraction(-1)))
print("single factor:", edge_transitions(div, as_qf(0), as_qf(1)))  # 3/4

surface, config, bundle = fixtures.square_fixture()
w = config.cycles["cusp"]
h = holonomy(config, bundle, w)
print("square, forward:", h, "->", h.power_value())
print("square, reverse:", holonomy(config, bundle, reverse_walk(w)))

# rescaling the trivialisation on one curve changes nothing
b2 = bundle.coboundary(config, "D1", 17)
print("after coboundary:", holonomy(config, b2, w) == h)

# pure transition scalars, triangle (2, 3, 5)
tri = fixtures.polygon_config(3)
print("\ntriangle (2,3,5):", holonomy(tri, ConfigLineBundle({}, {0: 2, 1: 3, 2: 5}), tri.cycles["cycle"]))
