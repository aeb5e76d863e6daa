# Dual graphs of curve configurations and the weight-one piece of the boundary.
from ihmotive.divisor import (
    cech_check,
    chain,
    dual_graph,
    euler_char_divisor,
    fundamental_cycles,
    motive_dims,
    polygon,
    subdivide,
)

for r in (3, 5, 8):
    c = polygon(r)
    m = motive_dims(c)
    print(f"polygon r={r}: m0={m.m0_dim} m1={m.m1_dim} m2={m.m2_dim}  chi(D)={euler_char_divisor(c)}")

t = chain(4)
print("chain of 4: m1 =", motive_dims(t).m1_dim)

c = subdivide(polygon(4), 2, "extra")  # put a new curve on one node
g = dual_graph(c)
print("\nsubdivided square: V =", g.V, " E =", g.E, " m1 =", motive_dims(c).m1_dim)
print("fundamental cycle (non-tree edge, walk):", fundamental_cycles(g))
print("Cech check:", cech_check(c))
