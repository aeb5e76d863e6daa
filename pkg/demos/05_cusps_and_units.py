# Cusp cycles of Q(sqrt d): minus continued fractions and the monodromy unit.
from ihmotive.cusp import cusp_cycle, fundamental_unit, unit_period_check
from ihmotive.divisor import motive_dims
from ihmotive.io import matrix_to_json

print(f"{'d':>3} {'period':<18} {'epsilon':<24} exp")
for d in (2, 3, 5, 6, 7, 13, 17, 21, 29):
    c = cusp_cycle(d)
    rep = unit_period_check(c)
    print(f"{d:>3} {str(list(c.period)):<18} {str(fundamental_unit(d)):<24} {rep.exponent}")

c = cusp_cycle(13)
print("\nd=13 cycle has", len(c.period), "curves; m1 =", motive_dims(c.config).m1_dim)
print("monodromy:", matrix_to_json(unit_period_check(c).monodromy))
