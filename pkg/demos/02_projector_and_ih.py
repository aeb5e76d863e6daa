# Contract two (-2)-curves and look at what is left of H^2.
from ihmotive import blow_up, fixtures, ih_decomposition, kunneth_betti, projector_p, restricted_form
from ihmotive.io import matrix_to_json
from ihmotive.motive import hard_lefschetz_check

s = fixtures.a2_surface()
print("Q =", matrix_to_json(s.Q))
print("exceptional classes:", [list(map(str, d)) for d in s.exceptional])

P = projector_p(s)
print("\nprojector onto the exceptional span:")
for row in matrix_to_json(P.P):
    print("   ", row)
print("idempotent:", P.is_idempotent(), " self-adjoint:", P.is_self_adjoint(), " rank:", P.rank)

ih, _ = ih_decomposition(s)
print("\nIH^2 basis:", [[str(x) for x in v] for v in ih], " form:", matrix_to_json(restricted_form(s, ih)))
print("Kunneth dims:", kunneth_betti(s).dims)

# blowing up a point adds a (-1)-curve; the IH part should not notice
t = blow_up(blow_up(s))
print("\nafter two blow-ups b2 =", t.b2, " IH form:", matrix_to_json(restricted_form(t)))

# ample class, nothing to correct since c is already orthogonal to the curves
rep = hard_lefschetz_check(s, s.ample, (0, 0))
print("\nLefschetz: l =", [str(x) for x in rep.ell], " l.l =", rep.ell_sq, " ok:", rep.ok)
