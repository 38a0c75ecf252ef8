"""
Which divisors are flipped by f_T^+?
====================================

A class L is flipped by the small modification f_T^+ when it is negative on
every bridge curve of the face and its restriction descends to the T+ space.
This script tabulates the verdict for K + psi and for K over several pairs.
"""

from mfl import boundary as bd
from mfl import criteria as cr
from mfl.divisors import PS, named_class, parse_divisor

rows = [(g, 0) for g in range(3, 9)] + [(2, 1), (3, 1), (3, 2), (4, 1), (2, 2)]

print(f"{'(g,n)':<8}{'K+psi':<8}{'K':<8}{'Q-Gor T+':<10}{'Q-fact T+':<10}")
for g, n in rows:
    p = bd.HyperbolicPair(g, n)
    T = bd.full_typeset(p)
    kp = cr.flip_verdict(p, T, named_class(p, PS, "K_plus_psi")).is_L_flip
    k = cr.flip_verdict(p, T, named_class(p, PS, "K")).is_L_flip
    gor = cr.q_gorenstein_MTplus(p, T)
    qf = cr.q_factorial_MTplus(p, T)
    print(f"({g},{n})".ljust(8) + "".join(v.verdict.value.ljust(w) for v, w in
                                       ((kp, 8), (k, 8), (gor, 10), (qf, 10))))

# The K column always agrees with the Q-Gorenstein column: K fails to be
# T+-compatible exactly when the canonical class of the T+ space is not
# Q-Cartier.

# A divisor that is not negative on some bridge curve of the face cannot be
# flipped.  The verdict records the offending ray and the pairing value.
p = bd.HyperbolicPair(5, 1)
v = cr.flip_verdict(p, bd.full_typeset(p), parse_divisor(p, PS, "10*lambda - delta_hat"))
t, value = v.antiample_witness
print("10*lambda - delta_hat:", v.is_L_flip.verdict.value,
      "witness", bd.format_pair_type(p, t), "pairing", value)

# For T = {irr} only the irreducible bridge is contracted.  -delta_irr is
# negative on it, and its restriction descends since no rosary triple lies
# in T.
q = bd.HyperbolicPair(7, 0)
T = bd.TypeSet.of(bd.IRR)
L = parse_divisor(q, PS, "-delta_irr")
print("-delta_irr on (7,0), T={irr}:", cr.flip_verdict(q, T, L).is_L_flip.verdict.value)
