"""
Picard numbers along the flip
=============================

Ranks of the rational Picard groups of the pseudostable space, the T space
(the 7/10 model when T is everything) and the T+ space, next to the closed
formulas.  Ranks come from exact row reduction of the presentations.
"""

from mfl import boundary as bd
from mfl import criteria as cr
from mfl import divisors as dv

print(f"{'(g,n)':<8}{'ps':>4}{'T':>4}{'T+':>4}   closed T / T+   dim F_T")
for g in range(1, 7):
    for n in range(0, 4):
        if 2 * g - 2 + n <= 0 or (g, n) in cr.SPECIAL_PAIRS:
            continue
        p = bd.HyperbolicPair(g, n)
        r = cr.picard_number_report(p, bd.full_typeset(p))
        ct = r.closed_forms.get("rank_t")
        cp = r.closed_forms.get("rank_tplus")
        mark = "" if all(r.agreement.values()) else "   <- closed form differs"
        print(f"({g},{n})".ljust(8) + f"{r.rank_ps:>4}{r.rank_t:>4}{r.rank_tplus:>4}"
              f"   {ct!s:>6} / {cp!s:<6} {r.face_dim:>5}{mark}")

# rank_ps - rank_T is the dimension of the contracted face in every row.
# The T+ closed formula disagrees with the direct rank at a handful of
# small corners, e.g. (3,1): the killed classes leave lambda, delta_irr and
# delta_[0,{1}], with no further relations.
p = bd.HyperbolicPair(3, 1)
pres = dv.presentation(p, dv.space_tplus(bd.full_typeset(p)))
print("(3,1) T+ generators:",
      [g if isinstance(g, str) else bd.format_class(p, g) for g in pres.generators])
print("killed:", [bd.format_class(p, c) for c in sorted(pres.killed, key=bd.sort_key)])
print("rank:", pres.rank)
