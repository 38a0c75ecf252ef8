"""
Walking the elliptic bridge face in genus 7
===========================================

For (g, n) = (7, 0) the boundary types are irr, [1], [2] and [3].  Bridge
curves come in the minimal admissible subsets, and every admissible type
set T picks out a face of the Mori cone of the pseudostable space.
"""

from mfl import boundary as bd
from mfl import faces as fc
from mfl import pairing as pr
from mfl.divisors import PS, named_class

p = bd.HyperbolicPair(7, 0)

# The index set and its minimal admissible subsets.  Odd genus produces a
# one-element subset {[3]}: the two halves of the bridge have the same type.
print("classes:", [bd.format_class(p, c) for c in bd.enumerate_classes(p)])
for m in bd.minimal_subsets(p):
    print("minimal:", bd.format_pair_type(p, m))

# The full type set is not itself admissible: [1] never carries a bridge.
full = bd.full_typeset(p)
print("adm(full) =", bd.format_typeset(p, bd.adm_closure(p, full)))

# Each face has a dimension (number of rays) and a dual space of divisor
# classes vanishing on it.  The dual dimension of the full face is the
# Picard number of the 7/10 model.
face = fc.face_of(p, full)
print("rays:", [bd.format_pair_type(p, r) for r in face.rays])
print("dim F_T =", face.dim, " perp_dim =", face.perp_dim)

# K + psi meets every bridge curve in -7, which is why the whole face is
# contracted at alpha = 7/10.
kp = named_class(p, PS, "K_plus_psi")
for t in face.rays:
    print(f"(K+psi).C{bd.format_pair_type(p, t)} =", pr.pair_bridge(p, t, kp))

# The lattice of faces.  It has 6 nodes here rather than 2^3: the type set
# of the {[3]} ray sits inside that of {[2],[3]}, so any T containing the
# second ray also contains the first.
lat = fc.face_lattice(p)
for node in lat.to_json()["nodes"]:
    print(f"  T={node['T'] or '{}':<16} dim={node['dim']} perp={node['perp_dim']}")

# Graphviz source is available too:
# open("genus7.dot", "w").write(lat.to_dot())
