"""
Symmetry-reduced bounds on the 3-cube
=====================================

The 3-cube has 1862 acyclic orientations. Its 48 automorphisms cut that
down a lot once the local rules respect the symmetry.
"""

from sdscycle import graph_core as gc
from sdscycle import orientations as ori
from sdscycle import symmetry as sym

q3 = gc.hypercube(3)
autos = gc.automorphisms(q3)
print("|Aut| =", len(autos))

cl = ori.classify(q3)
print("alpha =", cl.alpha, " kappa =", cl.kappa, " delta =", cl.delta)

# kappa three ways: click components, deletion-contraction, Tutte at (1, 0)
print("kappa check:", cl.kappa, ori.kappa_recursive(q3), ori.tutte(q3, 1, 0))

# %%
# Orbit counts
# ------------
# Direct union-find over the action, and the Burnside average over the
# orbit graphs of each cyclic subgroup, must agree.

print("alpha_bar direct  :", sym.orbit_count_acyc(q3, autos))
print("alpha_bar Burnside:", sym.burnside_alpha_bar(q3, autos))

# The automorphisms also permute kappa and delta classes.
print("kappa_bar =", sym.kappa_bar(q3, autos, cl), " delta_bar =", sym.delta_bar(q3, autos, cl))

# %%
# Bipartite graphs have odd kappa, and exactly one class is mapped to
# itself by reversal.
rho = ori.reflection_on_classes(cl)
print("bipartite:", gc.is_bipartite(q3)[0], " self-reverse classes:", sum(rho[c] == c for c in rho))
