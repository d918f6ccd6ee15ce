"""
Shifts, reflections and random rules
====================================

Cyclically shifting an update word never changes the cycle structure,
whatever the local rules. Reversing the word inverts the map on its
periodic points, but only for suitable Boolean rules.
"""

import numpy as np

from sdscycle import graph_core as gc
from sdscycle import sds_engine as sds

rng = np.random.default_rng(3)

# %%
# Shifts
# ------
y = gc.random_connected_graph(5, rng)
word = (3, 1, 4, 1, 5, 2, 5)
system = sds.SdsSystem.random(y, 3, word, rng)   # arbitrary rule tables over {0,1,2}
for s in range(len(word)):
    ps = sds.phase_space(system.with_word(sds.shift_word(word, s)))
    print(s, sds.shift_word(word, s), sds.cycle_summary(ps))

# %%
# Reflections
# -----------
# With rules that are bijective in the vertex's own state (x -> x + g(rest)),
# the reversed word undoes the map on periodic states.
inv = sds.SdsSystem.random_self_bijective(y, 2, word, rng)
print("self-bijective rules invert:", sds.reflection_inverts_on_periodic(inv))

# The same holds for nor, majority and friends used on every vertex.
print("nor inverts:", sds.reflection_inverts_on_periodic(sds.SdsSystem.uniform(y, "nor", word)))

# Arbitrary tables can break it. Two vertices joined by an edge:
# F2 after F1 swaps (1,0) with (0,1), yet F1 after F2 sends (0,1) to (0,0).
p2 = gc.path(2)
odd = sds.SdsSystem(p2, 2, (sds.RuleTable(2, 2, (0, 1, 0, 0)), sds.RuleTable(2, 2, (1, 0, 0, 0))), (1, 2))
print("counterexample inverts:", sds.reflection_inverts_on_periodic(odd))
