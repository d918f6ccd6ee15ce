"""
Growth of kappa on radius-2 circulants
======================================

Circ_{n,2} joins every vertex to the two nearest on each side. Its kappa
(and that of the variant with edge {2,n} removed) follows closed forms
that grow like n 2^n.
"""

from sdscycle import graph_core as gc
from sdscycle import orientations as ori

print(" n   g_n (closed)  g_n (graph)   c_n (closed)  c_n (graph)")
for n in range(5, 11):
    g, c = ori.circ2_closed_forms(n)
    g_graph, c_graph = ori.circ2_kappas(n)
    assert (g, c) == ori.circ2_recurrence(n)
    print(f"{n:2d}   {g:10d}   {g_graph:10d}   {c:12d}  {c_graph:10d}")

# %%
# For comparison, alpha grows much faster: the gap between functional and
# cycle classes widens with n.
for n in range(5, 9):
    y = gc.circulant_radius2(n)
    print(n, "alpha", ori.alpha(y), "kappa", ori.kappa_recursive(y))
