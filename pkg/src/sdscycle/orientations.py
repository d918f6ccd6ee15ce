"""Acyclic orientations, click moves and the counts alpha, kappa, delta.

An orientation is stored as an integer bitmask over the graph's canonical
edge order: bit ``i`` clear means edge ``(u, v)``, ``u < v``, points
``u -> v``; bit ``i`` set means ``v -> u``. Clicking a source flips all bits
of its incident edges, reversing flips every bit.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations
from math import prod
from typing import Sequence

import networkx as nx

from .errors import CapExceeded, InvalidInput
from .graph_core import (
    Edge,
    Graph,
    bridges,
    connected_components,
    contract_edge,
    delete_edge,
    induced_subgraph,
    is_bipartite,
    is_connected,
    circulant_radius2,
    circulant_radius2_open,
)

DEFAULT_MAX_EDGES_ENUM = 28
MAX_UPDATE_GRAPH_N = 8
TUTTE_MAX_N = 12
TUTTE_MAX_M = 20


@lru_cache(maxsize=256)
def _edge_masks(y: Graph):
    """Per-vertex incident-edge mask and the mask of edges where the vertex is the larger endpoint."""
    inc = [0] * (y.n + 1)
    hi = [0] * (y.n + 1)
    for i, (u, v) in enumerate(y.edges):
        inc[u] |= 1 << i
        inc[v] |= 1 << i
        hi[v] |= 1 << i
    return tuple(inc), tuple(hi)


@dataclass(frozen=True)
class Orientation:
    graph: Graph
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.graph.m):
            raise InvalidInput(f"orientation mask {self.mask} out of range for {self.graph.m} edges")

    @classmethod
    def from_arcs(cls, y: Graph, arcs) -> "Orientation":
        mask = 0
        seen = set()
        for a, b in arcs:
            e = (a, b) if a < b else (b, a)
            if e not in y.edge_index:
                raise InvalidInput(f"arc {(a, b)} is not an edge of the graph")
            seen.add(e)
            if a > b:
                mask |= 1 << y.edge_index[e]
        if len(seen) != y.m:
            raise InvalidInput("arcs must direct every edge exactly once")
        return cls(y, mask)

    @classmethod
    def from_bitstring(cls, y: Graph, bits: str) -> "Orientation":
        if len(bits) != y.m or set(bits) - {"0", "1"}:
            raise InvalidInput(f"expected a 0/1 string of length {y.m}, got {bits!r}")
        return cls(y, sum(1 << i for i, c in enumerate(bits) if c == "1"))

    def direction(self, e: Sequence[int]) -> tuple[int, int]:
        u, v = sorted(e)
        i = self.graph.edge_index[(u, v)]
        return (v, u) if self.mask >> i & 1 else (u, v)

    def arcs(self) -> list[tuple[int, int]]:
        return [(v, u) if self.mask >> i & 1 else (u, v) for i, (u, v) in enumerate(self.graph.edges)]

    def bitstring(self) -> str:
        return "".join("1" if self.mask >> i & 1 else "0" for i in range(self.graph.m))

    def is_acyclic(self) -> bool:
        return _topological_order(self) is not None

    def to_dot(self, name: str = "O") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f"  {v};" for v in self.graph.vertices]
        lines += [f"  {a} -> {b};" for a, b in self.arcs()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _topological_order(o: Orientation, smallest_first: bool = True) -> list[int] | None:
    y = o.graph
    indeg = [0] * (y.n + 1)
    out: dict[int, list[int]] = {v: [] for v in y.vertices}
    for a, b in o.arcs():
        out[a].append(b)
        indeg[b] += 1
    heap = [v for v in y.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order if len(order) == y.n else None


def is_acyclic(o: Orientation) -> bool:
    return o.is_acyclic()


def orientation_of_permutation(y: Graph, pi: Sequence[int]) -> Orientation:
    """Direct each edge from the endpoint appearing first in ``pi``."""
    if sorted(pi) != list(y.vertices):
        raise InvalidInput(f"{tuple(pi)} is not a permutation of 1..{y.n}")
    pos = {v: k for k, v in enumerate(pi)}
    mask = 0
    for i, (u, v) in enumerate(y.edges):
        if pos[v] < pos[u]:
            mask |= 1 << i
    return Orientation(y, mask)


def linear_extension(o: Orientation) -> tuple[int, ...]:
    """A permutation inducing ``o``; ties go to the smallest available vertex."""
    order = _topological_order(o)
    if order is None:
        raise InvalidInput("orientation has a directed cycle")
    return tuple(order)


def sources(o: Orientation) -> frozenset[int]:
    inc, hi = _edge_masks(o.graph)
    return frozenset(v for v in o.graph.vertices if o.mask & inc[v] == hi[v])


def sinks(o: Orientation) -> frozenset[int]:
    inc, hi = _edge_masks(o.graph)
    return frozenset(v for v in o.graph.vertices if o.mask & inc[v] == inc[v] ^ hi[v])


def click(o: Orientation, v: int) -> Orientation:
    """Turn the source ``v`` into a sink."""
    inc, hi = _edge_masks(o.graph)
    if not 1 <= v <= o.graph.n or o.mask & inc[v] != hi[v]:
        raise InvalidInput(f"vertex {v} is not a source")
    return Orientation(o.graph, o.mask ^ inc[v])


def reverse(o: Orientation) -> Orientation:
    return Orientation(o.graph, o.mask ^ ((1 << o.graph.m) - 1))


# ---------------------------------------------------------------------------
# enumeration

def _acyclic_masks(y: Graph) -> list[int]:
    """Backtrack edge by edge, rejecting an arc a->b whenever b already reaches a."""
    n, edges = y.n, y.edges
    out = [0] * (n + 1)          # bitset of out-neighbours
    found: list[int] = []

    def reaches(src, dst):
        seen = 1 << src
        stack = [src]
        while stack:
            x = stack.pop()
            nbrs = out[x] & ~seen
            if nbrs >> dst & 1:
                return True
            seen |= nbrs
            while nbrs:
                low = nbrs & -nbrs
                stack.append(low.bit_length() - 1)
                nbrs ^= low
        return src == dst

    def place(i, mask):
        if i == len(edges):
            found.append(mask)
            return
        u, v = edges[i]
        if not reaches(v, u):
            out[u] |= 1 << v
            place(i + 1, mask)
            out[u] &= ~(1 << v)
        if not reaches(u, v):
            out[v] |= 1 << u
            place(i + 1, mask | 1 << i)
            out[v] &= ~(1 << u)

    place(0, 0)
    return sorted(found)


def enumerate_acyclic(y: Graph, max_edges: int = DEFAULT_MAX_EDGES_ENUM) -> list[Orientation]:
    if y.m > max_edges:
        raise CapExceeded("edge count for orientation enumeration", y.m, max_edges)
    return [Orientation(y, m) for m in _acyclic_masks(y)]


def alpha(y: Graph, max_edges: int = DEFAULT_MAX_EDGES_ENUM) -> int:
    """Number of acyclic orientations; counted by deletion-contraction above the enumeration cap."""
    if y.m <= max_edges:
        return len(_acyclic_masks(y))
    return alpha_recursive(y)


# ---------------------------------------------------------------------------
# isomorphism-aware memo for the recursions

class _IsoMemo:
    """Values keyed by graph isomorphism class.

    Cheap invariants choose the bucket, VF2 settles collisions.
    """

    def __init__(self):
        self._buckets: dict[tuple, list[tuple[nx.Graph, int]]] = {}

    @staticmethod
    def _key(y: Graph):
        nbr_degs = tuple(sorted(
            (y.degree(v), tuple(sorted(y.degree(w) for w in y.neighbors[v]))) for v in y.vertices))
        return (y.n, y.m, nbr_degs)

    @staticmethod
    def _nx(y: Graph) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(y.vertices)
        g.add_edges_from(y.edges)
        return g

    def get(self, y: Graph):
        bucket = self._buckets.get(self._key(y))
        if not bucket:
            return None
        g = self._nx(y)
        for h, val in bucket:
            if nx.is_isomorphic(g, h):
                return val
        return None

    def put(self, y: Graph, val: int) -> None:
        self._buckets.setdefault(self._key(y), []).append((self._nx(y), val))


_ALPHA_MEMO = _IsoMemo()
_KAPPA_MEMO = _IsoMemo()


def alpha_recursive(y: Graph) -> int:
    """alpha(Y) = alpha(Y - e) + alpha(Y / e), product over components."""
    comps = connected_components(y)
    if len(comps) > 1:
        return prod(alpha_recursive(induced_subgraph(y, c)) for c in comps)
    if y.m == 0:
        return 1
    if y.m == y.n - 1:
        return 2 ** y.m
    hit = _ALPHA_MEMO.get(y)
    if hit is not None:
        return hit
    e = y.edges[0]
    val = alpha_recursive(delete_edge(y, e)) + alpha_recursive(contract_edge(y, e))
    _ALPHA_MEMO.put(y, val)
    return val


def kappa_recursive(y: Graph) -> int:
    """kappa by deletion-contraction on cycle-edges.

    Bridges are dropped first (kappa is multiplicative across them), the
    rest splits into components, and each 2-edge-connected piece recurses
    on its lowest-index edge.
    """
    core = y
    br = bridges(y)
    if br:
        core = Graph(y.n, tuple(e for e in y.edges if e not in br))
    comps = connected_components(core)
    if len(comps) > 1:
        return prod(kappa_recursive(induced_subgraph(core, c)) for c in comps if len(c) > 1)
    if core.m == 0:
        return 1
    if core.m == core.n:        # a single cycle
        return core.n - 1
    hit = _KAPPA_MEMO.get(core)
    if hit is not None:
        return hit
    e = core.edges[0]
    val = kappa_recursive(delete_edge(core, e)) + kappa_recursive(contract_edge(core, e))
    _KAPPA_MEMO.put(core, val)
    return val


def delta_from_kappa(y: Graph, kappa: int | None = None) -> int:
    """delta of a connected graph: kappa/2, or (kappa+1)/2 when bipartite."""
    if not is_connected(y):
        raise InvalidInput("delta_from_kappa needs a connected graph; use classify() for disconnected graphs")
    k = kappa_recursive(y) if kappa is None else kappa
    if is_bipartite(y)[0]:
        if k % 2 != 1:
            raise AssertionError(f"bipartite graph with even kappa {k}")
        return (k + 1) // 2
    if k % 2 != 0:
        raise AssertionError(f"non-bipartite graph with odd kappa {k}")
    return k // 2


# ---------------------------------------------------------------------------
# Tutte oracle on multigraphs

def tutte(y: Graph, x, y_arg):
    """Evaluate the Tutte polynomial at ``(x, y_arg)``.

    Plain deletion-contraction that keeps loops and parallel edges, kept
    independent of :func:`kappa_recursive` on purpose.
    """
    if y.n > TUTTE_MAX_N:
        raise CapExceeded("vertex count for Tutte evaluation", y.n, TUTTE_MAX_N)
    if y.m > TUTTE_MAX_M:
        raise CapExceeded("edge count for Tutte evaluation", y.m, TUTTE_MAX_M)
    if isinstance(x, float) or isinstance(y_arg, float):
        x, y_arg = Fraction(x), Fraction(y_arg)
    memo: dict = {}
    return _tutte_multi(y.n, tuple(y.edges), x, y_arg, memo)


def _multi_connected(n, edges, a, b) -> bool:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen = {a}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            return True
        for w in adj.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _multi_contract(n, edges, u, v):
    """Merge v into u (u < v), keep loops and parallels, compact labels."""
    def relabel(z):
        if z == v:
            z = u
        return z - 1 if z > v else z

    out = []
    for a, b in edges:
        a, b = relabel(a), relabel(b)
        out.append((a, b) if a <= b else (b, a))
    return n - 1, tuple(sorted(out))


def _tutte_multi(n, edges, x, y, memo):
    key = (n, edges)
    if key in memo:
        return memo[key]
    loops = sum(1 for a, b in edges if a == b)
    rest = tuple(e for e in edges if e[0] != e[1])
    if not rest:
        val = y ** loops
    else:
        u, v = rest[0]
        others = rest[1:]
        if _multi_connected(n, others, u, v):
            val = (_tutte_multi(n, others, x, y, memo)
                   + _tutte_multi(*_multi_contract(n, others, u, v), x, y, memo))
        else:
            # bridge: contracting it is all that remains
            nn, contracted = _multi_contract(n, others, u, v)
            val = x * _tutte_multi(nn, contracted, x, y, memo)
        val = val * y ** loops
    memo[key] = val
    return val


# ---------------------------------------------------------------------------
# click classification

class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def labels(self) -> list[int]:
        """Class ids 0, 1, ... numbered by first appearance."""
        ids: dict[int, int] = {}
        return [ids.setdefault(self.find(i), len(ids)) for i in range(len(self.parent))]


@dataclass(frozen=True)
class ClickClassification:
    graph: Graph
    orientations: tuple[Orientation, ...]
    kappa_class: tuple[int, ...]
    delta_class: tuple[int, ...]

    @property
    def alpha(self) -> int:
        return len(self.orientations)

    @property
    def kappa(self) -> int:
        return max(self.kappa_class, default=-1) + 1

    @property
    def delta(self) -> int:
        return max(self.delta_class, default=-1) + 1

    @cached_property
    def _index(self) -> dict[int, int]:
        return {o.mask: i for i, o in enumerate(self.orientations)}

    def index_of(self, o: Orientation) -> int:
        return self._index[o.mask]

    def class_of(self, o: Orientation) -> int:
        return self.kappa_class[self.index_of(o)]

    def class_sizes(self) -> list[int]:
        sizes = [0] * self.kappa
        for c in self.kappa_class:
            sizes[c] += 1
        return sizes

    def kappa_classes(self) -> list[list[Orientation]]:
        out: list[list[Orientation]] = [[] for _ in range(self.kappa)]
        for o, c in zip(self.orientations, self.kappa_class):
            out[c].append(o)
        return out

    def to_dict(self, representatives: Sequence[Orientation] | None = None) -> dict:
        d = {"alpha": self.alpha, "kappa": self.kappa, "delta": self.delta, "class_sizes": self.class_sizes()}
        if representatives is not None:
            d["representatives"] = [o.bitstring() for o in representatives]
        return d

    def to_json(self, representatives: Sequence[Orientation] | None = None) -> str:
        return json.dumps(self.to_dict(representatives))


def classify(y: Graph, max_edges: int = DEFAULT_MAX_EDGES_ENUM) -> ClickClassification:
    """Components of the click graph on Acyc(Y), then with reversal edges added."""
    if y.m > max_edges:
        raise CapExceeded("edge count for orientation enumeration", y.m, max_edges)
    masks = _acyclic_masks(y)
    index = {m: i for i, m in enumerate(masks)}
    inc, hi = _edge_masks(y)
    full = (1 << y.m) - 1
    uf = _UnionFind(len(masks))
    for i, m in enumerate(masks):
        for v in y.vertices:
            if m & inc[v] == hi[v] and inc[v]:
                uf.union(i, index[m ^ inc[v]])
    kappa_class = uf.labels()
    for i, m in enumerate(masks):
        uf.union(i, index[m ^ full])
    delta_class = uf.labels()
    return ClickClassification(y, tuple(Orientation(y, m) for m in masks), tuple(kappa_class), tuple(delta_class))


def classification_from_json(text: str) -> dict:
    from .graph_core import loads_json
    data = loads_json(text, "classification")
    for key in ("alpha", "kappa", "delta", "class_sizes"):
        if key not in data:
            raise InvalidInput(f"classification: missing key {key!r}")
    if sum(data["class_sizes"]) != data["alpha"] or len(data["class_sizes"]) != data["kappa"]:
        raise InvalidInput("classification: class_sizes inconsistent with alpha/kappa")
    return data


def reflection_on_classes(cl: ClickClassification) -> dict[int, int]:
    """The map on kappa-classes induced by reversal; raises if it is not well defined."""
    rho: dict[int, int] = {}
    for o, c in zip(cl.orientations, cl.kappa_class):
        target = cl.class_of(reverse(o))
        if rho.setdefault(c, target) != target:
            raise AssertionError(f"reversal does not respect kappa-class {c}")
    return rho


def unique_source_representatives(y: Graph, v: int, max_edges: int = DEFAULT_MAX_EDGES_ENUM) -> list[Orientation]:
    """Acyclic orientations whose only source is ``v``."""
    if not is_connected(y):
        raise InvalidInput("unique-source representatives need a connected graph")
    if not 1 <= v <= y.n:
        raise InvalidInput(f"{v} is not a vertex of 1..{y.n}")
    if y.m > max_edges:
        raise CapExceeded("edge count for orientation enumeration", y.m, max_edges)
    inc, hi = _edge_masks(y)
    result = []
    for m in _acyclic_masks(y):
        srcs = [u for u in y.vertices if m & inc[u] == hi[u]]
        if srcs == [v]:
            result.append(Orientation(y, m))
    return result


def update_graph_components(y: Graph, max_n: int = MAX_UPDATE_GRAPH_N) -> int:
    """Components of the permutation update graph (adjacent swaps of non-adjacent vertices)."""
    if y.n > max_n:
        raise CapExceeded("vertex count for the permutation update graph", y.n, max_n)
    perms = list(permutations(y.vertices))
    index = {p: i for i, p in enumerate(perms)}
    uf = _UnionFind(len(perms))
    for i, p in enumerate(perms):
        for k in range(y.n - 1):
            a, b = p[k], p[k + 1]
            if not y.has_edge(a, b):
                swapped = p[:k] + (b, a) + p[k + 2:]
                uf.union(i, index[swapped])
    return len(set(uf.find(i) for i in range(len(perms))))


def dihedral_orbit(y: Graph, pi: Sequence[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Orientation masks of the cyclic shifts of ``pi``, and of shifts plus reversals.

    On a connected graph the first set always has n elements. The second has
    2n elements for every ``pi`` when the graph is not bipartite; on a
    bipartite graph some ``pi`` (e.g. one colour class before the other)
    gives fewer.
    """
    pi = tuple(pi)
    n = len(pi)
    shifts = [pi[s:] + pi[:s] for s in range(n)]
    cyc = frozenset(orientation_of_permutation(y, p).mask for p in shifts)
    full = cyc | frozenset(orientation_of_permutation(y, p[::-1]).mask for p in shifts)
    return cyc, full


# ---------------------------------------------------------------------------
# radius-2 circulants

def _check_circ2_n(n):
    if n < 5:
        raise InvalidInput(f"radius-2 circulant formulas need n >= 5, got {n}")


def circ2_closed_forms(n: int) -> tuple[int, int]:
    """``(kappa(Circ_{n,2}), kappa(Circ'_{n,2}))`` from the closed forms."""
    _check_circ2_n(n)
    sign = -1 if n % 2 else 1
    g_num = (2 * n - 6) * 2 ** n + 9 - (2 * n - 3) * sign
    c_num = (3 * n - 5) * 2 ** n - 4 * sign
    if g_num % 6 or c_num % 18:
        raise AssertionError(f"closed form not integral at n={n}")
    return g_num // 6, c_num // 18


def circ2_recurrence(n: int) -> tuple[int, int]:
    """Same pair from c_n = c_{n-1} + 2c_{n-2} + 2^{n-2}, g_n = g_{n-2} + c_n + 2c_{n-2}."""
    _check_circ2_n(n)
    c = {5: 18, 6: 46}
    g = {5: 24, 6: 64}
    for k in range(7, n + 1):
        c[k] = c[k - 1] + 2 * c[k - 2] + 2 ** (k - 2)
        g[k] = g[k - 2] + c[k] + 2 * c[k - 2]
    return g[n], c[n]


def circ2_kappas(n: int) -> tuple[int, int]:
    """Same pair computed on the actual graphs by deletion-contraction."""
    _check_circ2_n(n)
    return kappa_recursive(circulant_radius2(n)), kappa_recursive(circulant_radius2_open(n))
