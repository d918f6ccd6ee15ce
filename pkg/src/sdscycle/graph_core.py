"""Simple undirected graphs on the vertex set 1..n.

Graphs are immutable values. Every operation returns a new graph and the
edge set is always kept canonical: pairs ``(u, v)`` with ``u < v``, sorted,
without duplicates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceeded, InvalidInput

Edge = tuple[int, int]

DEFAULT_MAX_AUT_N = 10


def _canon_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InvalidInput(f"vertex count must be a non-negative integer, got {self.n!r}")
        canon = set()
        for pos, e in enumerate(self.edges):
            try:
                u, v = e
            except (TypeError, ValueError):
                raise InvalidInput(f"edge #{pos} is not a pair: {e!r}") from None
            if not (isinstance(u, int) and isinstance(v, int)):
                raise InvalidInput(f"edge #{pos} has non-integer endpoints: {e!r}")
            if u == v:
                raise InvalidInput(f"edge #{pos} is a self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidInput(f"edge #{pos} {e!r} has an endpoint outside 1..{self.n}")
            canon.add(_canon_edge(u, v))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def closed_neighborhood(self, v: int) -> tuple[int, ...]:
        """Vertices of the 1-neighborhood of ``v`` in increasing order (``v`` included)."""
        return tuple(sorted(self.neighbors[v] | {v}))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors.get(u, ())

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((self.degree(v) for v in self.vertices), reverse=True))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def make_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    return Graph(n, tuple(tuple(e) for e in edges))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """``a`` on 1..a.n followed by ``b`` shifted to a.n+1..a.n+b.n."""
    shifted = [(u + a.n, v + a.n) for u, v in b.edges]
    return Graph(a.n + b.n, a.edges + tuple(shifted))


def add_edge(y: Graph, e: Sequence[int]) -> Graph:
    return Graph(y.n, y.edges + (tuple(e),))


# ---------------------------------------------------------------------------
# named families

def circle(n: int) -> Graph:
    if n < 3:
        raise InvalidInput(f"circle needs n >= 3, got {n}")
    return make_graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def circulant_radius2(n: int) -> Graph:
    if n < 5:
        raise InvalidInput(f"circulant_radius2 needs n >= 5, got {n}")
    edges = [(i, (i + k - 1) % n + 1) for i in range(1, n + 1) for k in (1, 2)]
    return make_graph(n, edges)


def circulant_radius2_open(n: int) -> Graph:
    """Radius-2 circulant with the edge {2, n} removed."""
    return delete_edge(circulant_radius2(n), (2, n))


def star(n: int) -> Graph:
    """Hub 1 joined to leaves 2..n+1."""
    if n < 1:
        raise InvalidInput(f"star needs n >= 1, got {n}")
    return make_graph(n + 1, [(1, i) for i in range(2, n + 2)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidInput(f"complete needs n >= 1, got {n}")
    return make_graph(n, combinations(range(1, n + 1), 2))


def hypercube(d: int) -> Graph:
    # vertex v <-> bit string of v - 1
    if d < 1:
        raise InvalidInput(f"hypercube needs d >= 1, got {d}")
    size = 1 << d
    edges = [(x + 1, (x ^ (1 << b)) + 1) for x in range(size) for b in range(d)]
    return make_graph(size, edges)


def path(n: int) -> Graph:
    if n < 1:
        raise InvalidInput(f"path needs n >= 1, got {n}")
    return make_graph(n, [(i, i + 1) for i in range(1, n)])


def empty(n: int) -> Graph:
    if n < 1:
        raise InvalidInput(f"empty needs n >= 1, got {n}")
    return Graph(n, ())


FAMILIES = {
    "circle": circle,
    "circulant2": circulant_radius2,
    "circulant_radius2": circulant_radius2,
    "circulant2_open": circulant_radius2_open,
    "circulant_radius2_open": circulant_radius2_open,
    "star": star,
    "complete": complete,
    "hypercube": hypercube,
    "path": path,
    "empty": empty,
}


def named_family(text: str, *params: int) -> Graph:
    """Build a graph from a family name.

    Accepts either ``named_family("circle", 4)`` or the shell form
    ``named_family("circle:4")``.
    """
    name = text
    if ":" in text:
        name, _, rest = text.partition(":")
        try:
            params = tuple(int(p) for p in rest.split(",") if p.strip()) + params
        except ValueError:
            raise InvalidInput(f"bad family parameters in {text!r}") from None
    name = name.strip().lower()
    if name not in FAMILIES:
        raise InvalidInput(f"unknown graph family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    if len(params) != 1:
        raise InvalidInput(f"family {name!r} takes exactly one integer parameter")
    return FAMILIES[name](params[0])


# ---------------------------------------------------------------------------
# surgery

def vertex_join(y: Graph) -> Graph:
    """Add vertex n+1 adjacent to every existing vertex."""
    new = y.n + 1
    return Graph(new, y.edges + tuple((v, new) for v in y.vertices))


def _require_edge(y: Graph, e: Sequence[int]) -> Edge:
    u, v = e
    ce = _canon_edge(u, v)
    if ce not in y.edge_index:
        raise InvalidInput(f"edge {tuple(e)} is not in the graph")
    return ce


def delete_edge(y: Graph, e: Sequence[int]) -> Graph:
    ce = _require_edge(y, e)
    return Graph(y.n, tuple(f for f in y.edges if f != ce))


def contract_edge(y: Graph, e: Sequence[int]) -> Graph:
    """Merge the endpoints of ``e`` into the smaller label and compact labels to 1..n-1.

    The result is simplified: the contracted edge disappears and parallel
    edges collapse into one.
    """
    keep, gone = _require_edge(y, e)

    def relabel(x):
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    edges = set()
    for u, v in y.edges:
        a, b = relabel(u), relabel(v)
        if a != b:
            edges.add(_canon_edge(a, b))
    return Graph(y.n - 1, tuple(edges))


def induced_subgraph(y: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabeled to 1..k in increasing order."""
    vs = sorted(set(vertices))
    label = {v: i for i, v in enumerate(vs, start=1)}
    edges = [(label[u], label[v]) for u, v in y.edges if u in label and v in label]
    return Graph(len(vs), tuple(edges))


# ---------------------------------------------------------------------------
# structure

def connected_components(y: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for s in y.vertices:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in y.neighbors[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(y: Graph) -> bool:
    return len(connected_components(y)) <= 1


def bridges(y: Graph) -> frozenset[Edge]:
    """Edges lying on no cycle (iterative low-link DFS)."""
    order: dict[int, int] = {}
    low: dict[int, int] = {}
    found = set()
    counter = 0
    for root in y.vertices:
        if root in order:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, 0, iter(sorted(y.neighbors[root])))]
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w == parent:
                    continue
                if w in order:
                    low[v] = min(low[v], order[w])
                else:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(sorted(y.neighbors[w]))))
                    break
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > order[p]:
                        found.add(_canon_edge(p, v))
    return frozenset(found)


def cycle_edges(y: Graph) -> frozenset[Edge]:
    return frozenset(y.edges) - bridges(y)


def is_bipartite(y: Graph) -> tuple[bool, dict[int, int] | None]:
    """Return ``(True, coloring)`` with a proper 0/1 coloring, or ``(False, None)``."""
    color: dict[int, int] = {}
    for s in y.vertices:
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in y.neighbors[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False, None
    return True, color


# ---------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True)
class VertexPermutation:
    """Bijection of 1..n; ``images[i - 1]`` is the image of vertex ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise InvalidInput(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def compose(self, other: "VertexPermutation") -> "VertexPermutation":
        """``self ∘ other``: apply ``other`` first."""
        return VertexPermutation(tuple(self(other(v)) for v in range(1, self.n + 1)))

    def inverse(self) -> "VertexPermutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return VertexPermutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for v in range(1, self.n + 1):
            if v in seen:
                continue
            cyc = [v]
            seen.add(v)
            w = self(v)
            while w != v:
                cyc.append(w)
                seen.add(w)
                w = self(w)
            out.append(tuple(cyc))
        return out


def apply_to_graph(gamma: VertexPermutation, y: Graph) -> Graph:
    return Graph(y.n, tuple((gamma(u), gamma(v)) for u, v in y.edges))


def is_automorphism(y: Graph, gamma: VertexPermutation) -> bool:
    return gamma.n == y.n and apply_to_graph(gamma, y).edges == y.edges


def automorphisms(y: Graph, max_n: int = DEFAULT_MAX_AUT_N) -> list[VertexPermutation]:
    """All automorphisms of ``y``, identity first.

    Backtracking over vertex images, pruned by degree and by adjacency with
    the vertices already placed.
    """
    if y.n > max_n:
        raise CapExceeded("vertex count for automorphism search", y.n, max_n)
    n = y.n
    deg = [0] + [y.degree(v) for v in y.vertices]
    adj = y.neighbors
    image = [0] * (n + 1)
    used = [False] * (n + 1)
    found: list[VertexPermutation] = []

    def extend(v):
        if v > n:
            found.append(VertexPermutation(tuple(image[1:])))
            return
        for c in range(1, n + 1):
            if used[c] or deg[c] != deg[v]:
                continue
            ok = True
            for u in range(1, v):
                if (u in adj[v]) != (image[u] in adj[c]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = c
            used[c] = True
            extend(v + 1)
            used[c] = False

    extend(1)
    return found


# ---------------------------------------------------------------------------
# serialization

def graph_to_dict(y: Graph) -> dict:
    return {"n": y.n, "edges": [list(e) for e in y.edges]}


def graph_from_dict(data, where: str = "graph") -> Graph:
    if not isinstance(data, dict):
        raise InvalidInput(f"{where}: expected an object with 'n' and 'edges'")
    if "n" not in data:
        raise InvalidInput(f"{where}: missing key 'n'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidInput(f"{where}.n: expected a non-negative integer, got {n!r}")
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise InvalidInput(f"{where}.edges: expected a list")
    pairs = []
    for i, e in enumerate(edges):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise InvalidInput(f"{where}.edges[{i}]: expected a pair of integers, got {e!r}")
        u, v = e
        if u == v:
            raise InvalidInput(f"{where}.edges[{i}]: self-loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidInput(f"{where}.edges[{i}]: endpoint outside 1..{n} in {e!r}")
        pairs.append((u, v))
    return Graph(n, tuple(pairs))


def loads_json(text: str, what: str = "document"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def graph_to_json(y: Graph) -> str:
    return json.dumps(graph_to_dict(y))


def graph_from_json(text: str) -> Graph:
    return graph_from_dict(loads_json(text, "graph"))


def read_graph(path) -> Graph:
    with open(path) as fh:
        return graph_from_json(fh.read())


def write_graph(y: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(graph_to_json(y) + "\n")


def graph_to_dot(y: Graph, name: str = "Y") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in y.vertices]
    lines += [f"  {u} -- {v};" for u, v in y.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# random graphs for property checks

def random_graph(n: int, p: float, rng, max_edges: int | None = None) -> Graph:
    import numpy as np
    rng = np.random.default_rng(rng)
    pairs = [e for e in combinations(range(1, n + 1), 2) if rng.random() < p]
    if max_edges is not None and len(pairs) > max_edges:
        keep = sorted(rng.choice(len(pairs), size=max_edges, replace=False).tolist())
        pairs = [pairs[i] for i in keep]
    return make_graph(n, pairs)


def random_tree(n: int, rng) -> Graph:
    """Uniform random recursive tree: vertex k attaches to a random earlier vertex."""
    import numpy as np
    rng = np.random.default_rng(rng)
    return make_graph(n, [(int(rng.integers(1, k)), k) for k in range(2, n + 1)])


def random_connected_graph(n: int, rng, max_edges: int | None = None, p: float = 0.4) -> Graph:
    """A random spanning tree plus random extra edges, at most ``max_edges`` in total."""
    import numpy as np
    rng = np.random.default_rng(rng)
    tree = random_tree(n, rng)
    limit = max_edges if max_edges is not None else n * (n - 1) // 2
    if limit < n - 1:
        raise InvalidInput(f"a connected graph on {n} vertices needs at least {n - 1} edges")
    others = [e for e in combinations(range(1, n + 1), 2) if e not in tree.edge_index]
    extra = [e for e in others if rng.random() < p]
    rng.shuffle(extra)
    return Graph(n, tree.edges + tuple(tuple(e) for e in extra[:limit - tree.m]))
