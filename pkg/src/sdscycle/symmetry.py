"""Automorphism actions on acyclic orientations and their click classes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput
from .graph_core import DEFAULT_MAX_AUT_N, Graph, VertexPermutation, automorphisms, is_automorphism
from .orientations import (
    DEFAULT_MAX_EDGES_ENUM,
    ClickClassification,
    Orientation,
    _UnionFind,
    _acyclic_masks,
    alpha,
    classify,
)


def _edge_action(y: Graph, gamma: VertexPermutation):
    """For each edge: (index of its image edge, whether the image flips u<v order)."""
    out = []
    for u, v in y.edges:
        a, b = gamma(u), gamma(v)
        out.append((y.edge_index[(min(a, b), max(a, b))], a > b))
    return out


def _act_mask(mask: int, action) -> int:
    new = 0
    for i, (j, flip) in enumerate(action):
        if (mask >> i & 1) ^ flip:
            new |= 1 << j
    return new


def act_on_orientation(gamma: VertexPermutation, o: Orientation) -> Orientation:
    """Relabel every arc ``a -> b`` as ``gamma(a) -> gamma(b)``."""
    if not is_automorphism(o.graph, gamma):
        raise InvalidInput("permutation is not an automorphism of the graph")
    return Orientation(o.graph, _act_mask(o.mask, _edge_action(o.graph, gamma)))


def _autos(y, autos, max_aut_n):
    return list(autos) if autos is not None else automorphisms(y, max_aut_n)


def orbit_count_acyc(y: Graph, autos: Sequence[VertexPermutation] | None = None,
                     max_edges: int = DEFAULT_MAX_EDGES_ENUM, max_aut_n: int = DEFAULT_MAX_AUT_N) -> int:
    """Orbits of Aut(Y) on Acyc(Y), counted directly."""
    autos = _autos(y, autos, max_aut_n)
    if y.m > max_edges:
        from .errors import CapExceeded
        raise CapExceeded("edge count for orientation enumeration", y.m, max_edges)
    masks = _acyclic_masks(y)
    index = {m: i for i, m in enumerate(masks)}
    uf = _UnionFind(len(masks))
    for gamma in autos:
        if gamma.is_identity():
            continue
        action = _edge_action(y, gamma)
        for i, m in enumerate(masks):
            uf.union(i, index[_act_mask(m, action)])
    return len({uf.find(i) for i in range(len(masks))})


@dataclass(frozen=True)
class OrbitGraph:
    base: Graph
    generator: VertexPermutation
    vertices: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]   # 1-based orbit indices, smaller first
    loops: tuple[bool, ...]

    @property
    def has_loop(self) -> bool:
        return any(self.loops)

    def as_graph(self) -> Graph:
        """Simple graph on the orbits (loops dropped)."""
        return Graph(len(self.vertices), self.edges)


def orbit_graph(y: Graph, gamma: VertexPermutation) -> OrbitGraph:
    orbits = tuple(frozenset(c) for c in gamma.cycles())
    which = {v: k for k, orb in enumerate(orbits, start=1) for v in orb}
    edges = set()
    loops = [False] * len(orbits)
    for u, v in y.edges:
        a, b = which[u], which[v]
        if a == b:
            loops[a - 1] = True
        else:
            edges.add((min(a, b), max(a, b)))
    return OrbitGraph(y, gamma, orbits, tuple(sorted(edges)), tuple(loops))


def orbit_graph_alpha(og: OrbitGraph) -> int:
    # a looped orbit admits no acyclic orientation
    return 0 if og.has_loop else alpha(og.as_graph())


def burnside_alpha_bar(y: Graph, autos: Sequence[VertexPermutation] | None = None,
                       max_aut_n: int = DEFAULT_MAX_AUT_N) -> int:
    """Average of alpha over the orbit graphs of the cyclic subgroups <gamma>."""
    autos = _autos(y, autos, max_aut_n)
    total = sum(orbit_graph_alpha(orbit_graph(y, g)) for g in autos)
    avg = Fraction(total, len(autos))
    if avg.denominator != 1:
        raise AssertionError(f"Burnside average {avg} is not an integer")
    return int(avg)


def class_action(cl: ClickClassification, gamma: VertexPermutation, which: str = "kappa") -> dict[int, int]:
    """Map induced by ``gamma`` on kappa- (or delta-) classes; raises if not well defined."""
    labels = cl.kappa_class if which == "kappa" else cl.delta_class
    action = _edge_action(cl.graph, gamma)
    index = cl._index
    out: dict[int, int] = {}
    for o, c in zip(cl.orientations, labels):
        target = labels[index[_act_mask(o.mask, action)]]
        if out.setdefault(c, target) != target:
            raise AssertionError(f"automorphism {gamma.images} does not respect {which}-class {c}")
    return out


def _class_orbits(cl: ClickClassification, autos, which: str) -> int:
    size = cl.kappa if which == "kappa" else cl.delta
    uf = _UnionFind(size)
    for gamma in autos:
        for c, d in class_action(cl, gamma, which).items():
            uf.union(c, d)
    return len({uf.find(c) for c in range(size)})


def kappa_bar(y: Graph, autos: Sequence[VertexPermutation] | None = None,
              classification: ClickClassification | None = None, max_aut_n: int = DEFAULT_MAX_AUT_N) -> int:
    autos = _autos(y, autos, max_aut_n)
    cl = classification if classification is not None else classify(y)
    return _class_orbits(cl, autos, "kappa")


def delta_bar(y: Graph, autos: Sequence[VertexPermutation] | None = None,
              classification: ClickClassification | None = None, max_aut_n: int = DEFAULT_MAX_AUT_N) -> int:
    autos = _autos(y, autos, max_aut_n)
    cl = classification if classification is not None else classify(y)
    return _class_orbits(cl, autos, "delta")


def symmetry_report(y: Graph, max_aut_n: int = DEFAULT_MAX_AUT_N) -> dict:
    autos = automorphisms(y, max_aut_n)
    cl = classify(y)
    return {
        "aut_order": len(autos),
        "alpha_bar": orbit_count_acyc(y, autos),
        "kappa_bar": kappa_bar(y, autos, cl),
        "delta_bar": delta_bar(y, autos, cl),
    }


def symmetry_report_json(y: Graph, max_aut_n: int = DEFAULT_MAX_AUT_N) -> str:
    return json.dumps(symmetry_report(y, max_aut_n))
