"""Sequential dynamical systems: local rules, SDS maps and phase spaces.

States over ``K = {0, ..., q-1}`` are encoded as mixed-radix integers with
vertex 1 as the least significant digit. Whole phase spaces are evaluated
at once on a ``(q**n, n)`` digit matrix, one local map per word letter.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, InvalidInput
from .graph_core import Graph, VertexPermutation, automorphisms, graph_from_dict, graph_to_dict, loads_json, named_family, read_graph

DEFAULT_MAX_STATES = 2 ** 24

BOOLEAN_RULES = ("nor", "nand", "or", "and", "parity", "nparity", "majority")
ANY_Q_RULES = ("zero", "one", "sum")


# ---------------------------------------------------------------------------
# rules

@dataclass(frozen=True)
class RuleTable:
    """Total function ``K**arity -> K``.

    ``table`` lists outputs in lexicographic order of the input tuples, so
    the first input is the most significant digit.
    """

    arity: int
    q: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 0 or self.q < 1:
            raise InvalidInput(f"bad rule shape: arity={self.arity}, q={self.q}")
        tab = tuple(int(x) for x in self.table)
        if len(tab) != self.q ** self.arity:
            raise InvalidInput(
                f"rule table needs {self.q ** self.arity} entries for arity {self.arity}, q={self.q}; got {len(tab)}")
        bad = [x for x in tab if not 0 <= x < self.q]
        if bad:
            raise InvalidInput(f"rule table output {bad[0]} outside 0..{self.q - 1}")
        object.__setattr__(self, "table", tab)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.table, dtype=np.int64)
        a.flags.writeable = False
        return a

    def input_index(self, inputs: Sequence[int]) -> int:
        idx = 0
        for x in inputs:
            idx = idx * self.q + x
        return idx

    def __call__(self, *inputs: int) -> int:
        if len(inputs) != self.arity:
            raise InvalidInput(f"rule of arity {self.arity} called with {len(inputs)} inputs")
        return self.table[self.input_index(inputs)]

    def inputs(self) -> Iterable[tuple[int, ...]]:
        """All input tuples in table order."""
        for idx in range(len(self.table)):
            digits = []
            for _ in range(self.arity):
                idx, r = divmod(idx, self.q)
                digits.append(r)
            yield tuple(reversed(digits))

    def is_symmetric(self) -> bool:
        return all(self.table[self.input_index(sorted(t))] == out
                   for t, out in zip(self.inputs(), self.table))


def _boolean(name, xs):
    s = sum(xs)
    k = len(xs)
    if name == "nor":
        return int(s == 0)
    if name == "nand":
        return int(s < k)
    if name == "or":
        return int(s > 0)
    if name == "and":
        return int(s == k)
    if name == "parity":
        return s % 2
    if name == "nparity":
        return 1 - s % 2
    if name == "majority":
        return int(2 * s > k)
    raise AssertionError(name)


def builtin_rule(name: str, arity: int, q: int = 2) -> RuleTable:
    """Named rule tables.

    Boolean rules (q must be 2): nor, nand, or, and, parity, nparity
    (complemented parity), majority (strict). Any q: zero, one (constant
    outputs) and sum (sum of inputs mod q).
    """
    name = name.lower()
    if arity < 1:
        raise InvalidInput(f"rule arity must be >= 1, got {arity}")
    if name in BOOLEAN_RULES:
        if q != 2:
            raise InvalidInput(f"rule {name!r} is Boolean and needs q = 2, got q = {q}")
    elif name not in ANY_Q_RULES:
        raise InvalidInput(f"unknown rule {name!r}; known: {', '.join(BOOLEAN_RULES + ANY_Q_RULES)}")
    if name == "one" and q < 2:
        raise InvalidInput("rule 'one' needs q >= 2")
    proto = RuleTable(arity, q, (0,) * q ** arity)
    out = []
    for xs in proto.inputs():
        if name == "zero":
            out.append(0)
        elif name == "one":
            out.append(1)
        elif name == "sum":
            out.append(sum(xs) % q)
        else:
            out.append(_boolean(name, xs))
    return RuleTable(arity, q, tuple(out))


def random_rule(arity: int, q: int, rng) -> RuleTable:
    rng = np.random.default_rng(rng)
    return RuleTable(arity, q, tuple(int(x) for x in rng.integers(0, q, size=q ** arity)))


def random_self_bijective_rule(arity: int, position: int, q: int, rng) -> RuleTable:
    """Random rule ``x -> x + g(rest) mod q`` that permutes its own input at ``position``."""
    rng = np.random.default_rng(rng)
    g = random_rule(arity, q, rng)
    out = []
    for xs in g.inputs():
        rest = xs[:position] + (0,) + xs[position + 1:]
        out.append((xs[position] + g(*rest)) % q)
    return RuleTable(arity, q, tuple(out))


# ---------------------------------------------------------------------------
# states

@dataclass(frozen=True)
class State:
    values: tuple[int, ...]
    index: int

    @classmethod
    def from_values(cls, values: Sequence[int], q: int) -> "State":
        vals = tuple(int(v) for v in values)
        if any(not 0 <= v < q for v in vals):
            raise InvalidInput(f"state {vals} has a value outside 0..{q - 1}")
        return cls(vals, encode_state(vals, q))

    @classmethod
    def from_index(cls, index: int, n: int, q: int) -> "State":
        if not 0 <= index < q ** n:
            raise InvalidInput(f"state index {index} outside 0..{q ** n - 1}")
        return cls(decode_state(index, n, q), int(index))


def encode_state(values: Sequence[int], q: int) -> int:
    idx = 0
    for v in reversed(values):
        idx = idx * q + int(v)
    return idx


def decode_state(index: int, n: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        index, r = divmod(index, q)
        out.append(r)
    return tuple(out)


def all_digits(n: int, q: int) -> np.ndarray:
    """Digit matrix of every state, row ``i`` holding the values of state index ``i``."""
    idx = np.arange(q ** n, dtype=np.int64)
    return np.stack([(idx // q ** j) % q for j in range(n)], axis=1) if n else np.zeros((1, 0), np.int64)


def encode_digits(digits: np.ndarray, q: int) -> np.ndarray:
    n = digits.shape[1]
    weights = q ** np.arange(n, dtype=np.int64)
    return digits @ weights


# ---------------------------------------------------------------------------
# systems

@dataclass(frozen=True)
class SdsSystem:
    graph: Graph
    q: int
    rules: tuple[RuleTable, ...]
    word: tuple[int, ...] = ()

    def __post_init__(self):
        y = self.graph
        if self.q < 1:
            raise InvalidInput(f"q must be >= 1, got {self.q}")
        rules = tuple(self.rules)
        if len(rules) != y.n:
            raise InvalidInput(f"need one rule per vertex ({y.n}), got {len(rules)}")
        for v, r in zip(y.vertices, rules):
            if r.arity != y.degree(v) + 1:
                raise InvalidInput(f"rule at vertex {v} has arity {r.arity}, expected {y.degree(v) + 1}")
            if r.q != self.q:
                raise InvalidInput(f"rule at vertex {v} is over q={r.q}, system has q={self.q}")
        word = tuple(int(w) for w in self.word)
        for pos, w in enumerate(word):
            if not 1 <= w <= y.n:
                raise InvalidInput(f"word entry #{pos} = {w} is not a vertex of 1..{y.n}")
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "word", word)

    @classmethod
    def uniform(cls, graph: Graph, rule: str, word: Sequence[int] = (), q: int = 2) -> "SdsSystem":
        """Every vertex runs the named builtin rule at its own arity."""
        rules = tuple(builtin_rule(rule, graph.degree(v) + 1, q) for v in graph.vertices)
        return cls(graph, q, rules, tuple(word))

    @classmethod
    def random_self_bijective(cls, graph: Graph, q: int, word: Sequence[int], rng) -> "SdsSystem":
        rng = np.random.default_rng(rng)
        rules = tuple(random_self_bijective_rule(graph.degree(v) + 1, graph.closed_neighborhood(v).index(v), q, rng)
                      for v in graph.vertices)
        return cls(graph, q, rules, tuple(word))

    @classmethod
    def random(cls, graph: Graph, q: int, word: Sequence[int], rng) -> "SdsSystem":
        rng = np.random.default_rng(rng)
        rules = tuple(random_rule(graph.degree(v) + 1, q, rng) for v in graph.vertices)
        return cls(graph, q, rules, tuple(word))

    def with_word(self, word: Sequence[int]) -> "SdsSystem":
        return replace(self, word=tuple(word))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def size(self) -> int:
        return self.q ** self.graph.n

    @cached_property
    def _neighborhoods(self) -> tuple[np.ndarray, ...]:
        return tuple(np.array(self.graph.closed_neighborhood(v), dtype=np.int64) - 1
                     for v in self.graph.vertices)

    def _update_inplace(self, digits: np.ndarray, v: int) -> None:
        nb = self._neighborhoods[v - 1]
        weights = self.q ** np.arange(len(nb) - 1, -1, -1, dtype=np.int64)
        local = digits[:, nb] @ weights
        digits[:, v - 1] = self.rules[v - 1].array[local]

    def is_permutation_word(self) -> bool:
        return sorted(self.word) == list(self.graph.vertices)


def _as_state(sys: SdsSystem, s) -> State:
    if isinstance(s, State):
        return s
    if isinstance(s, (int, np.integer)):
        return State.from_index(int(s), sys.n, sys.q)
    vals = tuple(s)
    if len(vals) != sys.n:
        raise InvalidInput(f"state has {len(vals)} entries, system has {sys.n} vertices")
    return State.from_values(vals, sys.q)


def apply_local(sys: SdsSystem, v: int, s) -> State:
    """Apply the Y-local function of vertex ``v``; only coordinate ``v`` changes."""
    if not 1 <= v <= sys.n:
        raise InvalidInput(f"{v} is not a vertex of 1..{sys.n}")
    st = _as_state(sys, s)
    vals = list(st.values)
    inputs = [vals[u - 1] for u in sys.graph.closed_neighborhood(v)]
    vals[v - 1] = sys.rules[v - 1](*inputs)
    return State.from_values(vals, sys.q)


def apply_sds(sys: SdsSystem, s) -> State:
    """Apply the local maps in word order, first letter first."""
    st = _as_state(sys, s)
    for v in sys.word:
        st = apply_local(sys, v, st)
    return st


def apply_parallel(sys: SdsSystem, s) -> State:
    """Synchronous update of every vertex from the same input state."""
    st = _as_state(sys, s)
    out = []
    for v in sys.graph.vertices:
        inputs = [st.values[u - 1] for u in sys.graph.closed_neighborhood(v)]
        out.append(sys.rules[v - 1](*inputs))
    return State.from_values(out, sys.q)


def _check_cap(sys: SdsSystem, max_states: int) -> None:
    if sys.size > max_states:
        raise CapExceeded("state space size q^n", sys.size, max_states)


def successor_table(sys: SdsSystem, word: Sequence[int] | None = None,
                    max_states: int = DEFAULT_MAX_STATES) -> np.ndarray:
    """Image index of every state under the SDS map (``word`` overrides the system word)."""
    _check_cap(sys, max_states)
    digits = all_digits(sys.n, sys.q)
    for v in (sys.word if word is None else word):
        sys._update_inplace(digits, v)
    return encode_digits(digits, sys.q)


def local_successor(sys: SdsSystem, v: int, max_states: int = DEFAULT_MAX_STATES) -> np.ndarray:
    return successor_table(sys, (v,), max_states)


def parallel_successor(sys: SdsSystem, max_states: int = DEFAULT_MAX_STATES) -> np.ndarray:
    _check_cap(sys, max_states)
    digits = all_digits(sys.n, sys.q)
    out = digits.copy()
    for v in sys.graph.vertices:
        nb = sys._neighborhoods[v - 1]
        weights = sys.q ** np.arange(len(nb) - 1, -1, -1, dtype=np.int64)
        out[:, v - 1] = sys.rules[v - 1].array[digits[:, nb] @ weights]
    return encode_digits(out, sys.q)


# ---------------------------------------------------------------------------
# phase space

@dataclass(frozen=True)
class PhaseSpace:
    size: int
    successor: np.ndarray
    periodic_mask: np.ndarray = field(repr=False)
    cycles: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def periodic(self) -> np.ndarray:
        return np.flatnonzero(self.periodic_mask)

    @property
    def periodic_count(self) -> int:
        return int(self.periodic_mask.sum())


def periodic_mask(successor: np.ndarray) -> np.ndarray:
    """Mark the states lying on cycles of a functional digraph.

    ``f^(2^k)`` by repeated squaring; once ``2^k`` exceeds every transient
    length its image is exactly the periodic set.
    """
    size = len(successor)
    g = successor
    steps = 1
    while steps < size:
        g = g[g]
        steps *= 2
    mask = np.zeros(size, dtype=bool)
    mask[g] = True
    return mask


def extract_cycles(successor: np.ndarray, mask: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Cycles in order of their smallest state, each starting from that state."""
    succ = successor.tolist()
    seen = np.zeros(len(successor), dtype=bool)
    cycles = []
    for start in np.flatnonzero(mask).tolist():
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = succ[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = succ[x]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def phase_space_from_successor(successor: np.ndarray) -> PhaseSpace:
    succ = np.asarray(successor, dtype=np.int64).copy()
    if succ.ndim != 1 or (len(succ) and (succ.min() < 0 or succ.max() >= len(succ))):
        raise InvalidInput("successor table must map 0..N-1 into itself")
    succ.flags.writeable = False
    mask = periodic_mask(succ)
    mask.flags.writeable = False
    return PhaseSpace(len(succ), succ, mask, extract_cycles(succ, mask))


def phase_space(sys: SdsSystem, max_states: int = DEFAULT_MAX_STATES) -> PhaseSpace:
    return phase_space_from_successor(successor_table(sys, max_states=max_states))


def periodic_restriction(ps: PhaseSpace) -> dict[int, int]:
    return {int(i): int(ps.successor[i]) for i in ps.periodic}


def cycle_multiset(ps: PhaseSpace) -> tuple[int, ...]:
    """Sorted cycle lengths."""
    return tuple(sorted(len(c) for c in ps.cycles))


def cycle_summary(ps: PhaseSpace) -> dict[int, int]:
    """``{cycle length: number of cycles}``."""
    return dict(sorted(Counter(len(c) for c in ps.cycles).items()))


# ---------------------------------------------------------------------------
# equivalences

def _phase(x, max_states=DEFAULT_MAX_STATES) -> PhaseSpace:
    return x if isinstance(x, PhaseSpace) else phase_space(x, max_states)


def _check_comparable(a, b):
    if isinstance(a, SdsSystem) and isinstance(b, SdsSystem):
        if a.graph != b.graph or a.q != b.q:
            raise InvalidInput("systems must share the base graph and q")


def cycle_equivalent(a, b) -> bool:
    """Periodic parts isomorphic as digraphs, i.e. equal cycle-length multisets."""
    return cycle_multiset(_phase(a)) == cycle_multiset(_phase(b))


def functionally_equivalent(a, b) -> bool:
    _check_comparable(a, b)
    pa, pb = _phase(a), _phase(b)
    if pa.size != pb.size:
        raise InvalidInput(f"state spaces differ in size: {pa.size} vs {pb.size}")
    return bool(np.array_equal(pa.successor, pb.successor))


def functionally_cycle_equivalent(a, b) -> bool:
    _check_comparable(a, b)
    pa, pb = _phase(a), _phase(b)
    if pa.size != pb.size:
        raise InvalidInput(f"state spaces differ in size: {pa.size} vs {pb.size}")
    if not np.array_equal(pa.periodic_mask, pb.periodic_mask):
        return False
    per = pa.periodic
    return bool(np.array_equal(pa.successor[per], pb.successor[per]))


# ---------------------------------------------------------------------------
# words and symmetry actions

def shift_word(w: Sequence[int], s: int = 1) -> tuple[int, ...]:
    """Cyclic shift: ``shift_word(w, 1) == (w2, ..., wm, w1)``."""
    w = tuple(w)
    if not w:
        return w
    s %= len(w)
    return w[s:] + w[:s]


def reflect_word(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(tuple(w)))


def permute_word(gamma: VertexPermutation, w: Sequence[int]) -> tuple[int, ...]:
    return tuple(gamma(v) for v in w)


def state_permutation(gamma: VertexPermutation, q: int) -> np.ndarray:
    """Index map of ``y -> gamma . y`` where ``(gamma . y)[gamma(i)] = y[i]``."""
    n = gamma.n
    digits = all_digits(n, q)
    moved = np.empty_like(digits)
    for i in range(1, n + 1):
        moved[:, gamma(i) - 1] = digits[:, i - 1]
    return encode_digits(moved, q)


def reflection_inverts_on_periodic(sys: SdsSystem, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Whether the reversed word gives the two-sided inverse of the map on its periodic points.

    Holds when every local map is a bijection in its own coordinate (e.g.
    parity) and for the named threshold rules; arbitrary Boolean tables can
    violate it.
    """
    fwd = successor_table(sys, max_states=max_states)
    back = successor_table(sys, reflect_word(sys.word), max_states=max_states)
    per = np.flatnonzero(periodic_mask(fwd))
    return bool(np.array_equal(back[fwd[per]], per) and np.array_equal(fwd[back[per]], per))


def is_aut_invariant(sys: SdsSystem, autos: Sequence[VertexPermutation] | None = None,
                     max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Check ``gamma ∘ F_v == F_gamma(v) ∘ gamma`` for every automorphism and vertex."""
    _check_cap(sys, max_states)
    if autos is None:
        autos = automorphisms(sys.graph)
    local = {v: local_successor(sys, v, max_states) for v in sys.graph.vertices}
    for gamma in autos:
        perm = state_permutation(gamma, sys.q)
        for v in sys.graph.vertices:
            if not np.array_equal(perm[local[v]], local[gamma(v)][perm]):
                return False
    return True


# ---------------------------------------------------------------------------
# file formats

def rule_to_json(rule: RuleTable):
    return list(rule.table)


def system_to_dict(sys: SdsSystem) -> dict:
    return {
        "graph": graph_to_dict(sys.graph),
        "q": sys.q,
        "rules": [rule_to_json(r) for r in sys.rules],
        "word": list(sys.word),
    }


def _graph_from_system_entry(entry, base_dir) -> Graph:
    if isinstance(entry, dict) and "family" in entry:
        return named_family(str(entry["family"]))
    if isinstance(entry, dict) and "file" in entry:
        import os
        p = entry["file"]
        if base_dir is not None and not os.path.isabs(p):
            p = os.path.join(base_dir, p)
        return read_graph(p)
    if isinstance(entry, str):
        return named_family(entry)
    return graph_from_dict(entry, "system.graph")


def system_from_dict(data, base_dir=None) -> SdsSystem:
    """Parse the system JSON object.

    ``graph`` is an inline graph object, ``{"family": "circle:4"}`` or
    ``{"file": "path.json"}``. ``rules`` is a builtin name for every vertex
    or a per-vertex list whose entries are names or explicit output tables.
    """
    if not isinstance(data, dict):
        raise InvalidInput("system: expected a JSON object")
    for key in ("graph", "rules"):
        if key not in data:
            raise InvalidInput(f"system: missing key {key!r}")
    y = _graph_from_system_entry(data["graph"], base_dir)
    q = data.get("q", 2)
    if not isinstance(q, int) or q < 1:
        raise InvalidInput(f"system.q: expected a positive integer, got {q!r}")
    entries = data["rules"]
    if isinstance(entries, str):
        entries = [entries] * y.n
    if not isinstance(entries, list) or len(entries) != y.n:
        raise InvalidInput(f"system.rules: expected a name or a list of {y.n} entries")
    rules = []
    for v, entry in zip(y.vertices, entries):
        arity = y.degree(v) + 1
        where = f"system.rules[{v - 1}]"
        if isinstance(entry, str):
            try:
                rules.append(builtin_rule(entry, arity, q))
            except InvalidInput as exc:
                raise InvalidInput(f"{where}: {exc}") from None
        elif isinstance(entry, list):
            try:
                rules.append(RuleTable(arity, q, tuple(entry)))
            except (InvalidInput, TypeError, ValueError) as exc:
                raise InvalidInput(f"{where}: {exc}") from None
        else:
            raise InvalidInput(f"{where}: expected a rule name or a table")
    word = data.get("word", [])
    if not isinstance(word, list) or not all(isinstance(x, int) for x in word):
        raise InvalidInput("system.word: expected a list of integers")
    return SdsSystem(y, q, tuple(rules), tuple(word))


def system_to_json(sys: SdsSystem) -> str:
    return json.dumps(system_to_dict(sys))


def system_from_json(text: str, base_dir=None) -> SdsSystem:
    return system_from_dict(loads_json(text, "system"), base_dir)


def read_system(path) -> SdsSystem:
    import os
    with open(path) as fh:
        return system_from_json(fh.read(), os.path.dirname(os.path.abspath(path)))


def phase_space_edge_list(ps: PhaseSpace) -> str:
    return "".join(f"{i} -> {j}\n" for i, j in enumerate(ps.successor.tolist()))


def read_edge_list(text: str) -> np.ndarray:
    succ = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            a, b = (int(x) for x in line.split("->"))
        except ValueError:
            raise InvalidInput(f"edge list line {lineno}: expected 'i -> j', got {line!r}") from None
        succ[a] = b
    if sorted(succ) != list(range(len(succ))):
        raise InvalidInput("edge list does not define a successor for every state 0..N-1")
    return np.array([succ[i] for i in range(len(succ))], dtype=np.int64)


def phase_space_to_dot(ps: PhaseSpace, n: int | None = None, q: int | None = None) -> str:
    """Directed phase-space drawing; with ``n`` and ``q`` states are labeled by their values."""
    def label(i):
        if n is None or q is None:
            return str(i)
        return "".join(str(d) for d in decode_state(i, n, q))

    lines = ["digraph phase_space {"]
    for i in range(ps.size):
        style = ", style=bold" if ps.periodic_mask[i] else ""
        lines.append(f'  {i} [label="{label(i)}"{style}];')
    for i, j in enumerate(ps.successor.tolist()):
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cycle_summary_dict(ps: PhaseSpace) -> dict:
    return {"cycles": list(cycle_multiset(ps)), "periodic_count": ps.periodic_count}


def cycle_summary_json(ps: PhaseSpace) -> str:
    return json.dumps(cycle_summary_dict(ps))


def read_cycle_summary(text: str) -> dict:
    data = loads_json(text, "cycle summary")
    if not isinstance(data, dict) or "cycles" not in data or "periodic_count" not in data:
        raise InvalidInput("cycle summary: expected keys 'cycles' and 'periodic_count'")
    cycles = data["cycles"]
    if not isinstance(cycles, list) or not all(isinstance(c, int) and c > 0 for c in cycles):
        raise InvalidInput("cycle summary.cycles: expected a list of positive integers")
    if sum(cycles) != data["periodic_count"]:
        raise InvalidInput("cycle summary: cycle lengths do not add up to periodic_count")
    return {"cycles": sorted(cycles), "periodic_count": data["periodic_count"]}
