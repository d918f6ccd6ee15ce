"""Reproducible checks of the published constants and structural theorems.

Each ``check_*`` function returns a :class:`CheckResult`; ``run_all`` runs
the whole battery. Randomized checks draw from ``numpy.random.default_rng``
seeded by the caller, so a run is deterministic given its seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations
from math import factorial

import numpy as np

from . import graph_core as gc
from .orientations import (
    alpha,
    circ2_closed_forms,
    circ2_kappas,
    circ2_recurrence,
    classify,
    delta_from_kappa,
    kappa_recursive,
    tutte,
    unique_source_representatives,
    update_graph_components,
)
from .sds_engine import (
    SdsSystem,
    apply_parallel,
    apply_sds,
    cycle_multiset,
    phase_space,
    phase_space_from_successor,
    reflect_word,
    shift_word,
    successor_table,
)
from .symmetry import burnside_alpha_bar, delta_bar, kappa_bar, orbit_count_acyc


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


class _Checker:
    def __init__(self, name):
        self.name = name
        self.failures: list[str] = []
        self.count = 0

    def expect(self, cond, msg):
        self.count += 1
        if not cond:
            self.failures.append(msg)

    def result(self, summary) -> CheckResult:
        if self.failures:
            shown = "; ".join(self.failures[:3])
            more = f" (+{len(self.failures) - 3} more)" if len(self.failures) > 3 else ""
            return CheckResult(self.name, False, f"{len(self.failures)}/{self.count} failed: {shown}{more}")
        return CheckResult(self.name, True, f"{self.count} assertions; {summary}")


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _rng(seed, salt):
    return np.random.default_rng([seed, salt])


def _random_word(rng, n, max_len=8):
    return tuple(int(x) for x in rng.integers(1, n + 1, size=int(rng.integers(1, max_len + 1))))


def _random_perm(rng, n):
    return tuple(int(x) + 1 for x in rng.permutation(n))


# ---------------------------------------------------------------------------

@_timed
def check_circ4(seed=0):
    """Criterion 1: alpha, kappa, delta and update-graph components of Circ_4."""
    c = _Checker("1 Circ4 constants")
    y = gc.circle(4)
    cl = classify(y)
    for label, got, want in [("alpha", cl.alpha, 14), ("kappa", cl.kappa, 3), ("delta", cl.delta, 2),
                             ("U(Circ4) components", update_graph_components(y), 14)]:
        c.expect(got == want, f"{label}={got}, expected {want}")
    return c.result("alpha=14 kappa=3 delta=2 |U|=14")


@_timed
def check_q23(seed=0, quick=False):
    """Criterion 2: the binary 3-cube ledger; kappa by three independent routes."""
    c = _Checker("2 Q_2^3 ledger")
    y = gc.hypercube(3)
    cl = classify(y)
    c.expect(cl.alpha == 1862, f"alpha={cl.alpha}")
    c.expect(cl.kappa == 133, f"kappa(click BFS)={cl.kappa}")
    c.expect(kappa_recursive(y) == 133, "kappa(deletion-contraction) != 133")
    c.expect(tutte(y, 1, 0) == 133, "T(Q,1,0) != 133")
    c.expect(cl.delta == 67, f"delta={cl.delta}")
    c.expect(delta_from_kappa(y) == 67, "delta from kappa != 67")
    summary = "alpha=1862 kappa=133 (x3) delta=67"
    if not quick:
        autos = gc.automorphisms(y)
        c.expect(len(autos) == 48, f"|Aut|={len(autos)}")
        c.expect(orbit_count_acyc(y, autos) == 54, "alpha_bar (orbits) != 54")
        c.expect(burnside_alpha_bar(y, autos) == 54, "alpha_bar (Burnside) != 54")
        kb, db = kappa_bar(y, autos, cl), delta_bar(y, autos, cl)
        c.expect(kb == 8, f"kappa_bar={kb}")
        c.expect(db == 8, f"delta_bar={db}")
        summary += " |Aut|=48 alpha_bar=54 kappa_bar=delta_bar=8"
    return c.result(summary)


@_timed
def check_complete_and_circles(seed=0):
    """Criterion 3: kappa(K_n) = (n-1)!, alpha(K_n) = n!, kappa(Circ_n) = n-1."""
    c = _Checker("3 K_n and Circ_n")
    for n in range(2, 7):
        y = gc.complete(n)
        cl = classify(y)
        c.expect(cl.kappa == factorial(n - 1), f"kappa(K{n}) classify={cl.kappa}")
        c.expect(kappa_recursive(y) == factorial(n - 1), f"kappa(K{n}) recursion")
        c.expect(alpha(y) == factorial(n), f"alpha(K{n})={alpha(y)}")
    for n in range(3, 10):
        y = gc.circle(n)
        c.expect(classify(y).kappa == n - 1, f"kappa(Circ{n}) classify")
        c.expect(kappa_recursive(y) == n - 1, f"kappa(Circ{n}) recursion")
    return c.result("K_2..K_6, Circ_3..Circ_9")


@_timed
def check_circ2(seed=0):
    """Criterion 4: radius-2 circulant seeds, closed forms against the actual graphs."""
    c = _Checker("4 Circ_{n,2} family")
    for n, g_want, c_want in [(5, 24, 18), (6, 64, 46)]:
        for label, pair in [("closed", circ2_closed_forms(n)), ("recurrence", circ2_recurrence(n)),
                            ("graph", circ2_kappas(n))]:
            c.expect(pair == (g_want, c_want), f"n={n} {label}: (g,c)={pair}")
    for n in range(5, 11):
        closed, graph = circ2_closed_forms(n), circ2_kappas(n)
        c.expect(closed == graph, f"n={n}: closed {closed} vs graph {graph}")
        c.expect(circ2_recurrence(n) == closed, f"n={n}: recurrence disagrees")
    return c.result("c5=18 c6=46 g5=24 g6=64; n=5..10 agree")


@_timed
def check_star_nor(seed=0):
    """Criterion 5: Nor over Star_n has one 3-cycle and 2^(n-1)-1 two-cycles."""
    c = _Checker("5 Star_n nor cycles")
    rng = _rng(seed, 5)
    for n in range(2, 6):
        y = gc.star(n)
        base = SdsSystem.uniform(y, "nor")
        want = tuple(sorted((3,) + (2,) * (2 ** (n - 1) - 1)))
        for _ in range(10):
            w = _random_perm(rng, y.n)
            got = cycle_multiset(phase_space(base.with_word(w)))
            c.expect(got == want, f"Star{n} word {w}: {got}")
    return c.result("n=2..5, 10 words each")


@_timed
def check_pointwise(seed=0):
    """Criterion 6: the worked Circ_4 nor example."""
    c = _Checker("6 pointwise Circ4 nor")
    sys = SdsSystem.uniform(gc.circle(4), "nor", (1, 2, 3, 4))
    got = apply_sds(sys, (0, 0, 0, 0)).values
    c.expect(got == (1, 0, 1, 0), f"sequential gives {got}")
    par = apply_parallel(sys, (0, 0, 0, 0)).values
    c.expect(par == (1, 1, 1, 1), f"parallel gives {par}")
    return c.result("(0,0,0,0) -> (1,0,1,0) sequential, (1,1,1,1) parallel")


def _random_small_system(rng, q_choices, max_n=5, max_len=8):
    n = int(rng.integers(1, max_n + 1))
    y = gc.random_graph(n, float(rng.uniform(0.2, 0.9)), rng)
    q = int(rng.choice(q_choices))
    return SdsSystem.random(y, q, _random_word(rng, n, max_len), rng)


@_timed
def check_shift_theorem(seed=0, trials=200):
    """Criterion 7: cyclic shifts of the word preserve the cycle structure."""
    c = _Checker("7 shift theorem")
    rng = _rng(seed, 7)
    for t in range(trials):
        sys = _random_small_system(rng, (2, 3))
        ref = phase_space(sys)
        ref_ms, ref_per = cycle_multiset(ref), ref.periodic_count
        for s in range(1, len(sys.word)):
            ps = phase_space(sys.with_word(shift_word(sys.word, s)))
            c.expect(cycle_multiset(ps) == ref_ms and ps.periodic_count == ref_per,
                     f"trial {t}: shift {s} of {sys.word} changes cycles")
    return c.result(f"{trials} random systems, all shifts")


REFLECTION_RULES = ("nor", "nand", "or", "and", "majority", "parity", "nparity")


def random_reflection_system(rng, max_n=5, max_len=8) -> SdsSystem:
    """Random Boolean system whose local maps satisfy the reflection premise.

    Either one named threshold/parity rule on every vertex, or independent
    random tables that are bijective in the updated coordinate. Arbitrary
    Boolean tables are excluded: they can break the inverse relation.
    """
    n = int(rng.integers(1, max_n + 1))
    y = gc.random_graph(n, float(rng.uniform(0.2, 0.9)), rng)
    w = _random_word(rng, n, max_len)
    if rng.random() < 0.5:
        return SdsSystem.uniform(y, str(rng.choice(REFLECTION_RULES)), w)
    return SdsSystem.random_self_bijective(y, 2, w, rng)


@_timed
def check_reflection(seed=0, trials=100):
    """Criterion 8: over F_2 the reversed word inverts the map on its periodic points."""
    c = _Checker("8 reflection inverse (q=2)")
    rng = _rng(seed, 8)
    for t in range(trials):
        sys = random_reflection_system(rng)
        fwd = successor_table(sys)
        back = successor_table(sys, reflect_word(sys.word))
        ps = phase_space_from_successor(fwd)
        per = ps.periodic
        c.expect(np.array_equal(back[fwd[per]], per), f"trial {t}: rho after w not identity on Per")
        c.expect(np.array_equal(fwd[back[per]], per), f"trial {t}: w after rho not identity on Per")
        c.expect(cycle_multiset(ps) == cycle_multiset(phase_space_from_successor(back)),
                 f"trial {t}: cycle multisets differ")
    return c.result(f"{trials} random Boolean systems (named rules / self-bijective tables)")


@_timed
def check_structure(seed=0, trials=100):
    """Criterion 9: parity of kappa, delta from kappa, bridges, vertex join, unique sources."""
    c = _Checker("9 structural identities")
    rng = _rng(seed, 9)
    for t in range(trials):
        n = int(rng.integers(2, 8))
        y = gc.random_connected_graph(n, rng)
        cl = classify(y)
        bip = gc.is_bipartite(y)[0]
        c.expect((cl.kappa % 2 == 1) == bip, f"trial {t}: kappa={cl.kappa} bipartite={bip}")
        c.expect(delta_from_kappa(y, cl.kappa) == cl.delta, f"trial {t}: delta formula vs classify")
        c.expect(cl.delta in (cl.kappa // 2, (cl.kappa + 1) // 2), f"trial {t}: delta out of range")

        a = gc.random_connected_graph(int(rng.integers(1, 5)), rng)
        b = gc.random_connected_graph(int(rng.integers(1, 5)), rng)
        union = gc.disjoint_union(a, b)
        u, v = int(rng.integers(1, a.n + 1)), a.n + int(rng.integers(1, b.n + 1))
        bridged = gc.add_edge(union, (u, v))
        ka, kb = kappa_recursive(a), kappa_recursive(b)
        c.expect(classify(union).kappa == ka * kb, f"trial {t}: disjoint union kappa")
        c.expect(classify(bridged).kappa == ka * kb, f"trial {t}: bridged kappa")

        if y.m:
            c.expect(kappa_recursive(gc.vertex_join(y)) == cl.alpha, f"trial {t}: kappa(Y+v) != alpha(Y)")

        root = int(rng.integers(1, n + 1))
        reps = unique_source_representatives(y, root)
        classes = {cl.class_of(o) for o in reps}
        c.expect(len(reps) == cl.kappa and len(classes) == cl.kappa,
                 f"trial {t}: {len(reps)} unique-source orientations over {len(classes)} classes, kappa={cl.kappa}")
    return c.result(f"{trials} random connected graphs")


@_timed
def check_oracles(seed=0, trials=100):
    """Criterion 10: click BFS, deletion-contraction and Tutte agree; Burnside = orbit count."""
    c = _Checker("10 oracle agreement")
    rng = _rng(seed, 10)
    for t in range(trials):
        n = int(rng.integers(1, 8))
        y = gc.random_graph(n, float(rng.uniform(0.2, 0.9)), rng, max_edges=14)
        cl = classify(y)
        k_rec, k_tutte, a_tutte = kappa_recursive(y), tutte(y, 1, 0), tutte(y, 2, 0)
        c.expect(cl.kappa == k_rec == k_tutte, f"trial {t}: kappa {cl.kappa}/{k_rec}/{k_tutte}")
        c.expect(cl.alpha == a_tutte, f"trial {t}: alpha {cl.alpha} vs T(2,0)={a_tutte}")
        autos = gc.automorphisms(y)
        c.expect(burnside_alpha_bar(y, autos) == orbit_count_acyc(y, autos), f"trial {t}: alpha_bar routes")
    return c.result(f"{trials} random graphs, n<=7, m<=14")


@_timed
def check_forests(seed=0, trials=50):
    """Criterion 11: over trees every permutation word gives the same cycle structure."""
    c = _Checker("11 forest theorem")
    rng = _rng(seed, 11)
    for t in range(trials):
        n = int(rng.integers(1, 7))
        y = gc.random_tree(n, rng)
        sys = SdsSystem.random(y, 2, tuple(y.vertices), rng)
        par = SdsSystem.uniform(y, "parity", tuple(y.vertices))
        ref = cycle_multiset(phase_space(sys))
        par_ref = cycle_multiset(phase_space(par))
        for pi in permutations(y.vertices):
            got = cycle_multiset(phase_space(sys.with_word(pi)))
            c.expect(got == ref, f"trial {t}: word {pi} gives {got}")
            pps = phase_space(par.with_word(pi))
            c.expect(cycle_multiset(pps) == par_ref and pps.periodic_count == 2 ** n,
                     f"trial {t}: parity word {pi}")
    return c.result(f"{trials} random trees, every permutation word")


CHECKS = [
    check_circ4,
    check_q23,
    check_complete_and_circles,
    check_circ2,
    check_star_nor,
    check_pointwise,
    check_shift_theorem,
    check_reflection,
    check_structure,
    check_oracles,
    check_forests,
]


def run_all(seed: int = 0, quick: bool = False) -> list[CheckResult]:
    results = []
    for fn in CHECKS:
        if fn is check_q23:
            results.append(fn(seed, quick=quick))
        else:
            results.append(fn(seed))
    return results
