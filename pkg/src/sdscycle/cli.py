"""Command-line interface: ``sdscycle <command> [options]``.

Exit codes: 0 success, 1 verification failure or method disagreement,
2 invalid input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import graph_core as gc
from . import orientations as ori
from . import sds_engine as sds
from . import symmetry as sym
from .errors import CapExceeded, InvalidInput

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

COMMANDS = ("invariants", "phase-space", "cycle-check", "classify", "verify", "export")


class Disagreement(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    graph_file: str | None = None
    system_file: str | None = None
    system_file2: str | None = None
    rule: str = "nor"
    q: int = 2
    word: str | None = None
    word2: str | None = None
    perm: str | None = None
    seed: int = 0
    max_states: int = sds.DEFAULT_MAX_STATES
    max_edges_enum: int = ori.DEFAULT_MAX_EDGES_ENUM
    max_aut_n: int = gc.DEFAULT_MAX_AUT_N
    output: str | None = None
    fmt: str = "text"
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidInput(f"unknown command {self.command!r}")
        for name in ("max_states", "max_edges_enum", "max_aut_n"):
            if getattr(self, name) <= 0:
                raise InvalidInput(f"--{name.replace('_', '-')} must be positive")

    # -- resolution helpers -------------------------------------------------

    def graph(self) -> gc.Graph:
        if self.family and self.graph_file:
            raise InvalidInput("give either --family or --graph, not both")
        if self.family:
            return gc.named_family(self.family)
        if self.graph_file:
            return gc.read_graph(self.graph_file)
        if self.system_file:
            return sds.read_system(self.system_file).graph
        raise InvalidInput("no graph given: use --family name:param or --graph file.json")

    def parse_word(self, text: str | None, y: gc.Graph, rng) -> tuple[int, ...]:
        if self.perm == "random" and text is None:
            return tuple(int(x) + 1 for x in rng.permutation(y.n))
        if text is None:
            return tuple(y.vertices)
        try:
            return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
        except ValueError:
            raise InvalidInput(f"bad word {text!r}: expected comma-separated vertices") from None

    def system(self, second: bool = False) -> sds.SdsSystem:
        rng = np.random.default_rng(self.seed + (1 if second else 0))
        path = self.system_file2 if second else self.system_file
        word_text = self.word2 if second else self.word
        if path:
            base = sds.read_system(path)
            if word_text is None and self.perm is None:
                return base
            return base.with_word(self.parse_word(word_text, base.graph, rng))
        if second and self.system_file:
            base = sds.read_system(self.system_file)
            return base.with_word(self.parse_word(word_text, base.graph, rng))
        y = self.graph()
        return sds.SdsSystem.uniform(y, self.rule, self.parse_word(word_text, y, rng), self.q)


def _emit(cfg: RunConfig, text: str, out=None):
    out = out or sys.stdout
    if cfg.output and cfg.command != "phase-space":
        with open(cfg.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"), file=out)


# ---------------------------------------------------------------------------
# commands

def cmd_invariants(cfg: RunConfig, out=None) -> dict:
    y = cfg.graph()
    cl = ori.classify(y, cfg.max_edges_enum)
    k_rec = ori.kappa_recursive(y)
    if k_rec != cl.kappa:
        raise Disagreement(f"kappa disagreement: click classes {cl.kappa}, deletion-contraction {k_rec}")
    report = {"n": y.n, "m": y.m, "alpha": cl.alpha, "kappa": cl.kappa, "delta": cl.delta}
    if gc.is_connected(y):
        d = ori.delta_from_kappa(y, k_rec)
        if d != cl.delta:
            raise Disagreement(f"delta disagreement: classes {cl.delta}, formula {d}")
    if cfg.extra.get("symmetry"):
        autos = gc.automorphisms(y, cfg.max_aut_n)
        report.update({
            "aut_order": len(autos),
            "alpha_bar": sym.orbit_count_acyc(y, autos, cfg.max_edges_enum),
            "kappa_bar": sym.kappa_bar(y, autos, cl),
            "delta_bar": sym.delta_bar(y, autos, cl),
        })
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(report), out)
    else:
        _emit(cfg, " ".join(f"{k}={v}" for k, v in report.items()), out)
    return report


def cmd_phase_space(cfg: RunConfig, out=None) -> dict:
    system = cfg.system()
    ps = sds.phase_space(system, cfg.max_states)
    summary = sds.cycle_summary_dict(ps)
    if cfg.output:
        prefix = cfg.output
        d = os.path.dirname(prefix)
        if d:
            os.makedirs(d, exist_ok=True)
        with open(prefix + ".edges", "w") as fh:
            fh.write(sds.phase_space_edge_list(ps))
        with open(prefix + ".cycles.json", "w") as fh:
            fh.write(sds.cycle_summary_json(ps) + "\n")
        if cfg.extra.get("dot"):
            with open(prefix + ".dot", "w") as fh:
                fh.write(sds.phase_space_to_dot(ps, system.n, system.q))
    counts = sds.cycle_summary(ps)
    if cfg.fmt == "json":
        print(json.dumps(summary), file=out or sys.stdout)
    else:
        desc = ", ".join(f"{c} x {length}-cycle" for length, c in sorted(counts.items(), reverse=True))
        print(f"states={ps.size} periodic={ps.periodic_count} cycles: {desc}", file=out or sys.stdout)
    return {"summary": summary, "counts": counts}


def cmd_cycle_check(cfg: RunConfig, out=None) -> dict:
    a = cfg.system()
    b = cfg.system(second=True)
    if a.graph != b.graph or a.q != b.q:
        raise InvalidInput("the two systems must share the base graph and q")
    pa, pb = sds.phase_space(a, cfg.max_states), sds.phase_space(b, cfg.max_states)
    verdict = {
        "word1": list(a.word),
        "word2": list(b.word),
        "functional": sds.functionally_equivalent(pa, pb),
        "functional_cycle": sds.functionally_cycle_equivalent(pa, pb),
        "cycle": sds.cycle_equivalent(pa, pb),
    }
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(verdict), out)
    else:
        yn = lambda b: "yes" if b else "no"
        _emit(cfg, "\n".join([
            f"word 1: {','.join(map(str, a.word))}",
            f"word 2: {','.join(map(str, b.word))}",
            f"functional-equivalent: {yn(verdict['functional'])}",
            f"functional-cycle-equivalent: {yn(verdict['functional_cycle'])}",
            f"cycle-equivalent: {yn(verdict['cycle'])}",
        ]), out)
    return verdict


def cmd_classify(cfg: RunConfig, out=None) -> dict:
    y = cfg.graph()
    cl = ori.classify(y, cfg.max_edges_enum)
    root = cfg.extra.get("representatives")
    reps = ori.unique_source_representatives(y, root, cfg.max_edges_enum) if root else None
    data = cl.to_dict(reps)
    _emit(cfg, json.dumps(data), out)
    return data


def cmd_export(cfg: RunConfig, out=None) -> str:
    what = cfg.extra.get("what", "graph")
    fmt = cfg.fmt if cfg.fmt != "text" else "dot"
    if what == "graph":
        y = cfg.graph()
        text = gc.graph_to_dot(y) if fmt == "dot" else gc.graph_to_json(y)
    elif what == "orientation":
        y = cfg.graph()
        if cfg.extra.get("bits"):
            o = ori.Orientation.from_bitstring(y, cfg.extra["bits"])
        else:
            rng = np.random.default_rng(cfg.seed)
            o = ori.orientation_of_permutation(y, cfg.parse_word(cfg.word, y, rng))
        text = o.to_dot() if fmt == "dot" else json.dumps({"bits": o.bitstring(), "arcs": o.arcs()})
    elif what == "system":
        text = sds.system_to_json(cfg.system())
    elif what == "phase-space":
        system = cfg.system()
        ps = sds.phase_space(system, cfg.max_states)
        if fmt == "dot":
            text = sds.phase_space_to_dot(ps, system.n, system.q)
        elif fmt == "edges":
            text = sds.phase_space_edge_list(ps)
        else:
            text = sds.cycle_summary_json(ps)
    else:
        raise InvalidInput(f"unknown export target {what!r}")
    _emit(cfg, text, out)
    return text


def cmd_verify(cfg: RunConfig, out=None) -> int:
    from .verification import run_all
    out = out or sys.stdout
    results = run_all(seed=cfg.seed, quick=bool(cfg.extra.get("quick")))
    for r in results:
        print(r.line(), file=out)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdscycle", description="Sequential dynamical systems and update-order equivalence.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True, system=False):
        if graph:
            sp.add_argument("--family", help="graph family, e.g. circle:4, hypercube:3, star:3")
            sp.add_argument("--graph", dest="graph_file", help="graph JSON file")
        if system:
            sp.add_argument("--system", dest="system_file", help="system JSON file")
            sp.add_argument("--rule", default="nor", help="builtin rule for every vertex (default nor)")
            sp.add_argument("--q", type=int, default=2)
            sp.add_argument("--word", help="update word, comma separated (default 1,2,...,n)")
            sp.add_argument("--perm", choices=["random"], help="draw a random permutation word")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-states", type=int, default=sds.DEFAULT_MAX_STATES)
        sp.add_argument("--max-edges-enum", type=int, default=ori.DEFAULT_MAX_EDGES_ENUM)
        sp.add_argument("--max-aut-n", type=int, default=gc.DEFAULT_MAX_AUT_N)
        sp.add_argument("--output", "-o", help="output path (prefix for phase-space)")
        sp.add_argument("--format", dest="fmt", default="text", choices=["text", "json", "dot", "edges"])

    sp = sub.add_parser("invariants", help="alpha, kappa, delta (and symmetry-reduced counts)")
    common(sp)
    sp.add_argument("--symmetry", action="store_true", help="also report |Aut|, alpha_bar, kappa_bar, delta_bar")

    sp = sub.add_parser("phase-space", help="build a phase space and summarize its cycles")
    common(sp, system=True)
    sp.add_argument("--dot", action="store_true", help="also write PREFIX.dot")

    sp = sub.add_parser("cycle-check", help="compare two update words on one system")
    common(sp, system=True)
    sp.add_argument("--system2", dest="system_file2", help="second system JSON file")
    sp.add_argument("--word2", help="second update word")

    sp = sub.add_parser("classify", help="click-class summary as JSON")
    common(sp)
    sp.add_argument("--representatives", type=int, metavar="V", help="include unique-source orientations at V")

    sp = sub.add_parser("verify", help="run the reproduction checks")
    common(sp, graph=False)
    sp.add_argument("--quick", action="store_true", help="skip the Q_2^3 symmetry counts")

    sp = sub.add_parser("export", help="DOT/JSON export of graphs, orientations, systems, phase spaces")
    common(sp, system=True)
    sp.add_argument("what", choices=["graph", "orientation", "system", "phase-space"])
    sp.add_argument("--bits", help="orientation as a 0/1 string over the canonical edge order")
    return p


_EXTRA_KEYS = ("symmetry", "dot", "representatives", "quick", "what", "bits")


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = vars(ns).copy()
    extra = {k: d.pop(k) for k in _EXTRA_KEYS if k in d}
    known = {k: v for k, v in d.items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(extra=extra, **known)


HANDLERS = {
    "invariants": cmd_invariants,
    "phase-space": cmd_phase_space,
    "cycle-check": cmd_cycle_check,
    "classify": cmd_classify,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        HANDLERS[cfg.command](cfg)
        return EXIT_OK
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvalidInput, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Disagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
