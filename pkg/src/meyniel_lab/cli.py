"""Command-line front end.

    meyniel-lab construct --family gamma3 --p 3 --out g3
    meyniel-lab check     --family gamma1 --n 200 --t 4
    meyniel-lab copnumber --family gamma3 --p 3
    meyniel-lab simulate  --family gamma1 --n 200 --cops 2 --cop-strategy random --robber-strategy evader
    meyniel-lab table     --format csv

Exit codes: 0 success (inconclusive solves included), 2 bad input,
3 I/O failure, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import fixtures
from .cayley import Graph, export_edges, from_graph6, parse_edge_list
from .certify import certify
from .constructions import FAMILIES, Instance, build_instance
from .copgame import exact_cop_number, k_cop_win, make_cop_strategy, make_robber_strategy, simulate
from .errors import DependencyError, InconsistencyError, PreconditionError
from .freeness import check_freeness

log = logging.getLogger("meyniel_lab")

FIXTURE_FAMILIES = ("path", "cycle", "complete", "petersen")
CSV_COLUMNS = ["family", "params", "n", "s_size", "delta", "lower", "lower_rule", "upper", "upper_rule",
               "exact", "target", "achieved", "satisfied"]
DEFAULT_TABLE = [
    ("gamma1", {"n": 200}), ("gamma1", {"n": 250}), ("gamma1", {"n": 1000}),
    ("gamma2", {"p": 3, "k": 2}), ("gamma2", {"p": 5, "k": 2}), ("gamma2", {"p": 7, "k": 2}),
    ("gamma2", {"p": 3, "k": 4}),
    ("gamma3", {"p": 3}), ("gamma3", {"p": 5}), ("gamma3", {"p": 7}),
    ("greedy", {"n": 175}), ("greedy", {"n": 245}), ("greedy", {"n": 1001}),
]


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    n: int | None = None
    p: int | None = None
    k: int | None = None
    ts: list[int] = field(default_factory=lambda: [3, 4])
    input: Path | None = None
    max_states: int = 50_000_000
    max_seconds: float = 300.0
    k_max: int | None = None
    cops: int = 1
    cop_strategy: str = "random"
    robber_strategy: str = "evader"
    rounds: int = 1000
    seed: int = 0
    out: Path | None = None
    format: str | None = None
    threads: int = 1

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        cfg = cls(command=args.command)
        for name in ("family", "n", "p", "k", "input", "max_states", "max_seconds", "k_max", "cops",
                     "cop_strategy", "robber_strategy", "rounds", "seed", "out", "format"):
            value = getattr(args, name, None)
            if value is not None:
                setattr(cfg, name, value)
        if getattr(args, "t", None):
            cfg.ts = sorted(set(args.t))
        cfg.threads = int(os.environ.get("MEYNIEL_LAB_THREADS", "1") or 1)
        if cfg.command != "table":
            if cfg.family == "file":
                cfg.family = None
            if (cfg.family is None) == (cfg.input is None):
                raise PreconditionError("give exactly one input source: --family or --input")
        return cfg


# -- graph loading ---------------------------------------------------------------


@dataclass
class Loaded:
    graph: Graph
    family: str | None
    params: dict
    instance: Instance | None = None


def load(cfg: RunConfig) -> Loaded:
    if cfg.input is not None:
        data = cfg.input.read_bytes()
        if cfg.input.suffix == ".g6":
            graph = from_graph6(data)
        else:
            graph = parse_edge_list(data, n=cfg.n)
        graph.name = cfg.input.name
        return Loaded(graph, "file", {"input": cfg.input.name})
    fam = cfg.family
    if fam in FIXTURE_FAMILIES:
        if fam == "petersen":
            graph = fixtures.petersen()
            params = {}
        else:
            if cfg.n is None:
                raise PreconditionError(f"family {fam} needs --n")
            graph = getattr(fixtures, fam)(cfg.n)
            params = {"n": cfg.n}
        return Loaded(graph, fam, params)
    inst = build_instance(fam, n=cfg.n, p=cfg.p, k=cfg.k)
    return Loaded(inst.graph, inst.family, inst.params, inst)


def _graph_block(loaded: Loaded) -> dict:
    g = loaded.graph
    return {"family": loaded.family, "params": loaded.params, "n": g.n, "delta": g.min_degree}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _emit(cfg: RunConfig, text: str | bytes, suffix: str = "") -> None:
    if cfg.out is None:
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
            sys.stdout.flush()
        else:
            sys.stdout.write(text)
        return
    path = Path(str(cfg.out) + suffix)
    if isinstance(text, bytes):
        path.write_bytes(text)
    else:
        path.write_text(text)


# -- commands ----------------------------------------------------------------------


def cmd_construct(cfg: RunConfig) -> int:
    loaded = load(cfg)
    fmt = cfg.format or "edges"
    if loaded.instance is not None:
        meta = loaded.instance.metadata()
    else:
        meta = {"family": loaded.family, "params": loaded.params, "n": loaded.graph.n, "s_size": None,
                "generators": None}
    meta["delta"] = loaded.graph.min_degree
    meta["connected"] = loaded.graph.is_connected()
    if cfg.out is None:
        if fmt == "json":
            _emit(cfg, _dump(meta))
        else:
            _emit(cfg, export_edges(loaded.graph, "graph6" if fmt == "graph6" else "edge-list"))
            sys.stderr.write(json.dumps(meta) + "\n")
        return 0
    if fmt in ("edges", "json"):
        _emit(cfg, export_edges(loaded.graph, "edge-list"), ".edges")
    if fmt == "graph6":
        _emit(cfg, export_edges(loaded.graph, "graph6"), ".g6")
    _emit(cfg, _dump(meta), ".json")
    return 0


def cmd_check(cfg: RunConfig) -> int:
    loaded = load(cfg)
    report = check_freeness(loaded.graph, ts=cfg.ts)
    out = {"graph": _graph_block(loaded), "connected": loaded.graph.is_connected(), **report.to_json()}
    _emit(cfg, _dump(out))
    return 0


def _certificate(loaded: Loaded, cfg: RunConfig, solve: bool):
    graph = loaded.graph
    report = check_freeness(graph, ts=cfg.ts)
    cert = certify(graph, report, family=loaded.family, params=loaded.params)
    result = None
    if solve and graph.is_connected() and (cfg.k_max is None or cfg.k_max > 0):
        upper = cert.upper.value if cert.upper else None
        result = exact_cop_number(graph, k_max=cfg.k_max, max_states=cfg.max_states,
                                  max_seconds=cfg.max_seconds, lower=1, upper=upper)
        cert = certify(graph, report, result, family=loaded.family, params=loaded.params)
    return cert


def cmd_copnumber(cfg: RunConfig) -> int:
    loaded = load(cfg)
    cert = _certificate(loaded, cfg, solve=True)
    _emit(cfg, _dump(cert.to_json()))
    return 0


def cmd_simulate(cfg: RunConfig) -> int:
    loaded = load(cfg)
    graph = loaded.graph
    solved = None
    if "optimal" in (cfg.cop_strategy, cfg.robber_strategy):
        outcome = k_cop_win(graph, cfg.cops, max_states=cfg.max_states, max_seconds=cfg.max_seconds)
        if outcome.inconclusive:
            raise DependencyError(f"optimal strategy needs a completed solve: {outcome.reason}")
        solved = outcome.strategy
    cops = make_cop_strategy(cfg.cop_strategy, solved)
    robber = make_robber_strategy(cfg.robber_strategy, solved)
    transcript = simulate(graph, cfg.cops, cops, robber, cfg.rounds, seed=cfg.seed)
    _emit(cfg, transcript.to_jsonl())
    verdict = "survived" if transcript.survived else f"captured at round {transcript.captured_at}"
    sys.stderr.write(f"{verdict} ({transcript.rounds_played} rounds)\n")
    return 0


def _params_str(params: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in params.items())


def table_row(family: str, params: dict, ts: list[int], k_max: int | None, max_states: int,
              max_seconds: float) -> dict:
    inst = build_instance(family, **params)
    loaded = Loaded(inst.graph, inst.family, inst.params, inst)
    cfg = RunConfig("table", ts=ts, k_max=k_max, max_states=max_states, max_seconds=max_seconds)
    cert = _certificate(loaded, cfg, solve=k_max is not None)
    theorem = cert.theorem or {}
    return {
        "family": family,
        "params": _params_str(params),
        "n": cert.n,
        "s_size": cert.s_size,
        "delta": cert.delta,
        "lower": cert.lower.value,
        "lower_rule": cert.lower.rule,
        "upper": cert.upper.value if cert.upper else None,
        "upper_rule": cert.upper.rule if cert.upper else None,
        "exact": cert.exact,
        "target": round(theorem.get("target_value"), 4) if theorem.get("target_value") is not None else None,
        "achieved": theorem.get("achieved"),
        "satisfied": theorem.get("satisfied"),
    }


def cmd_table(cfg: RunConfig) -> int:
    if cfg.family is not None:
        params = {k: v for k, v in (("n", cfg.n), ("p", cfg.p), ("k", cfg.k)) if v is not None}
        jobs = [(cfg.family, params)]
    else:
        jobs = DEFAULT_TABLE
    args = [(fam, params, cfg.ts, cfg.k_max, cfg.max_states, cfg.max_seconds) for fam, params in jobs]
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(table_row, *zip(*args)))
    else:
        rows = [table_row(*a) for a in args]
    if (cfg.format or "csv") == "json":
        _emit(cfg, _dump(rows))
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if v is None else v for k, v in row.items()})
        _emit(cfg, buf.getvalue())
    return 0


COMMANDS = {
    "construct": cmd_construct,
    "check": cmd_check,
    "copnumber": cmd_copnumber,
    "simulate": cmd_simulate,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meyniel-lab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", choices=FAMILIES + FIXTURE_FAMILIES + ("file",))
        p.add_argument("--n", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--t", type=int, action="append", help="K_{2,t} sizes to test (repeatable)")
        p.add_argument("--input", type=Path, help="edge-list file (or .g6)")
        p.add_argument("--max-states", type=int)
        p.add_argument("--max-seconds", type=float)
        p.add_argument("--k-max", type=int)
        p.add_argument("--cops", type=int)
        p.add_argument("--cop-strategy")
        p.add_argument("--robber-strategy")
        p.add_argument("--rounds", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", type=Path)
        p.add_argument("--format", choices=("edges", "graph6", "json", "csv"))
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[cfg.command](cfg)
    except PreconditionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return 3
    except InconsistencyError as exc:
        sys.stderr.write(f"internal inconsistency: {exc}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
