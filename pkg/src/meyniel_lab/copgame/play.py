"""Domination, the evading robber, strategies, and match simulation."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable

from ..cayley import Graph
from ..errors import AlreadyCapturedError, DependencyError, DomainError, StrategyFault
from .solver import SolvedGame


@dataclass(frozen=True)
class GameState:
    cops: tuple[int, ...]
    robber: int | None
    turn: str  # "cops" or "robber"

    def __post_init__(self):
        object.__setattr__(self, "cops", tuple(sorted(self.cops)))

    @property
    def captured(self) -> bool:
        return self.robber in self.cops


def dominated(graph: Graph, cops: Iterable[int]) -> set[int]:
    """Union of the closed neighbourhoods of the cop positions."""
    mask = _dominated_mask(graph, cops)
    return {v for v in range(graph.n) if (mask >> v) & 1}


def _dominated_mask(graph: Graph, cops: Iterable[int]) -> int:
    masks = graph.closed_masks
    mask = 0
    for c in cops:
        mask |= masks[c]
    return mask


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def evading_move(graph: Graph, cops: Iterable[int], robber: int) -> int | None:
    """Least-rank vertex of N[robber] outside the dominated set, if any."""
    cops = tuple(cops)
    if robber in cops:
        raise AlreadyCapturedError(f"robber at {robber} already shares a vertex with a cop")
    free = graph.closed_masks[robber] & ~_dominated_mask(graph, cops)
    return _lowest_bit(free) if free else None


# -- strategies ------------------------------------------------------------------


class CopStrategy:
    name = "cops"

    def place(self, graph: Graph, k: int, rng: random.Random) -> tuple[int, ...]:
        return tuple(rng.randrange(graph.n) for _ in range(k))

    def move(self, graph: Graph, cops: tuple[int, ...], robber: int, rng: random.Random) -> tuple[int, ...]:
        raise NotImplementedError


class RobberStrategy:
    name = "robber"

    def place(self, graph: Graph, cops: tuple[int, ...], rng: random.Random) -> int:
        raise NotImplementedError

    def move(self, graph: Graph, cops: tuple[int, ...], robber: int, rng: random.Random) -> int:
        raise NotImplementedError


class StayCops(CopStrategy):
    name = "stay"

    def move(self, graph, cops, robber, rng):
        return cops


class RandomCops(CopStrategy):
    name = "random"

    def move(self, graph, cops, robber, rng):
        adj = graph.adj
        out = []
        for c in cops:
            i = rng.randrange(len(adj[c]) + 1)
            out.append(c if i == 0 else adj[c][i - 1])
        return tuple(out)


class GreedyDistanceCops(CopStrategy):
    """Each cop steps to the vertex of its closed neighbourhood nearest the robber."""

    name = "greedy-distance"

    def move(self, graph, cops, robber, rng):
        dist = graph.distances
        adj = graph.adj
        out = []
        for c in cops:
            best, best_d = c, dist[c][robber]
            for u in adj[c]:
                d = dist[u][robber]
                if d < best_d or (d == best_d and u < best):
                    best, best_d = u, d
            out.append(best)
        return tuple(out)


class OptimalCops(CopStrategy):
    name = "optimal"

    def __init__(self, solved: SolvedGame):
        self.solved = solved

    def place(self, graph, k, rng):
        if k != self.solved.k:
            raise DependencyError(f"solve was for k={self.solved.k}, not {k}")
        return self.solved.best_placement()

    def move(self, graph, cops, robber, rng):
        return self.solved.best_cop_move(cops, robber)


class StayRobber(RobberStrategy):
    name = "stay"

    def place(self, graph, cops, rng):
        free = ((1 << graph.n) - 1) & ~_dominated_mask(graph, cops)
        if free:
            return _lowest_bit(free)
        return next((v for v in range(graph.n) if v not in cops), 0)

    def move(self, graph, cops, robber, rng):
        return robber


class RandomRobber(RobberStrategy):
    name = "random"

    def place(self, graph, cops, rng):
        return rng.randrange(graph.n)

    def move(self, graph, cops, robber, rng):
        options = (robber,) + graph.adj[robber]
        return options[rng.randrange(len(options))]


def _farthest(graph: Graph, cops, options) -> int:
    dist = graph.distances
    best, best_d = None, -1
    for u in sorted(options):
        d = min(dist[c][u] for c in cops) if cops else 0
        if d > best_d:
            best, best_d = u, d
    return best


class GreedyDistanceRobber(RobberStrategy):
    name = "greedy-distance"

    def place(self, graph, cops, rng):
        return _farthest(graph, cops, range(graph.n))

    def move(self, graph, cops, robber, rng):
        return _farthest(graph, cops, (robber,) + graph.adj[robber])


class Evader(RobberStrategy):
    """Always stand outside every cop's closed neighbourhood.

    Falls back to the farthest safe-ish vertex when no undominated choice
    exists (which cannot happen against few enough cops on a K_{2,t}-free
    graph of large minimum degree).
    """

    name = "evader"

    def place(self, graph, cops, rng):
        free = ((1 << graph.n) - 1) & ~_dominated_mask(graph, cops)
        if free:
            return _lowest_bit(free)
        return _farthest(graph, cops, range(graph.n))

    def move(self, graph, cops, robber, rng):
        free = graph.closed_masks[robber] & ~_dominated_mask(graph, cops)
        if free:
            return _lowest_bit(free)
        return _farthest(graph, cops, (robber,) + graph.adj[robber])


class OptimalRobber(RobberStrategy):
    """Delays capture as long as possible; survives forever on robber wins."""

    name = "optimal"

    def __init__(self, solved: SolvedGame):
        self.solved = solved

    def place(self, graph, cops, rng):
        return self.solved.best_robber_placement(cops)

    def move(self, graph, cops, robber, rng):
        return self.solved.best_robber_move(cops, robber)


COP_STRATEGIES = {"random": RandomCops, "greedy-distance": GreedyDistanceCops, "stay": StayCops, "optimal": OptimalCops}
ROBBER_STRATEGIES = {
    "random": RandomRobber,
    "greedy-distance": GreedyDistanceRobber,
    "stay": StayRobber,
    "evader": Evader,
    "optimal": OptimalRobber,
}


def make_cop_strategy(name: str, solved: SolvedGame | None = None) -> CopStrategy:
    if name not in COP_STRATEGIES:
        raise DomainError(f"unknown cop strategy {name!r}; choose from {', '.join(COP_STRATEGIES)}")
    if name == "optimal":
        if solved is None:
            raise DependencyError("the optimal cop strategy needs a completed solve")
        return OptimalCops(solved)
    return COP_STRATEGIES[name]()


def make_robber_strategy(name: str, solved: SolvedGame | None = None) -> RobberStrategy:
    if name not in ROBBER_STRATEGIES:
        raise DomainError(f"unknown robber strategy {name!r}; choose from {', '.join(ROBBER_STRATEGIES)}")
    if name == "optimal":
        if solved is None:
            raise DependencyError("the optimal robber strategy needs a completed solve")
        return OptimalRobber(solved)
    return ROBBER_STRATEGIES[name]()


# -- simulation ----------------------------------------------------------------------


@dataclass
class Transcript:
    captured_at: int | None
    rounds_played: int
    records: list[dict] = field(default_factory=list)

    @property
    def survived(self) -> bool:
        return self.captured_at is None

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in self.records)


def simulate(graph: Graph, k: int, cop_strategy: CopStrategy, robber_strategy: RobberStrategy,
             max_rounds: int, seed: int = 0, record: bool = True) -> Transcript:
    """Play one match. A round is a cop move followed by a robber move;
    capture is checked after every move. Illegal moves raise StrategyFault."""
    if max_rounds < 1:
        raise DomainError("max_rounds must be >= 1")
    rng = random.Random(seed)
    masks = graph.closed_masks
    n = graph.n
    records: list[dict] = []
    log = records.append if record else None

    cops = tuple(cop_strategy.place(graph, k, rng))
    if len(cops) != k or any(not 0 <= c < n for c in cops):
        raise StrategyFault(cop_strategy.name, f"bad placement {cops}")
    if log:
        log({"round": 0, "mover": "cops", "move": "place", "cops": list(cops), "robber": None})
    robber = robber_strategy.place(graph, cops, rng)
    if not 0 <= robber < n:
        raise StrategyFault(robber_strategy.name, f"bad placement {robber}")
    if log:
        log({"round": 0, "mover": "robber", "move": "place", "cops": list(cops), "robber": robber})
    if robber in cops:
        return Transcript(0, 0, records)

    for rnd in range(1, max_rounds + 1):
        new = tuple(cop_strategy.move(graph, cops, robber, rng))
        if len(new) != k:
            raise StrategyFault(cop_strategy.name, f"returned {len(new)} cops, expected {k}")
        for old, c in zip(cops, new):
            if not (masks[old] >> c) & 1:
                raise StrategyFault(cop_strategy.name, f"cop cannot move {old} -> {c}")
        cops = new
        if log:
            log({"round": rnd, "mover": "cops", "move": list(cops), "cops": list(cops), "robber": robber})
        if robber in cops:
            return Transcript(rnd, rnd, records)
        nxt = robber_strategy.move(graph, cops, robber, rng)
        if not (masks[robber] >> nxt) & 1:
            raise StrategyFault(robber_strategy.name, f"robber cannot move {robber} -> {nxt}")
        robber = nxt
        if log:
            log({"round": rnd, "mover": "robber", "move": robber, "cops": list(cops), "robber": robber})
        if robber in cops:
            return Transcript(rnd, rnd, records)
    return Transcript(None, max_rounds, records)
