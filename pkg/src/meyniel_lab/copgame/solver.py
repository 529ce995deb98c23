"""Exact k-cop decision by backward induction.

Positions are held in dense boolean tensors of shape (n,)*k + (n,): one
axis per cop (ordered tuples, so the tensor is symmetric in the cop
axes) and a final robber axis. One sweep computes

    cop-to-move wins    K = capture | OR over joint cop moves of R
    robber-to-move wins R = capture | AND over robber moves of K

where a joint move is applied as k successive single-cop OR-steps along
the closed neighbourhood table. Iterating from the capture states reaches
the least fixpoint; the sweep index at which a state turns winning is the
number of cop moves still needed from it.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from ..cayley import Graph
from ..errors import DomainError

UNRESOLVED = np.iinfo(np.int32).max
DEFAULT_MAX_STATES = 50_000_000
MAX_CELLS = 40_000_000  # dense tensor cells; about 10 bytes each in flight


def canonical_state_count(n: int, k: int) -> int:
    """Sorted cop multisets x robber vertex x side to move."""
    return math.comb(n + k - 1, k) * n * 2


@dataclass
class SolvedGame:
    """Fixpoint tables of a finished solve, with move extraction."""

    graph: Graph
    k: int
    cop_time: np.ndarray  # cops to move: cop moves needed to capture
    robber_time: np.ndarray  # robber to move: cop moves needed after it

    def cop_state_wins(self, cops, robber: int) -> bool:
        return int(self.cop_time[tuple(cops) + (robber,)]) != UNRESOLVED

    def robber_state_wins(self, cops, robber: int) -> bool:
        return int(self.robber_time[tuple(cops) + (robber,)]) != UNRESOLVED

    def best_placement(self) -> tuple[int, ...]:
        """Cop placement minimizing the worst-case capture time."""
        n, k = self.graph.n, self.k
        worst = self.cop_time.reshape(n**k, n).max(axis=1)
        flat = int(np.argmin(worst))
        return tuple(int(x) for x in np.unravel_index(flat, (n,) * k))

    def best_cop_move(self, cops, robber: int) -> tuple[int, ...]:
        table = self.graph.adj
        options = [tuple(sorted((c,) + table[c])) for c in cops]
        moves = np.array(list(itertools.product(*options)), dtype=np.int64)
        idx = tuple(moves[:, i] for i in range(self.k)) + (np.full(len(moves), robber),)
        times = self.robber_time[idx]
        return tuple(int(x) for x in moves[int(np.argmin(times))])

    def robber_time_after(self, cops, u: int) -> int:
        return int(self.cop_time[tuple(cops) + (u,)])

    def best_robber_placement(self, cops) -> int:
        row = self.cop_time[tuple(cops)]
        return int(np.argmax(row))

    def best_robber_move(self, cops, robber: int) -> int:
        options = sorted((robber,) + self.graph.adj[robber])
        times = [self.robber_time_after(cops, u) for u in options]
        return options[int(np.argmax(times))]


@dataclass
class SolveOutcome:
    k: int
    cops_win: bool | None
    states_explored: int
    elapsed: float
    inconclusive: bool = False
    reason: str = ""
    sweeps: int = 0
    capture_bound: int | None = None
    strategy: SolvedGame | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "cops_win": self.cops_win,
            "inconclusive": self.inconclusive,
            "reason": self.reason,
            "states_explored": self.states_explored,
            "sweeps": self.sweeps,
        }


def _eye_for(n: int, axis: int, ndim: int) -> np.ndarray:
    shape = [1] * ndim
    shape[axis] = n
    shape[-1] = n
    return np.eye(n, dtype=bool).reshape(shape)


def _exists_step(x: np.ndarray, table: np.ndarray, axis: int) -> np.ndarray:
    out = np.take(x, table[:, 0], axis=axis)
    for j in range(1, table.shape[1]):
        out |= np.take(x, table[:, j], axis=axis)
    return out


def _forall_step(x: np.ndarray, table: np.ndarray, axis: int) -> np.ndarray:
    out = np.take(x, table[:, 0], axis=axis)
    for j in range(1, table.shape[1]):
        out &= np.take(x, table[:, j], axis=axis)
    return out


def k_cop_win(graph: Graph, k: int, max_states: int | None = DEFAULT_MAX_STATES,
              max_seconds: float | None = None) -> SolveOutcome:
    """Decide whether k cops catch the robber on ``graph``.

    Cops place first, then the robber; cops then move (jointly, each along
    an edge or staying) and the sides alternate. Exceeding a budget gives
    an inconclusive outcome, never a wrong one.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if not graph.is_connected():
        raise DomainError("the cop game is defined on connected graphs")
    start = time.perf_counter()
    n = graph.n
    states = canonical_state_count(n, k)
    if max_states is not None and states > max_states:
        return SolveOutcome(k, None, 0, 0.0, True, f"{states} states exceed max_states={max_states}")
    if n ** (k + 1) > MAX_CELLS:
        return SolveOutcome(k, None, 0, 0.0, True, f"dense table of {n}^{k + 1} cells exceeds {MAX_CELLS}")

    table = graph.closed_table
    ndim = k + 1
    shape = (n,) * ndim
    capture = np.zeros(shape, dtype=bool)
    for i in range(k):
        capture |= _eye_for(n, i, ndim)
    cop_time = np.where(capture, 0, UNRESOLVED).astype(np.int32)
    robber_time = cop_time.copy()

    wins_r = capture.copy()
    sweep = 0
    while True:
        sweep += 1
        wins_k = wins_r
        for axis in range(k):
            wins_k = _exists_step(wins_k, table, axis)
        wins_k |= capture
        cop_time[wins_k & (cop_time == UNRESOLVED)] = sweep
        nxt = _forall_step(wins_k, table, k)
        nxt |= capture
        fresh = nxt & ~wins_r
        if not fresh.any():
            break
        robber_time[fresh] = sweep
        wins_r = nxt
        if max_seconds is not None and time.perf_counter() - start > max_seconds:
            return SolveOutcome(k, None, states, time.perf_counter() - start, True,
                                f"exceeded max_seconds={max_seconds}", sweep)

    per_placement = wins_k.reshape(n**k, n).all(axis=1)
    cops_win = bool(per_placement.any())
    solved = SolvedGame(graph, k, cop_time, robber_time)
    bound = None
    if cops_win:
        bound = int(cop_time.reshape(n**k, n).max(axis=1).min())
    return SolveOutcome(k, cops_win, states, time.perf_counter() - start, False, "", sweep, bound, solved)


@dataclass
class CopNumberResult:
    value: int | None
    lower: int
    upper: int | None
    outcomes: list[SolveOutcome]

    @property
    def inconclusive(self) -> bool:
        return self.value is None

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "inconclusive": self.inconclusive,
            "runs": [o.to_json() for o in self.outcomes],
        }


def exact_cop_number(graph: Graph, k_max: int | None = None, max_states: int | None = DEFAULT_MAX_STATES,
                     max_seconds: float | None = None, lower: int = 1,
                     upper: int | None = None) -> CopNumberResult:
    """Least k with a cop win, solving k = lower, lower+1, ...

    ``lower``/``upper`` are proven bounds from elsewhere; solving stops at
    ``upper`` (which is then exact once ``upper - 1`` is a robber win).
    On budget exhaustion the result is the bracket [lower, upper].
    """
    lo = max(1, lower)
    hi = upper if upper is not None else graph.n
    limit = hi if k_max is None else min(hi, k_max)
    outcomes: list[SolveOutcome] = []
    k = lo
    while k <= limit and lo < hi:
        left = None
        if max_seconds is not None:
            left = max_seconds - sum(o.elapsed for o in outcomes)
            if left <= 0:
                break
        out = k_cop_win(graph, k, max_states=max_states, max_seconds=left)
        outcomes.append(out)
        if out.inconclusive:
            break
        if out.cops_win:
            hi = k
            break
        lo = k + 1
        k += 1
    if outcomes:
        wins = [o.k for o in outcomes if o.cops_win]
        losses = [o.k for o in outcomes if o.cops_win is False]
        if wins and losses:
            assert max(losses) < min(wins), "cop win is not monotone in k"
    return CopNumberResult(lo if lo == hi else None, lo, hi, outcomes)
