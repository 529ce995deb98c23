"""Cop-number certificates: proven lower and upper bounds with the rule,
and the premise, behind each one.

Lower bounds come from evasion arguments on K_{2,t}-free graphs of minimum
degree delta:

* ``lemma-2.1``: fewer than delta/t cops can always be evaded, so c >= ceil(delta/t);
* ``lemma-2.2``: if the graph is also triangle-free, any delta/(t-1) or
  fewer cops can be evaded, so c >= floor(delta/(t-1)) + 1.

The upper bound for connected abelian Cayley graphs is Frankl's
ceil((|S|+1)/2). Solver results tighten either side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cayley import CayleyGraph, Graph
from .copgame.solver import CopNumberResult, SolveOutcome
from .errors import DomainError, InconsistencyError, UnprovenPremiseError
from .freeness import FreenessReport

LOWER_PREFERENCE = ("lemma-2.2", "lemma-2.1", "solver", "solver-exact", "trivial")
UPPER_PREFERENCE = ("frankl", "solver", "solver-exact")


def _premise_holds(premise, check) -> bool:
    if isinstance(premise, FreenessReport):
        return check(premise)
    return bool(premise)


def lower_bound_k2t(delta: int, t: int, premise: FreenessReport | bool) -> int:
    """ceil(delta / t) for a verified K_{2,t}-free graph."""
    if t < 3:
        raise DomainError(f"the evasion bound needs t >= 3, got {t}")
    if not _premise_holds(premise, lambda r: r.k2t_free(t)):
        raise UnprovenPremiseError(f"graph is not verified K_(2,{t})-free")
    return -(-delta // t)


def lower_bound_c3_k2t(delta: int, t: int, premise: FreenessReport | bool) -> int:
    """floor(delta / (t-1)) + 1 for a verified {C3, K_{2,t}}-free graph."""
    if t < 3:
        raise DomainError(f"the evasion bound needs t >= 3, got {t}")
    if not _premise_holds(premise, lambda r: r.triangle_free and r.k2t_free(t)):
        raise UnprovenPremiseError(f"graph is not verified (C3, K_(2,{t}))-free")
    return delta // (t - 1) + 1


def frankl_upper_bound(s_size: int, premise: bool = True) -> int:
    if not premise:
        raise UnprovenPremiseError("Frankl's bound needs a connected abelian Cayley graph")
    return (s_size + 2) // 2


def bradshaw_bound(n: int) -> float:
    return 7 * math.sqrt(n)


@dataclass
class Bound:
    value: int
    rule: str
    premise: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"value": self.value, "rule": self.rule, "premise": self.premise}


@dataclass
class CopCertificate:
    graph_id: str
    family: str | None
    params: dict
    n: int
    delta: int
    s_size: int | None
    lower: Bound
    upper: Bound | None
    exact: int | None
    exact_source: str | None
    freeness: FreenessReport
    theorem: dict | None = None
    solver: dict | None = None
    inconclusive: bool = False
    candidates: list[Bound] = field(default_factory=list)

    def __post_init__(self):
        if self.upper is not None and self.lower.value > self.upper.value:
            raise InconsistencyError(
                f"lower bound {self.lower.value} ({self.lower.rule}) exceeds upper bound "
                f"{self.upper.value} ({self.upper.rule}) on {self.graph_id}"
            )
        if self.exact is not None and not (
            self.lower.value <= self.exact and (self.upper is None or self.exact <= self.upper.value)
        ):
            raise InconsistencyError(f"exact value {self.exact} outside the certified bracket")

    def to_json(self) -> dict:
        return {
            "graph": {
                "id": self.graph_id,
                "family": self.family,
                "params": self.params,
                "n": self.n,
                "delta": self.delta,
                "s_size": self.s_size,
            },
            "freeness": self.freeness.to_json(),
            "bounds": {
                "lower": self.lower.to_json(),
                "upper": None if self.upper is None else self.upper.to_json(),
                "exact": self.exact,
                "exact_source": self.exact_source,
                "inconclusive": self.inconclusive,
                "bradshaw_reference": round(bradshaw_bound(self.n), 6),
            },
            "theorem": self.theorem,
            "solver": self.solver,
        }


def _lower_candidates(delta: int, report: FreenessReport) -> list[Bound]:
    ts = {t for t in report.k2t if t >= 3}
    if report.nontrivial_4cycle_free:
        ts.add(3)
    out = []
    for t in sorted(ts):
        if not report.k2t_free(t):
            continue
        via = "k2t-scan" if t in report.k2t and report.k2t[t].free else "no-nontrivial-4-cycle"
        premise = {"t": t, "k2t_free": True, "via": via, "delta": delta}
        out.append(Bound(lower_bound_k2t(delta, t, report), "lemma-2.1", premise))
        if report.triangle_free:
            out.append(Bound(lower_bound_c3_k2t(delta, t, report), "lemma-2.2", dict(premise, triangle_free=True)))
    return out


def _pick(cands: list[Bound], prefer: tuple[str, ...], best) -> Bound | None:
    if not cands:
        return None
    target = best(c.value for c in cands)
    tied = [c for c in cands if c.value == target]
    return min(tied, key=lambda c: prefer.index(c.rule))


def theorem_target(family: str | None, params: dict, n: int, s_size: int | None, lower: int,
                   exact: int | None, report: FreenessReport) -> dict | None:
    if family == "gamma1":
        target = 0.1178 * math.sqrt(n)
        return {"target_expr": "lower > 0.1178*sqrt(n)", "target_value": target, "achieved": lower,
                "satisfied": lower > target}
    if family == "gamma2":
        target = math.sqrt(n) / 3
        return {"target_expr": "lower > sqrt(n)/3", "target_value": target, "achieved": lower,
                "satisfied": lower > target}
    if family == "gamma3":
        p = params["p"]
        target = math.sqrt(n / 5)
        return {"target_expr": "exact == p+1 > sqrt(n/5)", "target_value": target, "achieved": exact,
                "satisfied": exact == p + 1 and p + 1 > target}
    if family == "greedy":
        s = s_size or 0
        cubic = s**3 + s**2 + s
        ok = cubic >= n and report.k2t_free(3) and lower >= -(-s // 3)
        return {"target_expr": "|S|^3+|S|^2+|S| >= n and lower >= ceil(|S|/3)", "target_value": n,
                "achieved": cubic, "satisfied": ok}
    return None


def certify(graph: Graph, freeness: FreenessReport,
            solver: SolveOutcome | CopNumberResult | list[SolveOutcome] | None = None,
            family: str | None = None, params: dict | None = None) -> CopCertificate:
    """Combine every applicable bound for ``graph`` into one certificate."""
    params = dict(params or {})
    delta = graph.min_degree
    is_cayley = isinstance(graph, CayleyGraph)
    s_size = len(graph.generators) if is_cayley else None

    lowers = [Bound(1, "trivial")] + _lower_candidates(delta, freeness)
    uppers: list[Bound] = []
    if is_cayley and graph.is_connected():
        uppers.append(Bound(frankl_upper_bound(s_size), "frankl", {"s_size": s_size, "connected": True}))

    outcomes: list[SolveOutcome] = []
    exact = exact_source = None
    solver_json = None
    if isinstance(solver, CopNumberResult):
        outcomes = solver.outcomes
        solver_json = solver.to_json()
    elif isinstance(solver, SolveOutcome):
        outcomes = [solver]
    elif solver:
        outcomes = list(solver)
    if outcomes and solver_json is None:
        solver_json = {"runs": [o.to_json() for o in outcomes]}
    for o in outcomes:
        if o.cops_win is True:
            uppers.append(Bound(o.k, "solver", {"k": o.k, "cops_win": True}))
        elif o.cops_win is False:
            lowers.append(Bound(o.k + 1, "solver", {"k": o.k, "cops_win": False}))

    lower = _pick(lowers, LOWER_PREFERENCE, max)
    upper = _pick(uppers, UPPER_PREFERENCE, min)
    wins = [o.k for o in outcomes if o.cops_win]
    if wins and any(o.cops_win is False and o.k == min(wins) - 1 for o in outcomes):
        exact, exact_source = min(wins), "solver-exact"
    elif wins and min(wins) == 1:
        exact, exact_source = 1, "solver-exact"
    elif upper is not None and lower.value == upper.value:
        exact, exact_source = lower.value, "bracket"
    cert = CopCertificate(
        graph_id=graph.name or family or "graph",
        family=family,
        params=params,
        n=graph.n,
        delta=delta,
        s_size=s_size,
        lower=lower,
        upper=upper,
        exact=exact,
        exact_source=exact_source,
        freeness=freeness,
        solver=solver_json,
        inconclusive=exact is None,
        candidates=lowers + uppers,
    )
    cert.theorem = theorem_target(family, params, graph.n, s_size, lower.value, exact, freeness)
    return cert


def recheck(cert: CopCertificate, graph: Graph) -> bool:
    """Re-verify the premises of the chosen bounds against ``graph``."""
    from .freeness import check_freeness

    ts = [b.premise["t"] for b in (cert.lower,) if "t" in b.premise]
    report = check_freeness(graph, ts=ts or (3,))
    if cert.lower.rule == "lemma-2.1":
        return report.k2t_free(cert.lower.premise["t"])
    if cert.lower.rule == "lemma-2.2":
        return report.triangle_free and report.k2t_free(cert.lower.premise["t"])
    return True
