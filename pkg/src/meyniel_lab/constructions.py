"""Generator-set constructions for large-cop-number abelian Cayley graphs.

``gamma1``  Z_n with a quadratic-residue style set plus {+1, -1}
``gamma2``  Z_p^k with the norm-one elements of GF(p^k)
``gamma3``  Z_5 x Z_p x Z_p with the moment curve {(1, a, a^2)}
``greedy``  any abelian group of order prime to 6, grown greedily so that
            no non-trivial 4-cycle ever appears
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .cayley import CayleyGraph, GeneratorSet, build_graph, make_generator_set
from .errors import (
    CharacteristicError,
    DomainError,
    NoValidPrimeError,
    ParityError,
    SmallOrderError,
)
from .groups import (
    AbelianGroup,
    GroupElement,
    field_make,
    field_pow,
    forbids_small_orders,
    is_prime,
    make_cyclic,
    make_product,
)


@dataclass(frozen=True)
class Gamma1Recipe:
    n: int
    p: int
    s_values: tuple[int, ...]

    def __post_init__(self):
        p = self.p
        assert p >= 5 and 8 * p * p <= self.n
        assert all(p * p <= s <= 2 * p * p - 2 for s in self.s_values)
        assert len(set(self.s_values)) == len(self.s_values)


@dataclass
class Instance:
    """A constructed family member: group, generator set and its parameters."""

    family: str
    params: dict
    group: AbelianGroup
    generators: GeneratorSet
    recipe: object | None = None

    @cached_property
    def graph(self) -> CayleyGraph:
        return build_graph(self.generators, name=self.label)

    @property
    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}({args})"

    @property
    def n(self) -> int:
        return self.group.order

    def metadata(self) -> dict:
        meta = {
            "family": self.family,
            "params": dict(self.params),
            "n": self.n,
            "moduli": list(self.group.moduli),
            "s_size": len(self.generators),
            "generators": [list(g.coords) for g in self.generators.sorted()],
        }
        if isinstance(self.recipe, Gamma1Recipe):
            meta["p"] = self.recipe.p
            meta["s_values"] = list(self.recipe.s_values)
        return meta


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise CharacteristicError(f"p must be an odd prime, got {p}")


# -- Gamma_1 -------------------------------------------------------------------


def s_value(p: int, a: int) -> int:
    if not 0 <= a <= p - 1:
        raise DomainError(f"a must lie in [0, {p - 1}], got {a}")
    return (p * p + (a * a % p) * p + a) % (8 * p * p)


def gamma1_prime(n: int) -> int:
    """Largest prime p >= 5 with 8p^2 <= n."""
    p = math.isqrt(n // 8)
    while p >= 5:
        if is_prime(p):
            return p
        p -= 1
    raise NoValidPrimeError(f"no prime p >= 5 with 8p^2 <= {n} (need n >= 200)")


def gamma1_core(p: int, n: int | None = None) -> GeneratorSet:
    """The set {+-s_a : 0 <= a <= (p-1)/2} in Z_n (default n = 8p^2), without +-1."""
    n = 8 * p * p if n is None else n
    group = make_cyclic(n)
    vals = [s_value(p, a) for a in range((p - 1) // 2 + 1)]
    return make_generator_set(group, [group.element(s) for s in vals] + [group.element(-s) for s in vals])


def build_gamma1(n: int) -> tuple[AbelianGroup, GeneratorSet, Gamma1Recipe]:
    p = gamma1_prime(n)
    recipe = Gamma1Recipe(n, p, tuple(s_value(p, a) for a in range((p - 1) // 2 + 1)))
    group = make_cyclic(n)
    elems = [group.element(1), group.element(-1)]
    for s in recipe.s_values:
        elems += [group.element(s), group.element(-s)]
    gens = make_generator_set(group, elems)
    assert len(gens) == p + 3
    return group, gens, recipe


# -- Gamma_2 -------------------------------------------------------------------


def build_gamma2(p: int, k: int) -> tuple[AbelianGroup, GeneratorSet]:
    if k < 2 or k % 2:
        raise ParityError(f"k must be an even integer >= 2, got {k}")
    _require_odd_prime(p)
    fld = field_make(p, k)
    q = p ** (k // 2)
    group = fld.additive_group()
    one = fld.one()
    norm_one = [s for s in fld.elements() if not s.is_zero() and field_pow(s, q + 1) == one]
    gens = make_generator_set(group, [s.to_group_element(group) for s in norm_one])
    assert len(gens) == q + 1
    return group, gens


# -- Gamma_3 -------------------------------------------------------------------


def build_gamma3(p: int) -> tuple[AbelianGroup, GeneratorSet]:
    _require_odd_prime(p)
    group = make_product([5, p, p])
    elems = []
    for a in range(p):
        g = group.element(1, a, a * a)
        elems += [g, -g]
    gens = make_generator_set(group, elems)
    assert len(gens) == 2 * p
    return group, gens


# -- greedy (no non-trivial 4-cycles) -----------------------------------------


@dataclass(frozen=True)
class ForbiddenSets:
    group: AbelianGroup
    f1: frozenset[GroupElement]
    f2: frozenset[GroupElement]
    f3: frozenset[GroupElement]
    union: frozenset[GroupElement] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "union", self.f1 | self.f2 | self.f3)


def _forbidden_ranks(group: AbelianGroup, s: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if s.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    pair = np.unique(group.add_ranks(s[:, None], s[None, :]))
    f1 = np.unique(group.add_ranks(pair[:, None], s[None, :]))
    everything = np.arange(group.order, dtype=np.int64)
    f2 = everything[np.isin(group.scale_ranks(everything, -2), pair)]
    f3 = everything[np.isin(group.scale_ranks(everything, 3), s)]
    return f1, f2, f3


def forbidden_sets(S: GeneratorSet) -> ForbiddenSets:
    """F1 = {a+b+c}, F2 = {a : b+c+2a = 0}, F3 = {a : 3a in S} for a, b, c over S."""
    group = S.group
    if not forbids_small_orders(group):
        raise SmallOrderError(f"{group!r} has elements of order 2 or 3")
    f1, f2, f3 = _forbidden_ranks(group, S.ranks)
    conv = lambda arr: frozenset(group.unrank(int(r)) for r in arr)  # noqa: E731
    return ForbiddenSets(group, conv(f1), conv(f2), conv(f3))


def greedy_generating_set(
    group: AbelianGroup,
    on_step: Callable[[GeneratorSet, GroupElement | None], None] | None = None,
) -> GeneratorSet:
    """Grow S from the unit vectors by adding {s, -s} for the least-ranked
    s outside F_S, until F_S covers the whole group.

    ``on_step(S, s)`` is called on the initial set (with ``s=None``) and
    after every addition.
    """
    from .freeness import find_nontrivial_4cycle

    if not forbids_small_orders(group):
        raise SmallOrderError(f"{group!r} has elements of order 2 or 3")
    basis = group.basis()
    S = make_generator_set(group, basis + [-b for b in basis])
    witness = find_nontrivial_4cycle(S)
    if witness is not None:
        raise AssertionError(f"initial set has a non-trivial 4-cycle {witness}")
    if on_step:
        on_step(S, None)
    n = group.order
    ranks = S.ranks
    while True:
        f1, f2, f3 = _forbidden_ranks(group, ranks)
        covered = np.zeros(n, dtype=bool)
        covered[f1] = covered[f2] = covered[f3] = True
        free = np.flatnonzero(~covered)
        if free.size == 0:
            break
        s = group.unrank(int(free[0]))
        S = S.union([s, -s])
        ranks = S.ranks
        if on_step:
            on_step(S, s)
    s_size = len(S)
    assert s_size**3 + s_size**2 + s_size >= n
    return S


# -- uniform entry point -------------------------------------------------------


FAMILIES = ("gamma1", "gamma2", "gamma3", "greedy")


def build_instance(family: str, n: int | None = None, p: int | None = None, k: int | None = None,
                   moduli: list[int] | None = None) -> Instance:
    def need(name, value):
        if value is None:
            raise DomainError(f"family {family} needs --{name}")
        return value

    if family == "gamma1":
        group, gens, recipe = build_gamma1(need("n", n))
        return Instance("gamma1", {"n": n}, group, gens, recipe)
    if family == "gamma2":
        group, gens = build_gamma2(need("p", p), need("k", k))
        return Instance("gamma2", {"p": p, "k": k}, group, gens)
    if family == "gamma3":
        group, gens = build_gamma3(need("p", p))
        return Instance("gamma3", {"p": p}, group, gens)
    if family == "greedy":
        group = make_product(moduli) if moduli else make_cyclic(need("n", n))
        gens = greedy_generating_set(group)
        params = {"moduli": list(group.moduli)} if moduli else {"n": n}
        return Instance("greedy", params, group, gens)
    raise DomainError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
