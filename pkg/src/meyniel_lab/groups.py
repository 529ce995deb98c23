"""Finite abelian groups given as explicit products of cyclic groups, and
prime fields extended to GF(p^k).

Elements are coordinate vectors of reduced residues. Every group element
also has a canonical *rank*: the mixed-radix number formed by its
coordinates with the last coordinate varying fastest. Graph vertices are
identified with ranks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    CharacteristicError,
    DomainError,
    InvalidOrderError,
    OverflowOrderError,
)

MAX_ORDER = 2**63 - 1


def is_prime(n: int) -> bool:
    """Deterministic trial division; intended for n up to about 10**12."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class AbelianGroup:
    """The product Z_{m_1} x ... x Z_{m_r}."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli:
            raise InvalidOrderError("a group needs at least one cyclic factor")
        for m in self.moduli:
            if not isinstance(m, (int, np.integer)) or m < 2:
                raise InvalidOrderError(f"cyclic factor modulus must be an integer >= 2, got {m!r}")
        if math.prod(self.moduli) > MAX_ORDER:
            raise OverflowOrderError(f"group order {math.prod(self.moduli)} exceeds 2**63-1")
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank_count(self) -> int:
        return len(self.moduli)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return "x".join(f"Z{m}" for m in self.moduli)

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        acc = 1
        for m in reversed(self.moduli):
            strides.append(acc)
            acc *= m
        return tuple(reversed(strides))

    def element(self, *coords: int) -> GroupElement:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != len(self.moduli):
            raise DomainError(f"{self!r} elements have {len(self.moduli)} coordinates, got {len(coords)}")
        return GroupElement(self, tuple(int(c) % m for c, m in zip(coords, self.moduli)))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.moduli))

    def basis(self) -> list[GroupElement]:
        """Unit vectors, one per cyclic factor."""
        r = len(self.moduli)
        return [GroupElement(self, tuple(int(i == j) for j in range(r))) for i in range(r)]

    def elements(self) -> Iterator[GroupElement]:
        """All elements in canonical rank order."""
        for coords in itertools.product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, coords)

    def rank(self, g: GroupElement) -> int:
        self._check(g)
        return sum(c * s for c, s in zip(g.coords, self._strides))

    def unrank(self, r: int) -> GroupElement:
        if not 0 <= r < self.order:
            raise DomainError(f"rank {r} out of range for group of order {self.order}")
        coords = []
        for s, m in zip(self._strides, self.moduli):
            coords.append((r // s) % m)
        return GroupElement(self, tuple(coords))

    def _check(self, g: GroupElement) -> None:
        if g.group != self:
            raise DomainError(f"element {g} does not belong to {self!r}")

    # Vectorized arithmetic on rank arrays, used by the graph and
    # construction code where Python-level element objects are too slow.

    def coords_of(self, ranks) -> np.ndarray:
        ranks = np.asarray(ranks, dtype=np.int64)
        out = np.empty(ranks.shape + (len(self.moduli),), dtype=np.int64)
        for i, (s, m) in enumerate(zip(self._strides, self.moduli)):
            out[..., i] = (ranks // s) % m
        return out

    def ranks_of(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        out = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i, (s, m) in enumerate(zip(self._strides, self.moduli)):
            out += (coords[..., i] % m) * s
        return out

    def add_ranks(self, a, b) -> np.ndarray:
        """Rank of the sum, broadcasting over ``a`` and ``b``."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        for s, m in zip(self._strides, self.moduli):
            out += ((a // s + b // s) % m) * s
        return out

    def scale_ranks(self, a, factor: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        for s, m in zip(self._strides, self.moduli):
            out += (((a // s) % m) * factor % m) * s
        return out

    def neg_ranks(self, a) -> np.ndarray:
        return self.scale_ranks(a, -1)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.group.moduli):
            raise DomainError("coordinate count does not match the group")
        for c, m in zip(self.coords, self.group.moduli):
            if not 0 <= c < m:
                raise DomainError(f"coordinate {c} not reduced modulo {m}")

    def __add__(self, other: GroupElement) -> GroupElement:
        return add(self, other)

    def __neg__(self) -> GroupElement:
        return neg(self)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return add(self, neg(other))

    def __mul__(self, m: int) -> GroupElement:
        return GroupElement(self.group, tuple((c * m) % q for c, q in zip(self.coords, self.group.moduli)))

    __rmul__ = __mul__

    def __lt__(self, other: GroupElement) -> bool:
        return self.rank < other.rank

    @property
    def rank(self) -> int:
        return self.group.rank(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"


def make_cyclic(n: int) -> AbelianGroup:
    if n < 2:
        raise InvalidOrderError(f"cyclic group order must be >= 2, got {n}")
    return AbelianGroup((n,))


def make_product(moduli: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(tuple(moduli))


def add(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.group != h.group:
        raise DomainError(f"cannot add elements of {g.group!r} and {h.group!r}")
    return GroupElement(g.group, tuple((a + b) % m for a, b, m in zip(g.coords, h.coords, g.group.moduli)))


def neg(g: GroupElement) -> GroupElement:
    return GroupElement(g.group, tuple((-a) % m for a, m in zip(g.coords, g.group.moduli)))


def zero(group: AbelianGroup) -> GroupElement:
    return group.zero()


def element_order(g: GroupElement) -> int:
    """Least m >= 1 with m*g = 0: the lcm of the coordinate orders."""
    out = 1
    for c, m in zip(g.coords, g.group.moduli):
        out = math.lcm(out, m // math.gcd(c, m))
    return out


def forbids_small_orders(group: AbelianGroup) -> bool:
    """True iff the group has no element of order 2 or 3.

    By Cauchy's theorem this happens exactly when gcd(|G|, 6) = 1.
    """
    return math.gcd(group.order, 6) == 1


# -- polynomials over Z_p: coefficient lists, lowest degree first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * fc) % p
        _trim(a)
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def poly_powmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(base, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial of degree k over Z_p.

    f is irreducible iff x^(p^k) = x mod f and gcd(x^(p^(k/r)) - x, f) = 1
    for every prime r dividing k.
    """
    f = list(f)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    for r in _prime_factors(k):
        h = poly_sub(poly_powmod(x, p ** (k // r), f, p), x, p)
        if len(poly_gcd(h, f, p)) != 1:
            return False
    return poly_sub(poly_powmod(x, p**k, f, p), x, p) == []


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, scanning lower coefficients
    (constant term first) as base-p counters."""
    for m in range(p**k):
        lower = [(m // p**i) % p for i in range(k)]
        f = lower + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {k} over Z_{p}")  # unreachable


@dataclass(frozen=True)
class FiniteField:
    """GF(p^k) as Z_p[x] modulo a monic irreducible of degree k."""

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.k

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            coeffs = poly_mod(coeffs, self.modulus, self.p)
        coeffs = [c % self.p for c in coeffs] + [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.k)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def gen(self) -> FieldElement:
        """The class of x."""
        return self.element([0, 1])

    def elements(self) -> Iterator[FieldElement]:
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, tuple(reversed(coeffs)))

    def additive_group(self) -> AbelianGroup:
        return AbelianGroup((self.p,) * self.k)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    coeffs: tuple[int, ...]  # coefficient of x^i at index i

    def __add__(self, other: FieldElement) -> FieldElement:
        _same_field(self, other)
        return FieldElement(self.field, tuple((a + b) % self.field.p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, tuple((-a) % self.field.p for a in self.coeffs))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self + (-other)

    def __mul__(self, other: FieldElement) -> FieldElement:
        return field_mul(self, other)

    def __pow__(self, e: int) -> FieldElement:
        return field_pow(self, e)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_group_element(self, group: AbelianGroup | None = None) -> GroupElement:
        group = group or self.field.additive_group()
        return GroupElement(group, self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}x^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def _same_field(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise DomainError("field elements belong to different fields")


def field_make(p: int, k: int) -> FiniteField:
    if p % 2 == 0 or not is_prime(p):
        raise CharacteristicError(f"characteristic must be an odd prime, got {p}")
    if k < 1:
        raise DomainError(f"extension degree must be >= 1, got {k}")
    if p**k > MAX_ORDER:
        raise OverflowOrderError(f"field order {p}^{k} exceeds 2**63-1")
    return FiniteField(p, k, find_irreducible(p, k))


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    f = a.field
    prod = poly_mod(poly_mul(_trim(list(a.coeffs)), _trim(list(b.coeffs)), f.p), f.modulus, f.p)
    return FieldElement(f, tuple(prod + [0] * (f.k - len(prod))))


def field_pow(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        raise DomainError("negative exponents are not supported")
    result = a.field.one()
    base = a
    while e:
        if e & 1:
            result = field_mul(result, base)
        base = field_mul(base, base)
        e >>= 1
    return result
