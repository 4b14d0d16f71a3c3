"""Data model for two-value fair division and exact Nash-welfare arithmetic.

Every agent values each good at one of two integers: q ("big", the goods
listed in its big set) or p ("small", everything else), with 0 <= p < q.
Welfare products are kept as arbitrary-precision integers so comparisons are
exact; floating point appears only in display helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, total_ordering
from typing import Sequence

INSTANCE_MAGIC = "nsw2v 1"
ALLOCATION_MAGIC = "alloc 1"


class ParseError(ValueError):
    """Raised for malformed instance or allocation files."""


def canonicalize(p: int, q: int) -> tuple[int, int]:
    """Reduce a value pair (p, q) by its gcd.

    Scaling both values by a common factor reorders no allocation products,
    so instances are always stored in coprime form.
    """
    if q <= 0:
        raise ValueError(f"big value must be positive, got q={q}")
    if not 0 <= p < q:
        raise ValueError(f"values must satisfy 0 <= p < q, got p={p}, q={q}")
    g = math.gcd(p, q)
    return p // g, q // g


@dataclass(frozen=True)
class Instance:
    """A two-value instance: agent i values goods in big_sets[i] at q, the rest at p.

    The value pair is canonicalized on construction, so p == 0 encodes the
    dichotomous case (small goods worth nothing).
    """

    n: int
    m: int
    p: int
    q: int
    big_sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one agent, got n={self.n}")
        if self.m < 0:
            raise ValueError(f"good count must be non-negative, got m={self.m}")
        p, q = canonicalize(self.p, self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        sets = tuple(frozenset(s) for s in self.big_sets)
        if len(sets) != self.n:
            raise ValueError(f"expected {self.n} big sets, got {len(sets)}")
        for i, s in enumerate(sets):
            for g in s:
                if not 0 <= g < self.m:
                    raise ValueError(f"agent {i} lists good {g} outside 0..{self.m - 1}")
        object.__setattr__(self, "big_sets", sets)

    @cached_property
    def big_goods(self) -> frozenset[int]:
        """Goods that are big for at least one agent."""
        return frozenset().union(*self.big_sets)

    @cached_property
    def small_goods(self) -> frozenset[int]:
        """Goods that are small for every agent."""
        return frozenset(range(self.m)) - self.big_goods

    def value(self, agent: int, good: int) -> int:
        return self.q if good in self.big_sets[agent] else self.p


@dataclass(frozen=True)
class Allocation:
    """One bundle of good indices per agent.

    The container itself does not force a partition; validate_allocation
    reports disjointness and coverage so that checking stays explicit.
    """

    bundles: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bundles", tuple(frozenset(b) for b in self.bundles))

    @property
    def n(self) -> int:
        return len(self.bundles)

    @classmethod
    def from_owners(cls, n: int, owners: Sequence[int]) -> "Allocation":
        """Build bundles from an owner vector (owners[g] is the agent holding good g)."""
        bundles: list[set[int]] = [set() for _ in range(n)]
        for g, a in enumerate(owners):
            bundles[a].add(g)
        return cls(tuple(frozenset(b) for b in bundles))

    def assigned(self) -> frozenset[int]:
        return frozenset().union(*self.bundles) if self.bundles else frozenset()

    def owner_of(self) -> dict[int, int]:
        """Map each assigned good to its owner; a duplicated good keeps the lowest agent."""
        owners: dict[int, int] = {}
        for i, bundle in enumerate(self.bundles):
            for g in bundle:
                owners.setdefault(g, i)
        return owners


@dataclass(frozen=True)
class ValuationProfile:
    """Per-agent counts of big and small goods held, and total values in units of (p, q)."""

    big_counts: tuple[int, ...]
    small_counts: tuple[int, ...]
    values: tuple[int, ...]


def valuation_profile(inst: Instance, alloc: Allocation) -> ValuationProfile:
    if alloc.n != inst.n:
        raise ValueError(f"allocation has {alloc.n} bundles for {inst.n} agents")
    big = []
    small = []
    values = []
    for i, bundle in enumerate(alloc.bundles):
        b = len(bundle & inst.big_sets[i])
        s = len(bundle) - b
        big.append(b)
        small.append(s)
        values.append(inst.q * b + inst.p * s)
    return ValuationProfile(tuple(big), tuple(small), tuple(values))


@total_ordering
@dataclass(frozen=True, eq=False)
class NswValue:
    """Exact product of the n agent values.

    Ordering geometric means with a fixed n is the same as ordering the
    integer products, so comparisons never touch floating point.
    """

    n: int
    q: int
    product: int

    @property
    def float_scaled(self) -> float:
        """Geometric mean with big goods scaled to 1.0; for display only."""
        if self.product == 0:
            return 0.0
        return math.exp(math.log(self.product) / self.n) / self.q

    def _comparable(self, other: "NswValue") -> None:
        if self.n != other.n or self.q != other.q:
            raise ValueError("cannot compare welfare values from differently shaped instances")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NswValue):
            return NotImplemented
        self._comparable(other)
        return self.product == other.product

    def __lt__(self, other: "NswValue") -> bool:
        if not isinstance(other, NswValue):
            return NotImplemented
        self._comparable(other)
        return self.product < other.product

    def __hash__(self) -> int:
        return hash((self.n, self.q, self.product))


def nsw_product(inst: Instance, alloc: Allocation) -> NswValue:
    """Exact welfare product of an allocation; an empty bundle contributes a zero factor."""
    profile = valuation_profile(inst, alloc)
    return NswValue(inst.n, inst.q, math.prod(profile.values))


@dataclass(frozen=True)
class ValidationReport:
    complete: bool
    disjoint: bool
    nonwasteful: bool
    out_of_range: tuple[int, ...]


def validate_allocation(inst: Instance, alloc: Allocation) -> ValidationReport:
    """Check partition and non-wastefulness properties of an allocation.

    nonwasteful means every bundle holds only goods big for its owner and the
    bundles together cover exactly the goods that are big for someone.
    """
    if alloc.n != inst.n:
        raise ValueError(f"allocation has {alloc.n} bundles for {inst.n} agents")
    seen: set[int] = set()
    duplicated = False
    bad: set[int] = set()
    for bundle in alloc.bundles:
        for g in bundle:
            if not 0 <= g < inst.m:
                bad.add(g)
            if g in seen:
                duplicated = True
            seen.add(g)
    complete = seen >= set(range(inst.m))
    inside = all(bundle <= inst.big_sets[i] for i, bundle in enumerate(alloc.bundles))
    nonwasteful = inside and seen == set(inst.big_goods)
    return ValidationReport(complete, not duplicated, nonwasteful, tuple(sorted(bad)))


def _int_fields(line: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise ParseError(f"{what}: expected integers, got {line!r}") from exc


def _body_lines(lines: list[str], count: int, what: str) -> list[str]:
    body = lines[2:]
    if len(body) > count and any(extra.strip() for extra in body[count:]):
        raise ParseError(f"trailing content after {count} {what} lines")
    body = body[:count]
    return body + [""] * (count - len(body))


def parse_instance(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or lines[0].strip() != INSTANCE_MAGIC:
        raise ParseError(f"expected {INSTANCE_MAGIC!r} on the first line")
    if len(lines) < 2:
        raise ParseError("missing size line 'n m p q'")
    header = _int_fields(lines[1], "size line")
    if len(header) != 4:
        raise ParseError(f"size line must hold 'n m p q', got {lines[1]!r}")
    n, m, p, q = header
    if n < 1:
        raise ParseError(f"need at least one agent, got n={n}")
    big_sets = []
    for i, line in enumerate(_body_lines(lines, n, "agent")):
        big_sets.append(frozenset(_int_fields(line, f"agent {i}")))
    try:
        return Instance(n, m, p, q, tuple(big_sets))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_instance(inst: Instance) -> str:
    lines = [INSTANCE_MAGIC, f"{inst.n} {inst.m} {inst.p} {inst.q}"]
    lines.extend(" ".join(str(g) for g in sorted(s)) for s in inst.big_sets)
    return "\n".join(lines) + "\n"


def parse_allocation(text: str) -> tuple[Allocation, int]:
    """Parse an allocation file; returns the allocation and the declared good count."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != ALLOCATION_MAGIC:
        raise ParseError(f"expected {ALLOCATION_MAGIC!r} on the first line")
    if len(lines) < 2:
        raise ParseError("missing size line 'n m'")
    header = _int_fields(lines[1], "size line")
    if len(header) != 2:
        raise ParseError(f"size line must hold 'n m', got {lines[1]!r}")
    n, m = header
    if n < 1:
        raise ParseError(f"need at least one bundle, got n={n}")
    if m < 0:
        raise ParseError(f"good count must be non-negative, got m={m}")
    bundles = []
    for i, line in enumerate(_body_lines(lines, n, "bundle")):
        goods = _int_fields(line, f"bundle {i}")
        for g in goods:
            if not 0 <= g < m:
                raise ParseError(f"bundle {i} lists good {g} outside 0..{m - 1}")
        bundles.append(frozenset(goods))
    return Allocation(tuple(bundles)), m


def serialize_allocation(alloc: Allocation, m: int) -> str:
    lines = [ALLOCATION_MAGIC, f"{alloc.n} {m}"]
    lines.extend(" ".join(str(g) for g in sorted(b)) for b in alloc.bundles)
    return "\n".join(lines) + "\n"
