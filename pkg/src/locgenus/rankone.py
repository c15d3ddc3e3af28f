"""Height sequences, similarity types, and rank-one subgroups of the rationals.

A torsion-free abelian group of rank one embeds, up to isomorphism, as a
subgroup of the rationals containing the integers. Such a subgroup is
pinned down by the height of 1 at each prime: the largest r with 1/p^r in
the group. This module works with the computable fragment of eventually
constant height sequences, which is closed under every operation below and
contains all the named examples (the integers, Z[1/p], the full rationals,
pseudo-integer groups).

Two sequences are similar when they carry infinity at exactly the same
primes and their finite entries differ at only finitely many primes. A
similarity class is called a type; types classify rank-one torsion-free
groups up to abstract isomorphism.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

from .arith import (
    DEFAULT_PRIME_BOUND,
    Height,
    INFINITY,
    InfinityType,
    factorize,
    is_height,
    is_prime,
)
from .errors import DomainError


def _validated_entries(
    default: Height, entries: Mapping[int, Height] | None, label: str
) -> dict[int, Height]:
    if not is_height(default):
        raise DomainError(f"{label} default must be a non-negative integer or inf")
    cleaned: dict[int, Height] = {}
    for p, value in sorted((entries or {}).items()):
        if not is_prime(p):
            raise DomainError(f"{label} key {p} is not prime")
        if not is_height(value):
            raise DomainError(f"{label} entry at {p} must be a non-negative integer or inf")
        if value != default:
            cleaned[p] = value
    return cleaned


class HeightSequence:
    """An eventually constant sequence of heights, one entry per prime.

    Stored as a single default plus finitely many exceptions; an entry that
    repeats the default is dropped at construction, so equal data means
    equal sequences.

    >>> h = HeightSequence(0, {2: 3, 5: INFINITY})
    >>> h.height_at(2), h.height_at(3), h.height_at(5)
    (3, 0, inf)
    """

    __slots__ = ("_default", "_exceptions")

    def __init__(self, default: Height = 0, exceptions: Mapping[int, Height] | None = None):
        self._default = default
        self._exceptions = _validated_entries(default, exceptions, "height")

    @property
    def default(self) -> Height:
        return self._default

    @property
    def exceptions(self) -> dict[int, Height]:
        return dict(self._exceptions)

    @property
    def support(self) -> tuple[int, ...]:
        """The primes carrying an explicit exception, ascending."""
        return tuple(self._exceptions)

    def height_at(self, p: int) -> Height:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        return self._exceptions.get(p, self._default)

    def infinite_exception_primes(self) -> frozenset[int]:
        return frozenset(
            p for p, v in self._exceptions.items() if isinstance(v, InfinityType)
        )

    def finite_exception_primes(self) -> frozenset[int]:
        return frozenset(
            p for p, v in self._exceptions.items() if not isinstance(v, InfinityType)
        )

    def all_finite(self) -> bool:
        """True iff no entry, default included, is infinite."""
        if isinstance(self._default, InfinityType):
            return False
        return not self.infinite_exception_primes()

    def __eq__(self, other):
        if not isinstance(other, HeightSequence):
            return NotImplemented
        return self._default == other._default and self._exceptions == other._exceptions

    def __hash__(self):
        return hash((self._default, tuple(self._exceptions.items())))

    def __repr__(self):
        return f"HeightSequence({self._default!r}, {self._exceptions!r})"

    def __str__(self):
        parts = [f"default:{self._default}"]
        parts += [f"{p}:{v}" for p, v in self._exceptions.items()]
        return "{" + ", ".join(parts) + "}"


def similar(s: HeightSequence, t: HeightSequence) -> bool:
    """Whether two height sequences lie in the same similarity class.

    Requires infinity at exactly the same primes, and a finite total
    difference over the finite entries. With eventually constant data the
    sum of differences is finite exactly when the defaults agree wherever
    both sequences sit at their default, which for finite defaults means
    the defaults are equal.
    """
    s_inf_default = isinstance(s.default, InfinityType)
    t_inf_default = isinstance(t.default, InfinityType)
    if s_inf_default != t_inf_default:
        return False
    if s_inf_default:
        # Infinite positions are cofinite on both sides; they coincide iff
        # the finitely many finite-valued primes coincide as sets.
        return s.finite_exception_primes() == t.finite_exception_primes()
    if s.infinite_exception_primes() != t.infinite_exception_primes():
        return False
    # Finite defaults rule all but finitely many primes, so any default
    # mismatch already diverges.
    return s.default == t.default


class TypeClass:
    """Canonical form of a similarity class of height sequences.

    Finite deviations from a finite default carry no invariant content and
    are erased; only the default and the set of off-default infinity
    positions (finite default) or finite positions (infinite default)
    survive.
    """

    __slots__ = ("_default", "_infinite_primes", "_finite_primes")

    def __init__(
        self,
        default: Height = 0,
        infinite_primes: Iterable[int] = (),
        finite_primes: Iterable[int] = (),
    ):
        if not is_height(default):
            raise DomainError("type default must be a non-negative integer or inf")
        inf_primes = frozenset(infinite_primes)
        fin_primes = frozenset(finite_primes)
        for p in inf_primes | fin_primes:
            if not is_prime(p):
                raise DomainError(f"type prime {p} is not prime")
        if isinstance(default, InfinityType):
            if inf_primes:
                raise DomainError("infinite default cannot list infinite primes")
        elif fin_primes:
            raise DomainError("finite default cannot list finite primes")
        self._default = default
        self._infinite_primes = inf_primes
        self._finite_primes = fin_primes

    @property
    def default(self) -> Height:
        return self._default

    @property
    def infinite_primes(self) -> frozenset[int]:
        return self._infinite_primes

    @property
    def finite_primes(self) -> frozenset[int]:
        return self._finite_primes

    def canonical_heights(self) -> HeightSequence:
        """The distinguished representative sequence of this class.

        Finite positions under an infinite default are normalized to 0;
        any finite value there would be similar.
        """
        if isinstance(self._default, InfinityType):
            return HeightSequence(INFINITY, {p: 0 for p in self._finite_primes})
        return HeightSequence(
            self._default, {p: INFINITY for p in self._infinite_primes}
        )

    def __eq__(self, other):
        if not isinstance(other, TypeClass):
            return NotImplemented
        return (
            self._default == other._default
            and self._infinite_primes == other._infinite_primes
            and self._finite_primes == other._finite_primes
        )

    def __hash__(self):
        return hash((self._default, self._infinite_primes, self._finite_primes))

    def __repr__(self):
        return (
            f"TypeClass({self._default!r}, infinite_primes={sorted(self._infinite_primes)}, "
            f"finite_primes={sorted(self._finite_primes)})"
        )

    def __str__(self):
        return str(self.canonical_heights())


def type_of(s: HeightSequence) -> TypeClass:
    """The similarity class of s, as canonical data.

    type_of(s) == type_of(t) exactly when similar(s, t).
    """
    if isinstance(s.default, InfinityType):
        return TypeClass(INFINITY, finite_primes=s.finite_exception_primes())
    return TypeClass(s.default, infinite_primes=s.infinite_exception_primes())


class LocalIso(Enum):
    """Isomorphism class of a rank-one group localized at a prime."""

    LOCAL_INTEGERS = "Z_(p)"
    RATIONALS = "Q"


class RankOneGroup:
    """The subgroup of the rationals cut out by a height sequence.

    Membership is the divisibility condition: q belongs iff for every
    prime p the p-adic valuation of q is at least -height(p). All heights
    are non-negative, so the group always contains the integers.
    """

    __slots__ = ("_heights",)

    def __init__(self, heights: HeightSequence):
        self._heights = heights

    @property
    def heights(self) -> HeightSequence:
        return self._heights

    @classmethod
    def integers(cls) -> "RankOneGroup":
        return cls(HeightSequence(0))

    @classmethod
    def rationals(cls) -> "RankOneGroup":
        return cls(HeightSequence(INFINITY))

    def member(self, q: Fraction | int, prime_bound: int = DEFAULT_PRIME_BOUND) -> bool:
        """Exact membership test; factors the denominator of q.

        >>> RankOneGroup(HeightSequence(0, {2: 3})).member(Fraction(1, 8))
        True
        """
        q = Fraction(q)
        if q.denominator == 1:
            return True
        for p, e in factorize(q.denominator, prime_bound).items():
            if e > self._heights.height_at(p):
                return False
        return True

    def height(self, p: int) -> Height:
        """Height of 1 at p: the largest r with 1/p^r in the group."""
        return self._heights.height_at(p)

    def is_pseudo_integers(self) -> bool:
        """True iff the group contains no Z[1/p], i.e. every height is finite."""
        return self._heights.all_finite()

    def localize(self, p: int) -> LocalIso:
        """Isomorphism class after tensoring with the p-local integers."""
        if isinstance(self._heights.height_at(p), InfinityType):
            return LocalIso.RATIONALS
        return LocalIso.LOCAL_INTEGERS

    def type_class(self) -> TypeClass:
        """The abstract isomorphism class of this group."""
        return type_of(self._heights)

    def intersect(self, other: "RankOneGroup") -> "RankOneGroup":
        """Pointwise minimum of heights: members of both groups."""
        return RankOneGroup(_pointwise(self._heights, other._heights, min))

    def join(self, other: "RankOneGroup") -> "RankOneGroup":
        """Pointwise maximum of heights: the subgroup generated by both."""
        return RankOneGroup(_pointwise(self._heights, other._heights, max))

    def __eq__(self, other):
        if not isinstance(other, RankOneGroup):
            return NotImplemented
        return self._heights == other._heights

    def __hash__(self):
        return hash(("RankOneGroup", self._heights))

    def __repr__(self):
        return f"RankOneGroup({self._heights!r})"


def _pointwise(a: HeightSequence, b: HeightSequence, combine) -> HeightSequence:
    default = combine(a.default, b.default)
    entries: dict[int, Height] = {}
    for p in set(a.support) | set(b.support):
        entries[p] = combine(a.height_at(p), b.height_at(p))
    return HeightSequence(default, entries)


def member(q: Fraction | int, group: RankOneGroup, prime_bound: int = DEFAULT_PRIME_BOUND) -> bool:
    return group.member(q, prime_bound)
