"""Genus descriptors and classification rules for spheres and projective spaces.

Two classification problems are covered, both reduced to exact arithmetic
on finite data.

Rationalization genus of an odd sphere: a member is determined by a
connecting homomorphism from the rationals to Q/Z, its complete invariant
being the similarity type of the kernel. The two homotopy groups that can
vary sit in an exact sequence whose ends are read off the kernel heights:
the type of the kernel in degree n, and a sum of full Pruefer groups in
degree n-1 at exactly the primes of infinite height.

Postnikov genus of an odd sphere: members are classified by one pointed
natural number per prime. The per-prime invariant is recovered from a
cohomological fingerprint, modelled here by its arithmetic content: in the
model with invariant k at p, the obstruction operation on m times the
fundamental class (the cup square at p = 2, a first Steenrod power at odd
primes) vanishes exactly when p^k divides m. Projective spaces feed the
same machinery through degree sequences: a fiberwise degree p^k at the
prime p scales the invariant of the sphere cover by the complex dimension.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .arith import (
    NatPlus,
    PAdicApprox,
    STAR,
    StarType,
    InfinityType,
    is_nat_plus,
    is_prime,
    padic_decompose,
    primes_up_to,
)
from .connecting import ConnectingHom
from .errors import DomainError, EnumerationLimitError, FingerprintCapError
from .rankone import HeightSequence, TypeClass, type_of

#: Fingerprint searches give up past this exponent; bounded probing cannot
#: tell a larger invariant from the base point.
DEFAULT_FINGERPRINT_CAP = 64

#: Enumerations refuse to materialize more descriptors than this.
ENUMERATION_LIMIT = 10**6


def _require_odd_dimension(n: int) -> None:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise DomainError(f"dimension must be an odd integer >= 3, got {n!r}")


class TorsionShape:
    """A direct sum of full Pruefer groups, one per prime in a stored set.

    The set is either an explicit finite set of primes or the complement
    of one, mirroring the infinite-height locus of an eventually constant
    height sequence.
    """

    __slots__ = ("_primes", "_complement")

    def __init__(self, primes: Iterable[int] = (), *, complement: bool = False):
        prime_set = frozenset(primes)
        for p in prime_set:
            if not is_prime(p):
                raise DomainError(f"torsion prime {p} is not prime")
        self._primes = prime_set
        self._complement = complement

    @classmethod
    def from_heights(cls, heights: HeightSequence) -> "TorsionShape":
        """The primes where the height is infinite."""
        if isinstance(heights.default, InfinityType):
            return cls(heights.finite_exception_primes(), complement=True)
        return cls(heights.infinite_exception_primes())

    @property
    def is_empty(self) -> bool:
        return not self._complement and not self._primes

    @property
    def is_cofinite(self) -> bool:
        return self._complement

    @property
    def listed_primes(self) -> frozenset[int]:
        """The stored finite set: included primes, or excluded if cofinite."""
        return self._primes

    def contains(self, p: int) -> bool:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        return (p in self._primes) != self._complement

    def __eq__(self, other):
        if not isinstance(other, TorsionShape):
            return NotImplemented
        return self._primes == other._primes and self._complement == other._complement

    def __hash__(self):
        return hash((self._primes, self._complement))

    def __repr__(self):
        if self._complement:
            return f"TorsionShape(all primes except {sorted(self._primes)})"
        return f"TorsionShape({sorted(self._primes)})"


class RationalGenusElement:
    """A member of the extended rationalization genus of an odd sphere.

    Carries the odd dimension and the connecting homomorphism of the
    defining fibration over the rationalized sphere.
    """

    __slots__ = ("_dimension", "_hom")

    def __init__(self, dimension: int, hom: ConnectingHom):
        _require_odd_dimension(dimension)
        self._dimension = dimension
        self._hom = hom

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def hom(self) -> ConnectingHom:
        return self._hom

    def homotopy_groups(self) -> tuple[TypeClass, TorsionShape]:
        """The two variable homotopy groups, as (type in degree n, torsion
        below).

        Degree n is the kernel type. Degree n-1 collects a full Pruefer
        group at each prime of infinite kernel height: the image of a
        divisible group in the Pruefer part is zero or everything, so the
        cokernel is supported exactly where the summand was dropped.
        """
        kernel_heights = self._hom.kernel().heights
        return type_of(kernel_heights), TorsionShape.from_heights(kernel_heights)

    def is_n_minus_1_connected(self) -> bool:
        """True iff the homomorphism is surjective.

        Equivalent to the kernel being a group of pseudo-integers: every
        height finite, no Pruefer summand dropped.
        """
        return self._hom.kernel().is_pseudo_integers()

    def classify(self) -> TypeClass:
        """Complete invariant: two members agree iff their classes do."""
        return self._hom.double_coset_class()

    def __repr__(self):
        return f"RationalGenusElement(dimension={self._dimension}, hom={self._hom!r})"


def classify_rational_genus(element: RationalGenusElement) -> TypeClass:
    return element.classify()


class PostnikovGenusDescriptor:
    """One pointed natural number per prime, eventually equal to a default.

    The complete invariant for the Postnikov genus of an odd sphere; the
    standard sphere is the all-zero descriptor.
    """

    __slots__ = ("_dimension", "_default", "_exceptions")

    def __init__(
        self,
        dimension: int,
        default: NatPlus = 0,
        exceptions: Mapping[int, NatPlus] | None = None,
    ):
        _require_odd_dimension(dimension)
        if not is_nat_plus(default):
            raise DomainError("descriptor default must be a non-negative integer or *")
        cleaned: dict[int, NatPlus] = {}
        for p, value in sorted((exceptions or {}).items()):
            if not is_prime(p):
                raise DomainError(f"descriptor key {p} is not prime")
            if not is_nat_plus(value):
                raise DomainError(
                    f"descriptor entry at {p} must be a non-negative integer or *"
                )
            if value != default:
                cleaned[p] = value
        self._dimension = dimension
        self._default = default
        self._exceptions = cleaned

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def default(self) -> NatPlus:
        return self._default

    @property
    def exceptions(self) -> dict[int, NatPlus]:
        return dict(self._exceptions)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._exceptions)

    @property
    def is_standard(self) -> bool:
        return self._default == 0 and not self._exceptions

    def entry_at(self, p: int) -> NatPlus:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        return self._exceptions.get(p, self._default)

    def __eq__(self, other):
        if not isinstance(other, PostnikovGenusDescriptor):
            return NotImplemented
        return (
            self._dimension == other._dimension
            and self._default == other._default
            and self._exceptions == other._exceptions
        )

    def __hash__(self):
        return hash((self._dimension, self._default, tuple(self._exceptions.items())))

    def __repr__(self):
        return (
            f"PostnikovGenusDescriptor(dimension={self._dimension}, "
            f"default={self._default!r}, exceptions={self._exceptions!r})"
        )

    def __str__(self):
        parts = [f"default:{self._default}"]
        parts += [f"{p}:{v}" for p, v in self._exceptions.items()]
        return "{" + ", ".join(parts) + "}"


class FakeSphereModel:
    """Symbolic model of a genus member, with its cohomology oracle.

    No cell structure is modelled; the space is its descriptor plus the
    derived divisibility oracle for the per-prime obstruction operation.
    """

    __slots__ = ("_descriptor",)

    def __init__(self, descriptor: PostnikovGenusDescriptor):
        self._descriptor = descriptor

    @property
    def descriptor(self) -> PostnikovGenusDescriptor:
        return self._descriptor

    @property
    def dimension(self) -> int:
        return self._descriptor.dimension

    def operation_vanishes(self, p: int, m: int) -> bool:
        """Whether the obstruction operation kills m times the generator.

        In the model with invariant k at p this happens exactly when p^k
        divides m; in the base-point model the operation is identically
        zero.
        """
        entry = self._descriptor.entry_at(p)
        if isinstance(entry, StarType):
            return True
        return m % p**entry == 0

    def vanishes_identically(self, p: int) -> bool:
        """True iff the operation at p is zero on every multiple of the
        generator, i.e. the model carries the base point there."""
        return isinstance(self._descriptor.entry_at(p), StarType)

    def fingerprint(self, p: int, cap: int = DEFAULT_FINGERPRINT_CAP) -> NatPlus:
        """Recover the per-prime invariant from oracle probes.

        Linear search for the least k with the operation vanishing on p^k
        times the generator. The base point is reported only when the
        operation vanishes identically; a finite invariant beyond the cap
        is indistinguishable from it by bounded probing and raises instead.
        """
        if self.vanishes_identically(p):
            return STAR
        for k in range(cap + 1):
            if self.operation_vanishes(p, p**k):
                return k
        raise FingerprintCapError(
            f"fingerprint at {p} did not stabilize within cap {cap}"
        )

    def classify(self, cap: int = DEFAULT_FINGERPRINT_CAP) -> PostnikovGenusDescriptor:
        """Rebuild the descriptor from fingerprints alone.

        Probes every exceptional prime plus the smallest unexceptional one
        (which reveals the default). The sign action on the classifying
        data is trivial, so no further quotient is taken.
        """
        support = set(self._descriptor.support)
        default = self.fingerprint(_smallest_prime_outside(support), cap)
        entries = {p: self.fingerprint(p, cap) for p in support}
        return PostnikovGenusDescriptor(self.dimension, default, entries)

    def restrict_to_prime(self, p: int) -> "FakeSphereModel":
        """The single-prime model carrying this model's invariant at p."""
        return build_fake_sphere(self.dimension, p, self._descriptor.entry_at(p))

    def __eq__(self, other):
        if not isinstance(other, FakeSphereModel):
            return NotImplemented
        return self._descriptor == other._descriptor

    def __hash__(self):
        return hash(("FakeSphereModel", self._descriptor))

    def __repr__(self):
        return f"FakeSphereModel({self._descriptor!r})"


def _smallest_prime_outside(support: set[int]) -> int:
    p = 2
    while p in support or not is_prime(p):
        p += 1
    return p


def classify_postnikov_genus(
    model: FakeSphereModel, cap: int = DEFAULT_FINGERPRINT_CAP
) -> PostnikovGenusDescriptor:
    return model.classify(cap)


def build_fake_sphere(dimension: int, p: int, k: NatPlus) -> FakeSphereModel:
    """The single-prime genus member with invariant k at p.

    Invariant 0 is the fiberwise completed sphere at p; the base point is
    the product of the completed connected cover with the integral
    Eilenberg-MacLane space. Every other prime carries the base point.
    """
    _require_odd_dimension(dimension)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if not is_nat_plus(k):
        raise DomainError("invariant must be a non-negative integer or *")
    return FakeSphereModel(PostnikovGenusDescriptor(dimension, STAR, {p: k}))


def assemble_global(dimension: int, descriptor: PostnikovGenusDescriptor) -> FakeSphereModel:
    """Glue single-prime members along the diagonal into one model.

    The restriction at each prime p is the single-prime member with the
    descriptor's entry there; the all-zero descriptor models the standard
    sphere.
    """
    _require_odd_dimension(dimension)
    if descriptor.dimension != dimension:
        raise DomainError(
            f"descriptor dimension {descriptor.dimension} does not match {dimension}"
        )
    return FakeSphereModel(descriptor)


def classifying_map_class(dimension: int, p: int, z: PAdicApprox) -> NatPlus:
    """The genus invariant carried by a p-adic classifying parameter.

    A nonzero p-adic integer is p^k times a unit; units act invisibly on
    the classifying data, so only k survives. The exact zero is the base
    point. Negation changes the unit only, so z and -z land in the same
    class.
    """
    _require_odd_dimension(dimension)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if z.prime != p:
        raise DomainError(f"p-adic parameter lives at {z.prime}, not {p}")
    decomposition = padic_decompose(z)
    if isinstance(decomposition, StarType):
        return STAR
    return decomposition[0]


def cp_fake_descriptor(n: int, degree_exponents: Mapping[int, int]) -> PostnikovGenusDescriptor:
    """Descriptor of the sphere cover of a fake complex projective space.

    Choosing the fiberwise degree p^k at the prime p induces degree p^{nk}
    on the (2n+1)-sphere cover, so the covering fake sphere carries the
    entry n*k at p. Distinct exponent sequences give distinct classes.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"complex dimension must be a positive integer, got {n!r}")
    entries: dict[int, int] = {}
    for p, k in degree_exponents.items():
        if not is_prime(p):
            raise DomainError(f"degree key {p} is not prime")
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise DomainError(f"degree exponent at {p} must be a non-negative integer")
        entries[p] = n * k
    return PostnikovGenusDescriptor(2 * n + 1, 0, entries)


def enumerate_postnikov_genus(
    dimension: int, prime_bound: int, entry_bound: int
) -> list[PostnikovGenusDescriptor]:
    """All descriptors supported on primes <= prime_bound with entries in
    {*, 0..entry_bound} and default 0 elsewhere.

    Returns (entry_bound + 2) ** (number of primes) descriptors in
    lexicographic order, integers before the base point at each prime.
    """
    _require_odd_dimension(dimension)
    if prime_bound < 2:
        raise DomainError(f"prime bound must be at least 2, got {prime_bound}")
    if entry_bound < 0:
        raise DomainError(f"entry bound must be non-negative, got {entry_bound}")
    primes = primes_up_to(prime_bound)
    count = (entry_bound + 2) ** len(primes)
    if count > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"enumeration would produce {count} descriptors (limit {ENUMERATION_LIMIT})"
        )
    values: list[NatPlus] = list(range(entry_bound + 1)) + [STAR]
    return [
        PostnikovGenusDescriptor(dimension, 0, dict(zip(primes, combo)))
        for combo in itertools.product(values, repeat=len(primes))
    ]


@dataclass(frozen=True)
class Neisendorfer:
    """Marker for the nullification-plus-completion functor."""


@dataclass(frozen=True)
class PostnikovSection:
    """Marker for the Postnikov section functor at the stored level."""

    level: int

    def __post_init__(self):
        if self.level < 1:
            raise DomainError(f"Postnikov level must be >= 1, got {self.level}")


class VerdictKind(Enum):
    SINGLETON = "singleton"
    SINGLETON_AMONG_FINITE = "singleton-among-finite-complexes"
    HYPOTHESES_NOT_MET = "hypotheses-not-met"


@dataclass(frozen=True)
class GenusVerdict:
    kind: VerdictKind
    space: str
    witness: str | None = None
    reason: str = ""


_SPHERE_TAG = re.compile(r"^S(\d+)$")
_CP_TAG = re.compile(r"^CP(\d+)$")
_PRODUCT_TAGS = {"S2XS5": "S2xS5", "CP2XS3": "CP2xS3"}

#: Catalogued failures of uniqueness: for these (space, section level)
#: pairs a second finite complex shares the genus.
_KNOWN_COUNTEREXAMPLES = {
    ("S2xS5", 2): "CP2xS3",
    ("CP2xS3", 2): "S2xS5",
}


class FiniteComplexDescriptor:
    """A catalogued finite complex with the metadata the verdicts need.

    The catalogue is closed: spheres S<n> (n >= 2), complex projective
    spaces CP<n> (n >= 1), and the two products S2xS5 and CP2xS3. All are
    simply connected finite complexes; stored per space are whether the
    second homotopy group is finite and the level above which rational
    homotopy vanishes.
    """

    __slots__ = ("_tag", "_pi2_finite", "_rational_vanishing_level")

    def __init__(self, tag: str, pi2_finite: bool, rational_vanishing_level: int):
        self._tag = tag
        self._pi2_finite = pi2_finite
        self._rational_vanishing_level = rational_vanishing_level

    @classmethod
    def from_tag(cls, tag: str) -> "FiniteComplexDescriptor":
        text = tag.strip().upper()
        if text in _PRODUCT_TAGS:
            # Both products have an infinite second homotopy group and no
            # rational homotopy above degree 5.
            return cls(_PRODUCT_TAGS[text], pi2_finite=False, rational_vanishing_level=5)
        match = _SPHERE_TAG.match(text)
        if match:
            n = int(match.group(1))
            if n < 2:
                raise DomainError(f"sphere {tag} is not simply connected")
            level = n if n % 2 == 1 else 2 * n - 1
            return cls(f"S{n}", pi2_finite=(n != 2), rational_vanishing_level=level)
        match = _CP_TAG.match(text)
        if match:
            n = int(match.group(1))
            if n < 1:
                raise DomainError(f"unknown complex tag {tag!r}")
            return cls(f"CP{n}", pi2_finite=False, rational_vanishing_level=2 * n + 1)
        raise DomainError(f"unknown complex tag {tag!r}")

    @property
    def tag(self) -> str:
        return self._tag

    @property
    def pi2_finite(self) -> bool:
        return self._pi2_finite

    @property
    def rational_vanishing_level(self) -> int:
        return self._rational_vanishing_level

    def __eq__(self, other):
        if not isinstance(other, FiniteComplexDescriptor):
            return NotImplemented
        return self._tag == other._tag

    def __hash__(self):
        return hash(("FiniteComplexDescriptor", self._tag))

    def __repr__(self):
        return (
            f"FiniteComplexDescriptor({self._tag!r}, pi2_finite={self._pi2_finite}, "
            f"rational_vanishing_level={self._rational_vanishing_level})"
        )


def finite_complex_genus_verdict(
    complex_descriptor: FiniteComplexDescriptor,
    functor: Neisendorfer | PostnikovSection,
) -> GenusVerdict:
    """Apply the genus triviality rules to a catalogued finite complex.

    Under the Neisendorfer functor a simply connected finite complex with
    finite second homotopy group is alone in its genus. Under a Postnikov
    section it is additionally required that rational homotopy vanishes
    above the section level, and the conclusion is uniqueness among finite
    complexes only. When the hypotheses fail, a catalogued counterexample
    is reported if one is known for that (space, level) pair.
    """
    tag = complex_descriptor.tag
    if isinstance(functor, Neisendorfer):
        if complex_descriptor.pi2_finite:
            return GenusVerdict(
                VerdictKind.SINGLETON,
                tag,
                reason="simply connected finite complex with finite second homotopy group",
            )
        return GenusVerdict(
            VerdictKind.HYPOTHESES_NOT_MET,
            tag,
            reason="second homotopy group is infinite",
        )
    if isinstance(functor, PostnikovSection):
        witness = _KNOWN_COUNTEREXAMPLES.get((tag, functor.level))
        if not complex_descriptor.pi2_finite:
            return GenusVerdict(
                VerdictKind.HYPOTHESES_NOT_MET,
                tag,
                witness=witness,
                reason="second homotopy group is infinite",
            )
        if complex_descriptor.rational_vanishing_level > functor.level:
            return GenusVerdict(
                VerdictKind.HYPOTHESES_NOT_MET,
                tag,
                witness=witness,
                reason=(
                    "rational homotopy survives above level "
                    f"{functor.level}"
                ),
            )
        return GenusVerdict(
            VerdictKind.SINGLETON_AMONG_FINITE,
            tag,
            reason=(
                "finite second homotopy group, rational homotopy vanishes "
                f"above level {functor.level}"
            ),
        )
    raise DomainError(f"unknown genus functor {functor!r}")
