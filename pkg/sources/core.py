"""
Finite commutative *-semigroups.

Elements are dense indices `0..n-1` with a parallel list of labels, the
addition is a Cayley table and the involution a permutation. Everything in
the package references elements through these indices.
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .manager_debug import DebugManager as DBM

MAX_ELEMENTS = 64

ElementId = int


class SemigroupError(ValueError):
    """Malformed semigroup, homomorphism or partition"""


class SemigroupSizeError(SemigroupError):
    pass


class UnknownElement(SemigroupError):
    pass


class NoZeroElement(SemigroupError):
    pass


class PreconditionError(SemigroupError):
    pass


class InvalidSemigroup(SemigroupError):
    def __init__(self, message: str, violations: Sequence["Violation"] = ()):
        super().__init__(message)
        self.violations = list(violations)


class InvalidHomomorphism(SemigroupError):
    def __init__(self, message: str, violations: Sequence["Violation"] = ()):
        super().__init__(message)
        self.violations = list(violations)


class NotACongruence(SemigroupError):
    def __init__(self, message: str, witness: Tuple[int, ...]):
        super().__init__(message)
        self.witness = witness


class Involution(str, Enum):
    IDENTITY = "identity"
    NEGATION = "negation"


class Violation(NamedTuple):
    """A broken law together with the indices that witness it"""

    law: str
    witness: Tuple[int, ...]

    def describe(self, semigroup: Optional["StarSemigroup"] = None) -> str:
        if semigroup is None:
            return f"{self.law} at {self.witness}"
        labels = ", ".join(semigroup.label(i) for i in self.witness)
        return f"{self.law} at ({labels})"


@dataclass(frozen=True)
class StarSemigroup:
    """
    Finite commutative semigroup with involution.

    Construction only checks the shape (square table, indices in range,
    distinct labels, size cap); the algebraic laws are checked by `validate`.
    """

    names: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    star: Tuple[int, ...]
    zero: Optional[int] = None
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(str(name) for name in self.names)
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        star = tuple(int(x) for x in self.star)
        n = len(names)

        if n == 0:
            raise SemigroupError("A semigroup needs at least one element")
        if n > MAX_ELEMENTS:
            raise SemigroupSizeError(f"{n} elements exceed the limit of {MAX_ELEMENTS}")
        if len(set(names)) != n:
            duplicates = sorted({name for name in names if names.count(name) > 1})
            raise SemigroupError(f"Duplicate element labels: {', '.join(duplicates)}")
        if len(table) != n or any(len(row) != n for row in table):
            raise SemigroupError(f"Cayley table must be {n}x{n}")
        if any(not 0 <= x < n for row in table for x in row):
            raise SemigroupError("Cayley table entry out of range")
        if len(star) != n or any(not 0 <= x < n for x in star):
            raise SemigroupError("Involution must map every element into the semigroup")
        if self.zero is not None and not 0 <= self.zero < n:
            raise SemigroupError("Zero element out of range")

        object.__setattr__(self, "names", names)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    @property
    def has_zero(self) -> bool:
        return self.zero is not None

    def add(self, s: ElementId, t: ElementId) -> ElementId:
        return self.table[s][t]

    def conj(self, s: ElementId) -> ElementId:
        return self.star[s]

    def label(self, s: ElementId) -> str:
        return self.names[s]

    def index(self, label: str) -> ElementId:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"Unknown element label: {label!r}") from None

    def multiple(self, k: int, s: ElementId) -> ElementId:
        """k·s for k >= 1"""
        if k < 1:
            raise ValueError("Multiples are defined for k >= 1")
        result = s
        for _ in range(k - 1):
            result = self.table[result][s]
        return result

    def orbit(self, s: ElementId) -> Tuple[int, int]:
        """
        Eventual index m and period p of s: m·s = (m+p)·s, both minimal.
        The sequence s, 2s, 3s, ... repeats within n steps.
        """
        seen: Dict[int, int] = {}
        current, k = s, 1
        while current not in seen:
            seen[current] = k
            current = self.table[current][s]
            k += 1
        first = seen[current]
        return first, k - first

    def as_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.intp)

    def shifted(self, u: ElementId) -> Tuple[int, ...]:
        """The map s -> s + u as a tuple"""
        return tuple(self.table[s][u] for s in self.elements)


def validate(semigroup: StarSemigroup) -> List[Violation]:
    """
    Check the *-semigroup laws.

    :param semigroup: Instance to check.
    :returns: Violations with witness indices; empty iff every law holds.
    """
    report: List[Violation] = []
    n = semigroup.size
    table = semigroup.as_array()
    star = np.asarray(semigroup.star, dtype=np.intp)

    for i, j in zip(*np.nonzero(table != table.T)):
        if i < j:
            report.append(Violation("commutativity", (int(i), int(j))))

    # lhs[i, j, k] = (i + j) + k, rhs[i, j, k] = i + (j + k)
    lhs = table[table, :]
    rhs = table[np.arange(n)[:, None, None], table[None, :, :]]
    for i, j, k in np.argwhere(lhs != rhs):
        report.append(Violation("associativity", (int(i), int(j), int(k))))

    for i in np.nonzero(star[star] != np.arange(n))[0]:
        report.append(Violation("involution", (int(i),)))

    bad = star[table] != table[star[:, None], star[None, :]]
    for i, j in np.argwhere(bad):
        if i <= j:
            report.append(Violation("star-additivity", (int(i), int(j))))

    if semigroup.zero is not None:
        for i in np.nonzero(table[semigroup.zero] != np.arange(n))[0]:
            report.append(Violation("zero", (semigroup.zero, int(i))))

    return report


def _checked(semigroup: StarSemigroup, what: str) -> StarSemigroup:
    report = validate(semigroup)
    if report:
        raise InvalidSemigroup(f"{what} violates {report[0].describe(semigroup)}", report)
    return semigroup


@dataclass(frozen=True)
class Homomorphism:
    """Map between two *-semigroups given by its values on element indices"""

    domain: StarSemigroup
    codomain: StarSemigroup
    mapping: Tuple[int, ...]
    zero_preserving: bool = False

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        if len(mapping) != self.domain.size:
            raise InvalidHomomorphism("Map must be defined on every element of the domain")
        if any(not 0 <= x < self.codomain.size for x in mapping):
            raise InvalidHomomorphism("Map value outside of the codomain")
        object.__setattr__(self, "mapping", mapping)

    def __call__(self, s: ElementId) -> ElementId:
        return self.mapping[s]

    @classmethod
    def identity(cls, semigroup: StarSemigroup) -> "Homomorphism":
        return cls(semigroup, semigroup, tuple(semigroup.elements), zero_preserving=semigroup.has_zero)

    @classmethod
    def constant(cls, domain: StarSemigroup, codomain: StarSemigroup, value: ElementId) -> "Homomorphism":
        """Constant map; a *-homomorphism iff `value` is a selfadjoint idempotent"""
        return cls(domain, codomain, (value,) * domain.size)

    @classmethod
    def from_label_map(cls, domain: StarSemigroup, codomain: StarSemigroup, labels: Mapping[str, str],
                       zero_preserving: bool = False) -> "Homomorphism":
        mapping = tuple(codomain.index(labels[domain.label(s)]) for s in domain.elements)
        return cls(domain, codomain, mapping, zero_preserving)

    @property
    def is_onto(self) -> bool:
        return set(self.mapping) == set(self.codomain.elements)

    @property
    def preserves_zero(self) -> bool:
        return (
            self.domain.zero is not None
            and self.codomain.zero is not None
            and self.mapping[self.domain.zero] == self.codomain.zero
        )

    def violations(self) -> List[Violation]:
        report = []
        dom, cod, h = self.domain, self.codomain, self.mapping
        for s, t in product(dom.elements, repeat=2):
            if s <= t and h[dom.add(s, t)] != cod.add(h[s], h[t]):
                report.append(Violation("additivity", (s, t)))
        for s in dom.elements:
            if h[dom.conj(s)] != cod.conj(h[s]):
                report.append(Violation("star-compatibility", (s,)))
        if self.zero_preserving and dom.zero is not None and cod.zero is not None and not self.preserves_zero:
            report.append(Violation("zero-preservation", (dom.zero,)))
        return report

    def compose(self, after: "Homomorphism") -> "Homomorphism":
        """`after` ∘ self"""
        if after.domain is not self.codomain and after.domain != self.codomain:
            raise InvalidHomomorphism("Cannot compose: codomain and domain differ")
        mapping = tuple(after.mapping[x] for x in self.mapping)
        return Homomorphism(self.domain, after.codomain, mapping, self.zero_preserving and after.zero_preserving)


def make_cyclic(n: int, involution: Involution = Involution.IDENTITY) -> StarSemigroup:
    """Z_n with addition mod n; s* = s or s* = -s"""
    if n < 1:
        raise SemigroupError("Cyclic group order must be at least 1")
    involution = Involution(involution)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    star = list(range(n)) if involution is Involution.IDENTITY else [(-i) % n for i in range(n)]
    return _checked(StarSemigroup([str(i) for i in range(n)], table, star, 0), f"Z_{n}")


def make_power_z2(m: int) -> StarSemigroup:
    """Z_2^m with identical involution; labels are coordinate tuples"""
    if m < 1:
        raise SemigroupError("Exponent must be at least 1")
    if 2 ** m > MAX_ELEMENTS:
        raise SemigroupSizeError(f"Z_2^{m} has {2 ** m} elements, limit is {MAX_ELEMENTS}")
    n = 2 ** m
    # first coordinate is the most significant bit, so addition is xor
    names = ["(" + ",".join(str(bit) for bit in bits) + ")" for bits in product((0, 1), repeat=m)]
    table = [[i ^ j for j in range(n)] for i in range(n)]
    return _checked(StarSemigroup(names, table, list(range(n)), 0), f"Z_2^{m}")


def make_truncated_nat(T: int) -> StarSemigroup:
    """{0..T} with saturating addition min(a+b, T)"""
    if T < 1:
        raise SemigroupError("Truncation level must be at least 1")
    table = [[min(a + b, T) for b in range(T + 1)] for a in range(T + 1)]
    return _checked(StarSemigroup([str(a) for a in range(T + 1)], table, list(range(T + 1)), 0), f"N_{T}")


def make_max_nat(T: int) -> StarSemigroup:
    """{0..T} with max as the operation"""
    if T < 1:
        raise SemigroupError("Truncation level must be at least 1")
    table = [[max(a, b) for b in range(T + 1)] for a in range(T + 1)]
    return _checked(StarSemigroup([str(a) for a in range(T + 1)], table, list(range(T + 1)), 0), f"max_{T}")


def direct_product(first: StarSemigroup, second: StarSemigroup) -> StarSemigroup:
    """Componentwise addition and involution, element (a, b) at index a*|second| + b"""
    n1, n2 = first.size, second.size
    if n1 * n2 > MAX_ELEMENTS:
        raise SemigroupSizeError(f"Product has {n1 * n2} elements, limit is {MAX_ELEMENTS}")
    pairs = list(product(range(n1), range(n2)))
    names = [f"({first.label(a)},{second.label(b)})" for a, b in pairs]
    table = [[first.add(a, c) * n2 + second.add(b, d) for c, d in pairs] for a, b in pairs]
    star = [first.conj(a) * n2 + second.conj(b) for a, b in pairs]
    zero = None
    if first.zero is not None and second.zero is not None:
        zero = first.zero * n2 + second.zero
    return _checked(StarSemigroup(names, table, star, zero), "Direct product")


def amalgam(left: StarSemigroup, right: StarSemigroup, h: Homomorphism) -> StarSemigroup:
    """
    The amalgam U(S, T, h) on the disjoint union of S (`left`) and T (`right`).

    Sums inside S or T are kept, a mixed sum s + t is h(s) + t in T. Elements
    of S come first. Colliding labels are prefixed with "S." and "T.".
    """
    if h.domain != left or h.codomain != right:
        raise InvalidHomomorphism("Homomorphism must map the first semigroup into the second")
    broken = h.violations()
    if broken:
        raise InvalidHomomorphism(f"Not a *-homomorphism: {broken[0].describe(left)}", broken)

    ns, nt = left.size, right.size
    if ns + nt > MAX_ELEMENTS:
        raise SemigroupSizeError(f"Amalgam has {ns + nt} elements, limit is {MAX_ELEMENTS}")

    collisions = set(left.names) & set(right.names)
    names = [f"S.{x}" if x in collisions else x for x in left.names]
    names += [f"T.{x}" if x in collisions else x for x in right.names]

    def total(a: int, b: int) -> int:
        if a < ns and b < ns:
            return left.add(a, b)
        if a >= ns and b >= ns:
            return ns + right.add(a - ns, b - ns)
        s, t = (a, b - ns) if a < ns else (b, a - ns)
        return ns + right.add(h(s), t)

    size = ns + nt
    table = [[total(a, b) for b in range(size)] for a in range(size)]
    star = list(left.star) + [ns + x for x in right.star]
    zero = left.zero if h.preserves_zero else None
    DBM.i("Built amalgam with $size elements", size=size)
    return _checked(StarSemigroup(names, table, star, zero), "Amalgam")


def quotient(semigroup: StarSemigroup, partition: Iterable[Iterable[ElementId]]) -> Tuple[StarSemigroup, Homomorphism]:
    """
    Quotient by a congruence.

    Classes are ordered by their least member and labelled "[least label]".

    :returns: The quotient semigroup and the canonical surjection.
    :raises NotACongruence: If the partition is incompatible with + or *.
    """
    classes = sorted((sorted(set(block)) for block in partition if block), key=lambda block: block[0])
    members = [s for block in classes for s in block]
    if sorted(members) != list(semigroup.elements):
        raise SemigroupError("Partition must contain every element exactly once")

    class_of = [0] * semigroup.size
    for k, block in enumerate(classes):
        for s in block:
            class_of[s] = k

    for block in classes:
        first = block[0]
        for other in block[1:]:
            if class_of[semigroup.conj(first)] != class_of[semigroup.conj(other)]:
                raise NotACongruence(
                    f"{semigroup.label(first)}* and {semigroup.label(other)}* land in different classes",
                    (first, other),
                )
            for c in semigroup.elements:
                if class_of[semigroup.add(first, c)] != class_of[semigroup.add(other, c)]:
                    raise NotACongruence(
                        f"{semigroup.label(first)}+{semigroup.label(c)} and "
                        f"{semigroup.label(other)}+{semigroup.label(c)} land in different classes",
                        (first, other, c),
                    )

    names = [f"[{semigroup.label(block[0])}]" for block in classes]
    table = [[class_of[semigroup.add(a[0], b[0])] for b in classes] for a in classes]
    star = [class_of[semigroup.conj(block[0])] for block in classes]
    zero = class_of[semigroup.zero] if semigroup.zero is not None else None
    result = _checked(StarSemigroup(names, table, star, zero), "Quotient")
    return result, Homomorphism(semigroup, result, class_of, zero_preserving=semigroup.has_zero)
