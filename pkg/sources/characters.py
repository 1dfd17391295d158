"""
Exact characters of finite *-semigroups and the greatest *-separative quotient.

A character value satisfies x^m = x^(m+p) where m, p are the eventual index
and period of the element, so it is 0 or a p-th root of unity. Values are
kept as exact angle fractions; no floating point comparison happens here.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from hashlib import sha256
from itertools import product
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import ElementId, Homomorphism, NoZeroElement, StarSemigroup, quotient
from .manager_debug import DebugManager as DBM

EXHAUSTIVE_LIMIT = 2_000_000


@dataclass(frozen=True)
class UnitValue:
    """Zero (angle is None) or the root of unity e^(2πi·angle), 0 <= angle < 1"""

    angle: Optional[Fraction] = None

    def __post_init__(self):
        if self.angle is not None:
            object.__setattr__(self, "angle", Fraction(self.angle) % 1)

    @classmethod
    def root(cls, numerator: int, denominator: int) -> "UnitValue":
        return cls(Fraction(numerator, denominator))

    @classmethod
    def parse(cls, text: str) -> "UnitValue":
        return cls() if text.strip() == "0" else cls(Fraction(text.strip()))

    @property
    def is_zero(self) -> bool:
        return self.angle is None

    def __mul__(self, other: "UnitValue") -> "UnitValue":
        if self.is_zero or other.is_zero:
            return ZERO
        return UnitValue(self.angle + other.angle)

    def conj(self) -> "UnitValue":
        return self if self.is_zero else UnitValue(-self.angle)

    def sort_key(self) -> Tuple[int, int, int]:
        if self.is_zero:
            return 1, 0, 0
        return 0, self.angle.denominator, self.angle.numerator

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        # exact for the values that matter most
        if self.angle == 0:
            return 1 + 0j
        if self.angle == Fraction(1, 2):
            return -1 + 0j
        return complex(np.exp(2j * np.pi * float(self.angle)))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self.angle.numerator}/{self.angle.denominator}"


ZERO = UnitValue()
ONE = UnitValue(Fraction(0))
MINUS_ONE = UnitValue(Fraction(1, 2))


@dataclass(frozen=True)
class Character:
    """Character values, one per element of the ambient semigroup"""

    values: Tuple[UnitValue, ...]

    def __call__(self, s: ElementId) -> UnitValue:
        return self.values[s]

    def __len__(self) -> int:
        return len(self.values)

    def sort_key(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple(v.sort_key() for v in self.values)

    def to_numeric(self) -> np.ndarray:
        return np.array([v.to_complex() for v in self.values], dtype=complex)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.values)


def character_value(character: Character, s: ElementId) -> UnitValue:
    return character.values[s]


def to_numeric(character: Character) -> np.ndarray:
    return character.to_numeric()


def is_character(semigroup: StarSemigroup, values: Sequence[UnitValue]) -> bool:
    """Multiplicative, star compatible, nonzero and 1 at the zero element"""
    if all(v.is_zero for v in values):
        return False
    if semigroup.zero is not None and values[semigroup.zero] != ONE:
        return False
    for s in semigroup.elements:
        if values[semigroup.conj(s)] != values[s].conj():
            return False
        for t in range(s, semigroup.size):
            if values[semigroup.add(s, t)] != values[s] * values[t]:
                return False
    return True


def admissible_values(semigroup: StarSemigroup, s: ElementId) -> List[UnitValue]:
    """Zero and the roots of unity of order dividing the period of s"""
    _, period = semigroup.orbit(s)
    return [ZERO] + [UnitValue.root(a, period) for a in range(period)]


def _constraint_degree(semigroup: StarSemigroup) -> List[int]:
    degree = [2 * semigroup.size - 1] * semigroup.size
    for row in semigroup.table:
        for x in row:
            degree[x] += 1
    return degree


@lru_cache(maxsize=256)
def enumerate_characters(semigroup: StarSemigroup) -> Tuple[Character, ...]:
    """
    All characters of `semigroup`, sorted by their canonical value vectors.

    Backtracks over the elements in order of descending constraint degree,
    propagating χ(s+t) = χ(s)χ(t) and χ(s*) = conj χ(s) after every choice.
    """
    n = semigroup.size
    degree = _constraint_degree(semigroup)
    order = sorted(semigroup.elements, key=lambda s: (-degree[s], s))
    candidates = [admissible_values(semigroup, s) for s in semigroup.elements]
    allowed = [frozenset(values) for values in candidates]
    found: List[Tuple[UnitValue, ...]] = []

    def propagate(assign: List[Optional[UnitValue]], queue: List[int]) -> bool:
        def put(x: int, value: UnitValue) -> bool:
            if assign[x] is None:
                if value not in allowed[x]:
                    return False
                assign[x] = value
                queue.append(x)
                return True
            return assign[x] == value

        while queue:
            s = queue.pop()
            value = assign[s]
            if not put(semigroup.conj(s), value.conj()):
                return False
            for t in range(n):
                if assign[t] is not None and not put(semigroup.add(s, t), value * assign[t]):
                    return False
        return True

    def search(assign: List[Optional[UnitValue]], position: int):
        while position < n and assign[order[position]] is not None:
            position += 1
        if position == n:
            if not all(v.is_zero for v in assign):
                found.append(tuple(assign))
            return
        s = order[position]
        for value in candidates[s]:
            trial = list(assign)
            trial[s] = value
            if propagate(trial, [s]):
                search(trial, position + 1)

    start: List[Optional[UnitValue]] = [None] * n
    if semigroup.zero is not None:
        start[semigroup.zero] = ONE
        if not propagate(start, [semigroup.zero]):
            return ()
    search(start, 0)

    characters = tuple(sorted((Character(values) for values in found), key=Character.sort_key))
    DBM.i("Enumerated $count characters on $size elements", count=len(characters), size=n)
    return characters


def exhaustive_characters(semigroup: StarSemigroup) -> Tuple[Character, ...]:
    """
    Brute force over every assignment of admissible values.
    Reference oracle for small instances.
    """
    candidates = [admissible_values(semigroup, s) for s in semigroup.elements]
    total = prod(len(values) for values in candidates)
    if total > EXHAUSTIVE_LIMIT:
        raise ValueError(f"Exhaustive search over {total} assignments is too large")
    found = [Character(values) for values in product(*candidates) if is_character(semigroup, values)]
    return tuple(sorted(found, key=Character.sort_key))


def character_matrix(characters: Sequence[Character]) -> np.ndarray:
    """k×n matrix of numeric character values"""
    if not characters:
        return np.zeros((0, 0), dtype=complex)
    return np.vstack([c.to_numeric() for c in characters])


def character_digest(characters: Sequence[Character]) -> str:
    """sha256 of the canonical character listing, guards measure indices"""
    listing = "\n".join(f"{k} {c}" for k, c in enumerate(characters))
    return sha256(listing.encode("utf-8")).hexdigest()


def pull_back(characters: Sequence[Character], h: Homomorphism) -> Tuple[Character, ...]:
    """Compose characters of the codomain with h"""
    return tuple(Character(tuple(c.values[h(s)] for s in h.domain.elements)) for c in characters)


@dataclass(frozen=True)
class QuotientMap:
    source: StarSemigroup
    quotient: StarSemigroup
    classes: Tuple[Tuple[ElementId, ...], ...]
    projection: Homomorphism

    def class_of(self, s: ElementId) -> ElementId:
        return self.projection(s)


def _separation_classes(semigroup: StarSemigroup) -> List[List[ElementId]]:
    characters = enumerate_characters(semigroup)
    groups: Dict[Tuple[UnitValue, ...], List[ElementId]] = {}
    for s in semigroup.elements:
        groups.setdefault(tuple(c.values[s] for c in characters), []).append(s)
    return sorted(groups.values(), key=lambda block: block[0])


@lru_cache(maxsize=256)
def separative_quotient(semigroup: StarSemigroup) -> QuotientMap:
    """S/∼ where s ∼ t iff every character agrees on s and t"""
    classes = _separation_classes(semigroup)
    result, projection = quotient(semigroup, classes)
    if not is_separative(result):
        raise AssertionError("Separative quotient is not *-separative")
    return QuotientMap(semigroup, result, tuple(tuple(block) for block in classes), projection)


def is_separative(semigroup: StarSemigroup) -> bool:
    return all(len(block) == 1 for block in _separation_classes(semigroup))


def class_of(q: QuotientMap, s: ElementId) -> ElementId:
    return q.class_of(s)


def quotient_conditions(q: QuotientMap, u: ElementId) -> Tuple[bool, bool]:
    """([2u] == [0], [u] == [u*]) evaluated in S/∼"""
    source = q.source
    if source.zero is None:
        raise NoZeroElement("Conditions on u need a zero element")
    two_u = source.add(u, u)
    return q.class_of(two_u) == q.class_of(source.zero), q.class_of(u) == q.class_of(source.conj(u))
