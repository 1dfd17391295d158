"""
Named instances used by the example suite and the fuzz harness.
"""
from typing import Callable, List, NamedTuple

import numpy as np

from .core import (
    Homomorphism,
    Involution,
    StarSemigroup,
    amalgam,
    direct_product,
    make_cyclic,
    make_max_nat,
    make_power_z2,
    make_truncated_nat,
)

GENERATED_SIZE_LIMIT = 24


class CatalogEntry(NamedTuple):
    name: str
    semigroup: StarSemigroup


def z2_square_amalgam() -> StarSemigroup:
    """U(Z_2², Z_2, π) with π the projection onto the first coordinate"""
    left, right = make_power_z2(2), make_cyclic(2)
    projection = Homomorphism.from_label_map(
        left, right, {"(0,0)": "0", "(0,1)": "0", "(1,0)": "1", "(1,1)": "1"}, zero_preserving=True
    )
    return amalgam(left, right, projection)


def z2_truncated_amalgam(T: int) -> StarSemigroup:
    """U(Z_2, truncated_nat(T), h_0); the generator of Z_2 is labelled "S.1" """
    left, right = make_cyclic(2), make_truncated_nat(T)
    return amalgam(left, right, Homomorphism.constant(left, right, right.zero))


def z2_truncated_product(T: int) -> StarSemigroup:
    return direct_product(make_cyclic(2), make_truncated_nat(T))


def z2_max_product(T: int) -> StarSemigroup:
    return direct_product(make_cyclic(2), make_max_nat(T))


def z4_truncated_product(T: int) -> StarSemigroup:
    """Z_4 × truncated_nat(T); u = (2,0) moves more elements than classes"""
    return direct_product(make_cyclic(4), make_truncated_nat(T))


def catalog() -> List[CatalogEntry]:
    entries = [CatalogEntry(f"Z_2^{m}", make_power_z2(m)) for m in (1, 2, 3)]
    for n in (3, 4):
        for involution in Involution:
            entries.append(CatalogEntry(f"Z_{n} ({involution.value})", make_cyclic(n, involution)))
    entries += [CatalogEntry(f"truncated_nat({T})", make_truncated_nat(T)) for T in range(1, 5)]
    entries += [CatalogEntry(f"max_nat({T})", make_max_nat(T)) for T in range(1, 5)]
    entries += [
        CatalogEntry("U(Z_2^2, Z_2, pi)", z2_square_amalgam()),
        CatalogEntry("U(Z_2, truncated_nat(4), 0)", z2_truncated_amalgam(4)),
        CatalogEntry("Z_2 x truncated_nat(3)", z2_truncated_product(3)),
        CatalogEntry("Z_2 x max_nat(3)", z2_max_product(3)),
    ]
    return entries


_ATOMS: List[CatalogEntry] = []


def _atoms() -> List[CatalogEntry]:
    if not _ATOMS:
        _ATOMS.extend([
            CatalogEntry("Z_2", make_cyclic(2)),
            CatalogEntry("Z_3-", make_cyclic(3, Involution.NEGATION)),
            CatalogEntry("Z_3", make_cyclic(3)),
            CatalogEntry("Z_4", make_cyclic(4)),
            CatalogEntry("N_2", make_truncated_nat(2)),
            CatalogEntry("max_2", make_max_nat(2)),
        ])
    return _ATOMS


def _combine(rng: np.random.Generator) -> CatalogEntry:
    atoms = _atoms()
    first, second = (atoms[int(k)] for k in rng.integers(0, len(atoms), size=2))
    combinators: List[Callable[[], CatalogEntry]] = [
        lambda: CatalogEntry(f"{first.name} x {second.name}", direct_product(first.semigroup, second.semigroup)),
        lambda: CatalogEntry(
            f"U({first.name}, {second.name})",
            amalgam(first.semigroup, second.semigroup,
                    Homomorphism.constant(first.semigroup, second.semigroup, second.semigroup.zero)),
        ),
    ]
    return combinators[int(rng.integers(0, len(combinators)))]()


def random_instances(rng: np.random.Generator, count: int) -> List[CatalogEntry]:
    """
    Products and amalgams of small atoms, at most GENERATED_SIZE_LIMIT
    elements each. Amalgams use the constant map onto the zero of the second
    factor, so every instance has a zero.
    """
    instances = []
    while len(instances) < count:
        entry = _combine(rng)
        if entry.semigroup.size > GENERATED_SIZE_LIMIT:
            continue
        if rng.random() < 0.3:
            extra = _atoms()[int(rng.integers(0, len(_atoms())))]
            if entry.semigroup.size * extra.semigroup.size <= GENERATED_SIZE_LIMIT:
                entry = CatalogEntry(f"({entry.name}) x {extra.name}",
                                     direct_product(entry.semigroup, extra.semigroup))
        instances.append(CatalogEntry(f"gen-{len(instances)}: {entry.name}", entry.semigroup))
    return instances
