"""
*-archimedean components and the semilattice they index.
"""
from dataclasses import dataclass
from itertools import product
from typing import FrozenSet, List, Tuple

from .core import ElementId, NoZeroElement, PreconditionError, StarSemigroup


@dataclass(frozen=True)
class ComponentDecomposition:
    semigroup: StarSemigroup
    components: Tuple[Tuple[ElementId, ...], ...]
    index_add: Tuple[Tuple[int, ...], ...]
    component_index: Tuple[int, ...]

    def leq(self, i: int, j: int) -> bool:
        """i <= j iff i + j = j"""
        return self.index_add[i][j] == j

    def labels(self) -> List[List[str]]:
        return [[self.semigroup.label(s) for s in block] for block in self.components]


def _dominated(semigroup: StarSemigroup) -> List[FrozenSet[ElementId]]:
    """For each s the set {m(s+s*) : 1 <= m <= n}"""
    result = []
    for s in semigroup.elements:
        base = semigroup.add(s, semigroup.conj(s))
        multiples, current = set(), base
        for _ in range(semigroup.size):
            multiples.add(current)
            current = semigroup.add(current, base)
        result.append(frozenset(multiples))
    return result


def archimedean_relation(semigroup: StarSemigroup) -> List[List[bool]]:
    """related[s][t] iff m(s+s*) ∈ t+S and n(t+t*) ∈ s+S for some m, n >= 1"""
    multiples = _dominated(semigroup)
    ideals = [frozenset(row) for row in semigroup.table]
    reaches = [[bool(multiples[s] & ideals[t]) for t in semigroup.elements] for s in semigroup.elements]
    return [[reaches[s][t] and reaches[t][s] for t in semigroup.elements] for s in semigroup.elements]


def relation_is_equivalence(semigroup: StarSemigroup) -> bool:
    related = archimedean_relation(semigroup)
    n = semigroup.size
    if not all(related[s][s] for s in range(n)):
        return False
    for s, t, r in product(range(n), repeat=3):
        if related[s][t] and related[t][r] and not related[s][r]:
            return False
    return True


def archimedean_components(semigroup: StarSemigroup) -> ComponentDecomposition:
    """
    Partition S into *-archimedean components, ordered by least member,
    together with the induced semilattice addition on component indices.
    """
    related = archimedean_relation(semigroup)
    component_index = [-1] * semigroup.size
    components: List[List[ElementId]] = []
    for s in semigroup.elements:
        if component_index[s] >= 0:
            continue
        block = [t for t in semigroup.elements if related[s][t]]
        for t in block:
            component_index[t] = len(components)
        components.append(block)

    count = len(components)
    index_add = [[-1] * count for _ in range(count)]
    for i, j in product(range(count), repeat=2):
        targets = {component_index[semigroup.add(a, b)] for a in components[i] for b in components[j]}
        if len(targets) != 1:
            raise AssertionError(f"Components {i} and {j} do not sum into a single component")
        index_add[i][j] = targets.pop()

    for i, block in enumerate(components):
        if index_add[i][i] != i:
            raise AssertionError(f"Component {i} is not closed under addition")
        if any(component_index[semigroup.conj(s)] != i for s in block):
            raise AssertionError(f"Component {i} is not closed under the involution")

    return ComponentDecomposition(
        semigroup,
        tuple(tuple(block) for block in components),
        tuple(tuple(row) for row in index_add),
        tuple(component_index),
    )


def component_of(decomposition: ComponentDecomposition, s: ElementId) -> int:
    return decomposition.component_index[s]


def hasse_edges(decomposition: ComponentDecomposition) -> List[Tuple[int, int]]:
    """Covering pairs (i, j) of the component order"""
    count = len(decomposition.components)
    below = [(i, j) for i, j in product(range(count), repeat=2) if i != j and decomposition.leq(i, j)]
    strictly = set(below)
    return [
        (i, j) for i, j in below
        if not any((i, k) in strictly and (k, j) in strictly for k in range(count))
    ]


def check_involutive_component(semigroup: StarSemigroup, u: ElementId,
                               decomposition: ComponentDecomposition = None) -> bool:
    """
    For u with 2u = 0: u lies in the component of 0 and u + S_i ⊆ S_i for all i.

    :raises NoZeroElement: If S has no zero.
    :raises PreconditionError: If 2u != 0.
    """
    if semigroup.zero is None:
        raise NoZeroElement("Locating involutive elements needs a zero element")
    if semigroup.add(u, u) != semigroup.zero:
        raise PreconditionError(f"2·{semigroup.label(u)} is not the zero element")
    decomposition = decomposition or archimedean_components(semigroup)
    index = decomposition.component_index
    if index[u] != index[semigroup.zero]:
        return False
    return all(index[semigroup.add(u, s)] == index[s] for s in semigroup.elements)


def is_cancellative(semigroup: StarSemigroup, decomposition: ComponentDecomposition, i: int) -> bool:
    """a + c = b + c implies a = b inside component i"""
    block = decomposition.components[i]
    for c in block:
        sums = [semigroup.add(a, c) for a in block]
        if len(set(sums)) != len(sums):
            return False
    return True


def check_fixed_components(semigroup: StarSemigroup, u: ElementId,
                           decomposition: ComponentDecomposition = None) -> bool:
    """
    If u + s = s for some s in S_i and i <= j, then u fixes all of S_j.
    Meant for *-separative S and u with 2u = 0, u = u*.
    """
    decomposition = decomposition or archimedean_components(semigroup)
    count = len(decomposition.components)
    fixes_some = [any(semigroup.add(u, s) == s for s in block) for block in decomposition.components]
    fixes_all = [all(semigroup.add(u, s) == s for s in block) for block in decomposition.components]
    return all(
        fixes_all[j]
        for i, j in product(range(count), repeat=2)
        if fixes_some[i] and decomposition.leq(i, j)
    )
