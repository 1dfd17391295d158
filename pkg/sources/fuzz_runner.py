"""
Seeded property harness over catalog or generated instances.

Every instance is checked in its own worker thread with its own generator
`default_rng([seed, index])`, so the verdict table does not depend on
scheduling.
"""
from asyncio import gather, run, to_thread
from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable, List, Optional, Sequence

import numpy as np

from .analysis import admissible_elements, degenerate_elements, shift_counts, violating_character
from .catalog import CatalogEntry, catalog, random_instances
from .characters import MINUS_ONE, enumerate_characters
from .core import ElementId, StarSemigroup
from .manager_debug import DebugManager as DBM
from .manager_file import FileManager as FM
from .pdfun import DEFAULT_TOLERANCE, PDTable, dirac, full_measure, minus_measure, moment_function, random_measure
from .rkhs import (
    build_gram,
    dual_realization,
    involution_check,
    kernel_dimension,
    negative_squares,
    power_check,
    selfadjoint_check,
    shift_operator,
)

NegativeSquaresFn = Callable[[StarSemigroup, PDTable, ElementId], int]


@dataclass
class FuzzRow:
    instance: str
    u_label: str
    kind: str
    measures: int
    m_count: Optional[int] = None
    minus_one_count: Optional[int] = None
    max_minus_dimension: Optional[int] = None
    violations: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "ok" if not self.violations else "FAIL"


@dataclass
class FuzzResult:
    seed: int
    trials: int
    rows: List[FuzzRow]
    replays: List[str] = field(default_factory=list)

    @property
    def violation_count(self) -> int:
        return sum(len(row.violations) for row in self.rows)

    def table(self) -> str:
        """Verdict table; deterministic for a fixed seed"""
        header = f"{'instance':<32}{'u':<12}{'kind':<14}{'M':>4}{'minus':>7}{'max':>5}{'φ':>5}  verdict"
        lines = [f"# fuzz seed={self.seed} trials={self.trials}", header]
        for row in self.rows:
            cells = ["-" if x is None else str(x) for x in (row.m_count, row.minus_one_count, row.max_minus_dimension)]
            lines.append(f"{row.instance[:31]:<32}{row.u_label[:11]:<12}{row.kind:<14}"
                         f"{cells[0]:>4}{cells[1]:>7}{cells[2]:>5}{row.measures:>5}  {row.verdict}")
            lines += [f"    {v}" for v in row.violations]
        lines.append(f"# {len(self.rows)} configurations, {self.violation_count} violations")
        return "\n".join(lines)


@dataclass
class _Failure:
    check: str
    detail: str
    u: ElementId
    measure: object


def _default_negative_squares(semigroup: StarSemigroup, phi: PDTable, u: ElementId) -> int:
    return negative_squares(semigroup, phi, u)


def _admissible_row(name: str, S: StarSemigroup, u: ElementId, trials: int, rng: np.random.Generator,
                    negative_squares_fn: NegativeSquaresFn, failures: List[_Failure]) -> FuzzRow:
    counts = shift_counts(S, u)
    characters = enumerate_characters(S)
    measures = [random_measure(S, int(rng.integers(1, len(characters) + 1)), rng) for _ in range(trials)]
    extremal = minus_measure(S, u)
    if extremal.atoms:
        measures.insert(0, extremal)

    row = FuzzRow(name, S.label(u), "admissible", len(measures), counts.m_count, counts.minus_one_count, 0)

    def fail(check: str, detail: str, measure):
        row.violations.append(f"{check}: {detail}")
        failures.append(_Failure(check, detail, u, measure))

    for k, measure in enumerate(measures):
        phi = moment_function(S, measure)
        realization = build_gram(S, phi, DEFAULT_TOLERANCE)
        matrix = shift_operator(realization, u).matrix
        minus = kernel_dimension(matrix, -1)
        plus = kernel_dimension(matrix, 1)
        row.max_minus_dimension = max(row.max_minus_dimension, minus)

        squares = negative_squares_fn(S, phi, u)
        if squares != minus:
            fail("negative-squares", f"φ#{k}: {squares} negative squares, dim ker(u_φ+I) = {minus}", measure)
        if minus > counts.m_count / 2:
            fail("bound", f"φ#{k}: dim ker(u_φ+I) = {minus} > M/2 = {counts.m_count / 2}", measure)
        if not (selfadjoint_check(matrix) and involution_check(matrix)):
            fail("identities", f"φ#{k}: u_φ is not a selfadjoint involution", measure)
        expected = sum(1 for j in measure.support if characters[j](u) == MINUS_ONE)
        if minus != expected or minus + plus != realization.rank:
            fail("eigenspaces", f"φ#{k}: dims ({minus}, {plus}) for rank {realization.rank}, "
                                f"{expected} minus atoms", measure)
        dual = dual_realization(S, measure, u)
        if (dual.dimension, dual.minus_dimension, dual.plus_dimension) != (realization.rank, minus, plus):
            fail("cross-engine", f"φ#{k}: Gram ({realization.rank}, {minus}, {plus}) vs dual "
                                 f"({dual.dimension}, {dual.minus_dimension}, {dual.plus_dimension})", measure)

    if row.max_minus_dimension != counts.minus_one_count:
        fail("extremal", f"largest kernel {row.max_minus_dimension}, expected {counts.minus_one_count}", extremal)
    return row


def _violating_row(name: str, S: StarSemigroup, u: ElementId, failures: List[_Failure]) -> FuzzRow:
    row = FuzzRow(name, S.label(u), "inadmissible", 0)
    k = violating_character(S, u)
    if k is None:
        detail = "no character separates [2u] from 0 or [u] from [u*]"
        row.violations.append(f"identities: {detail}")
        failures.append(_Failure("identities", detail, u, None))
        return row
    measure = dirac(k)
    row.measures = 1
    matrix = shift_operator(build_gram(S, moment_function(S, measure)), u).matrix
    if selfadjoint_check(matrix) and involution_check(matrix):
        detail = f"Dirac measure at character {k} gives a selfadjoint involution"
        row.violations.append(f"identities: {detail}")
        failures.append(_Failure("identities", detail, u, measure))
    return row


def _degenerate_row(name: str, S: StarSemigroup, u: ElementId, failures: List[_Failure]) -> FuzzRow:
    measure = full_measure(S)
    row = FuzzRow(name, S.label(u), "3u=u, u=u*", 1)
    matrix = shift_operator(build_gram(S, moment_function(S, measure)), u).matrix
    problems = []
    if not selfadjoint_check(matrix):
        problems.append("not selfadjoint")
    if not power_check(matrix, 3):
        problems.append("M^3 != M")
    if involution_check(matrix):
        problems.append("M^2 = I")
    if kernel_dimension(matrix, 0) == 0:
        problems.append("trivial kernel")
    for problem in problems:
        row.violations.append(f"degenerate: {problem}")
        failures.append(_Failure("degenerate", problem, u, measure))
    return row


def fuzz_instance(index: int, entry: CatalogEntry, trials: int, seed: int,
                  negative_squares_fn: Optional[NegativeSquaresFn] = None,
                  replay_dir: Optional[str] = None) -> List[FuzzRow]:
    """All rows for one instance: admissible u, inadmissible u and 3u = u, u = u* elements"""
    S = entry.semigroup
    rng = np.random.default_rng([seed, index])
    negative_squares_fn = negative_squares_fn or _default_negative_squares
    failures: List[_Failure] = []
    rows = []

    admissible = admissible_elements(S)
    for u in admissible:
        rows.append(_admissible_row(entry.name, S, u, trials, rng, negative_squares_fn, failures))
    for u in S.elements:
        if u not in admissible:
            rows.append(_violating_row(entry.name, S, u, failures))
    for u in degenerate_elements(S):
        rows.append(_degenerate_row(entry.name, S, u, failures))

    if replay_dir is not None:
        for k, failure in enumerate(failures):
            bundle = FM.replay_bundle(S, failure.measure, seed, failure.u, failure.check, failure.detail)
            FM.write_replay(f"replay-{seed}-{index}-{k}", bundle, replay_dir)
    return rows


async def fuzz_async(entries: Sequence[CatalogEntry], trials: int, seed: int,
                     negative_squares_fn: Optional[NegativeSquaresFn] = None,
                     replay_dir: Optional[str] = None) -> FuzzResult:
    tasks = [
        to_thread(fuzz_instance, index, entry, trials, seed, negative_squares_fn, replay_dir)
        for index, entry in enumerate(entries)
    ]
    per_instance = await gather(*tasks)
    return FuzzResult(seed, trials, [row for rows in per_instance for row in rows])


def fuzz(source="catalog", trials: int = 50, seed: int = 0,
         negative_squares_fn: Optional[NegativeSquaresFn] = None,
         replay_dir: Optional[str] = None) -> FuzzResult:
    """
    Run the harness.

    :param source: "catalog", an instance count for generated instances, or a list of entries.
    :param trials: Random measures per admissible u.
    :param seed: Master seed.
    :param negative_squares_fn: Replacement for the negative squares count, for harness checks.
    :param replay_dir: Where to dump replay files of violations; nothing is written if None.
    :returns: The verdict table with all violations.
    """
    start = datetime.now()
    if source == "catalog":
        entries = catalog()
    elif isinstance(source, int):
        entries = random_instances(np.random.default_rng(seed), source)
    else:
        entries = list(source)
    DBM.i("Fuzzing $count instances, $trials measures each", count=len(entries), trials=trials)
    result = run(fuzz_async(entries, trials, seed, negative_squares_fn, replay_dir))
    DBM.g("Fuzz finished in $time with $count violations", time=datetime.now() - start,
          count=result.violation_count)
    return result
