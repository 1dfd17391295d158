"""
Built-in example suite: exact finite reproductions of the classical examples
(Z_2^m, the two amalgams, the degenerate 3u = u case) and the property
sweeps over the catalog.
"""
from datetime import datetime
from typing import Callable, List, NamedTuple, Tuple

import numpy as np

from .analysis import (
    admissible_elements,
    analyze,
    quotient_kernel_check,
    krein_conditions,
    projection_spectra_check,
    shift_counts,
    violating_character,
    Verdict,
)
from .catalog import catalog, z2_truncated_amalgam, z2_square_amalgam, z4_truncated_product
from .characters import MINUS_ONE, ONE, enumerate_characters, exhaustive_characters, separative_quotient
from .core import Involution, make_cyclic, make_power_z2
from .fuzz_runner import FuzzResult, fuzz
from .manager_debug import DebugManager as DBM
from .pdfun import (
    DualMeasure,
    dirac,
    full_measure,
    minus_measure,
    moment_function,
    random_measure,
    uniform_measure,
)
from .rkhs import build_gram, involution_check, kernel_dimension, power_check, selfadjoint_check, shift_operator


class CriterionResult(NamedTuple):
    key: str
    title: str
    passed: bool
    detail: str
    elapsed: float


def _dims(S, measure: DualMeasure, u: int) -> Tuple[int, int, int]:
    realization = build_gram(S, moment_function(S, measure))
    matrix = shift_operator(realization, u).matrix
    return realization.rank, kernel_dimension(matrix, -1), kernel_dimension(matrix, 1)


def _unit_vector(m: int, position: int) -> str:
    return "(" + ",".join("1" if k == position else "0" for k in range(m)) + ")"


def check_power_z2() -> Tuple[bool, str]:
    """Characters of Z_2^m, and dims (k+l, k, l) for k minus-atoms and l plus-atoms"""
    failures = []
    for m in range(1, 5):
        S = make_power_z2(m)
        u = S.index(_unit_vector(m, 0))
        characters = enumerate_characters(S)
        minus = [k for k, c in enumerate(characters) if c(u) == MINUS_ONE]
        plus = [k for k, c in enumerate(characters) if c(u) == ONE]
        half = 2 ** (m - 1)
        if len(characters) != 2 ** m or len(minus) != half:
            failures.append(f"m={m}: {len(characters)} characters, {len(minus)} with σ(u) = -1")
            continue
        for k in range(half + 1):
            for l in range(half + 1):
                dims = _dims(S, uniform_measure(minus[:k] + plus[:l]), u)
                if dims != (k + l, k, l):
                    failures.append(f"m={m} (k,l)=({k},{l}): got {dims}")
    return not failures, "; ".join(failures) or "m = 1..4, every (k, l)"


def check_two_elements() -> Tuple[bool, str]:
    """
    Independent kernels for u = e_1 and e = e_2. Pairs with l1 - 2^(m-2) > l2
    cannot be realized: every character with σ(u) = -1 beyond 2^(m-2) of them
    also has σ(e) = -1.
    """
    failures, realized, skipped = [], 0, 0
    for m in range(2, 5):
        S = make_power_z2(m)
        u, e = S.index(_unit_vector(m, 0)), S.index(_unit_vector(m, 1))
        characters = enumerate_characters(S)

        def having(at_u, at_e):
            return [k for k, c in enumerate(characters) if c(u) == at_u and c(e) == at_e]

        quarter = 2 ** (m - 2)
        for l1 in range(2 * quarter + 1):
            for l2 in range(quarter + 1):
                forced = max(0, l1 - quarter)
                if forced > l2:
                    skipped += 1
                    continue
                atoms = having(MINUS_ONE, ONE)[:l1 - forced] + having(MINUS_ONE, MINUS_ONE)[:forced]
                atoms += having(ONE, MINUS_ONE)[:l2 - forced]
                phi = moment_function(S, uniform_measure(atoms))
                realization = build_gram(S, phi)
                got = (
                    kernel_dimension(shift_operator(realization, u).matrix, -1),
                    kernel_dimension(shift_operator(realization, e).matrix, -1),
                )
                realized += 1
                if got != (l1, l2):
                    failures.append(f"m={m} (l1,l2)=({l1},{l2}): got {got}")
    return not failures, "; ".join(failures) or f"{realized} pairs realized, {skipped} pairs unattainable"


def check_amalgam_bounds() -> Tuple[bool, str]:
    S = z2_square_amalgam()
    failures = []
    for label, m_count, kernel in (("(1,0)", 6, 3), ("(0,1)", 4, 2)):
        u = S.index(label)
        counts = shift_counts(S, u)
        _, minus, _ = _dims(S, minus_measure(S, u), u)
        if counts.m_count != m_count or minus != kernel or minus != counts.m_count / 2:
            failures.append(f"u={label}: M={counts.m_count}, kernel {minus}")
    zero = S.index("(0,0)")
    _, minus, _ = _dims(S, full_measure(S), zero)
    if minus != 0:
        failures.append(f"u=(0,0): kernel {minus}")
    return not failures, "; ".join(failures) or "M = 6, 4 with kernels 3, 2; u = (0,0) gives 0"


def check_truncated_amalgam(seed: int = 0, trials: int = 50) -> Tuple[bool, str]:
    failures = []
    for T in (2, 4, 8):
        S = z2_truncated_amalgam(T)
        u = S.index("S.1")
        count = len(enumerate_characters(S))
        rng = np.random.default_rng([seed, T])
        largest = 0
        for _ in range(trials):
            _, minus, _ = _dims(S, random_measure(S, int(rng.integers(1, count + 1)), rng), u)
            largest = max(largest, minus)
        if largest > 1:
            failures.append(f"T={T}: kernel {largest}")
        if not quotient_kernel_check(S, u, trials=10, seed=rng):
            failures.append(f"T={T}: kernels differ across the separative projection")
    return not failures, "; ".join(failures) or f"T = 2, 4, 8: kernel at most 1 over {trials} measures"


def check_identities_equivalence() -> Tuple[bool, str]:
    """Selfadjoint involution for admissible u, Dirac counterexample otherwise"""
    failures = []
    for n in (3, 4):
        for involution in Involution:
            S = make_cyclic(n, involution)
            for u in S.elements:
                if all(krein_conditions(S, u)):
                    matrix = shift_operator(build_gram(S, moment_function(S, full_measure(S))), u).matrix
                    if not (selfadjoint_check(matrix) and involution_check(matrix)):
                        failures.append(f"Z_{n} {involution.value} u={u}: identities fail")
                    continue
                k = violating_character(S, u)
                matrix = shift_operator(build_gram(S, moment_function(S, dirac(k))), u).matrix
                if selfadjoint_check(matrix) and involution_check(matrix):
                    failures.append(f"Z_{n} {involution.value} u={u}: Dirac at {k} gives an involution")
    return not failures, "; ".join(failures) or "Z_3, Z_4 with both involutions"


def check_fuzz(result: FuzzResult, checks: Tuple[str, ...]) -> Tuple[bool, str]:
    broken = [f"{row.instance} u={row.u_label}: {v}" for row in result.rows for v in row.violations
              if v.split(":", 1)[0] in checks]
    return not broken, "; ".join(broken[:5]) or f"{len(result.rows)} configurations, no violations"


def check_projection_transfer(seed: int = 0, trials: int = 10) -> Tuple[bool, str]:
    failures = []
    for index, entry in enumerate(catalog()):
        S = entry.semigroup
        q = separative_quotient(S)
        rng = np.random.default_rng([seed, index])
        count = len(enumerate_characters(q.quotient))
        for u in admissible_elements(S):
            for _ in range(trials):
                psi = moment_function(q.quotient, random_measure(q.quotient, int(rng.integers(1, count + 1)), rng))
                if not projection_spectra_check(S, q.quotient, q.projection, u, psi):
                    failures.append(f"{entry.name} u={S.label(u)}: spectra differ")
                    break
            if not quotient_kernel_check(S, u, trials=trials, seed=rng):
                failures.append(f"{entry.name} u={S.label(u)}: kernels differ")
    return not failures, "; ".join(failures) or "every catalog instance and admissible u"


def check_enumeration() -> Tuple[bool, str]:
    failures = []
    for entry in catalog():
        S = entry.semigroup
        if S.size <= 6 and enumerate_characters(S) != exhaustive_characters(S):
            failures.append(f"{entry.name}: backtracking and exhaustive search differ")
    expected = {
        "Z_2": (make_cyclic(2), 2),
        "Z_2^2": (make_power_z2(2), 4),
        "Z_3 identity": (make_cyclic(3), 1),
        "Z_3 negation": (make_cyclic(3, Involution.NEGATION), 3),
        "U(Z_2^2, Z_2, pi)": (z2_square_amalgam(), 6),
    }
    for name, (S, count) in expected.items():
        got = len(enumerate_characters(S))
        if got != count:
            failures.append(f"{name}: {got} characters, expected {count}")
    return not failures, "; ".join(failures) or "exhaustive search agrees on every instance with n <= 6"


def check_degenerate() -> Tuple[bool, str]:
    S = z2_square_amalgam()
    u = S.index("1")
    report = analyze(S, u, [full_measure(S)], name="U(Z_2^2, Z_2, pi)")
    matrix = shift_operator(build_gram(S, moment_function(S, full_measure(S))), u).matrix
    problems = []
    if not selfadjoint_check(matrix) or not power_check(matrix, 3):
        problems.append("shift is not a selfadjoint solution of M^3 = M")
    if involution_check(matrix):
        problems.append("M^2 = I")
    if kernel_dimension(matrix, 0) == 0:
        problems.append("kernel is trivial")
    if report.verdict is not Verdict.NOT_A_SYMMETRY or not report.notes:
        problems.append(f"verdict {report.verdict.value}")
    return not problems, "; ".join(problems) or f"dim ker(u_φ) = {kernel_dimension(matrix, 0)}"


def check_raw_moved() -> Tuple[bool, str]:
    """Elements moved by u against classes moved by [u]; reported, only ≥ is asserted"""
    rows, ok = [], True
    for name, S, label in (("Z_4", make_cyclic(4), "2"), ("Z_4 x truncated_nat(2)", z4_truncated_product(2), "(2,0)")):
        counts = shift_counts(S, S.index(label))
        ok = ok and counts.raw_moved_count >= counts.m_count
        rows.append(f"{name} u={label}: raw {counts.raw_moved_count}, M {counts.m_count}")
    return ok, "; ".join(rows)


def run_suite(seed: int = 0, fuzz_trials: int = 25) -> List[CriterionResult]:
    """Run every check, timing each one"""
    fuzz_cache: List[FuzzResult] = []

    def fuzz_result() -> FuzzResult:
        if not fuzz_cache:
            fuzz_cache.append(fuzz("catalog", fuzz_trials, seed))
        return fuzz_cache[0]

    checks: List[Tuple[str, str, Callable[[], Tuple[bool, str]]]] = [
        ("1", "Z_2^m kernel dimensions", check_power_z2),
        ("1b", "Z_2^m two independent kernels", check_two_elements),
        ("2", "Amalgam U(Z_2^2, Z_2, π) bounds", check_amalgam_bounds),
        ("3", "Amalgam U(Z_2, truncated_nat(T), h_0) bound", lambda: check_truncated_amalgam(seed)),
        ("4", "Negative squares equal dim ker(u_φ + I)", lambda: check_fuzz(fuzz_result(), ("negative-squares",))),
        ("5", "Operator identities iff quotient conditions", check_identities_equivalence),
        ("6", "Gram and dual realizations agree", lambda: check_fuzz(fuzz_result(), ("cross-engine",))),
        ("7", "Transfer across the separative projection", lambda: check_projection_transfer(seed)),
        ("8", "Character enumeration completeness", check_enumeration),
        ("9", "Degenerate case 3u = u, u = u*", check_degenerate),
        ("10", "Moved elements against moved classes", check_raw_moved),
    ]
    results = []
    for key, title, check in checks:
        start = datetime.now()
        passed, detail = check()
        elapsed = (datetime.now() - start).total_seconds()
        (DBM.g if passed else DBM.p)("$key $title: $state in $time", key=key, title=title,
                                     state="pass" if passed else "FAIL", time=elapsed)
        results.append(CriterionResult(key, title, passed, detail, elapsed))
    return results


def render_suite(results: List[CriterionResult]) -> str:
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.key:<3} {r.title} ({DBM.elapsed(r.elapsed)}): {r.detail}"
        for r in results
    ]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return "\n".join(lines)
