from dataclasses import asdict, is_dataclass
from enum import Enum
import json
from typing import Any, List, Sequence, Tuple

import numpy as np

from .analysis import SymmetryReport
from .characters import Character, QuotientMap, character_digest
from .core import StarSemigroup, Violation
from .manager_environment import EnvironmentManager as EM
from .manager_file import FileManager as FM
from .structure import ComponentDecomposition, hasse_edges

SIGNIFICANT_DIGITS = 12


class Symbol(Enum):
    """
    Symbol version enum.
    Allows to retrieve symbols pairs by calling `Symbol.get_symbols(version)`.
    """

    VERSION_1 = "█", "░"
    VERSION_2 = "⣿", "⣀"
    VERSION_3 = "⬛", "⬜"

    @staticmethod
    def get_symbols(version: int) -> Tuple[str, str]:
        """
        Retrieves symbols pair for specified version.

        :param version: Required symbols version.
        :returns: Two strings for filled and empty symbol value in a tuple.
        """
        return Symbol[f"VERSION_{version}"].value


def make_graph(percent: float) -> str:
    """
    Make text progress bar.
    Length of the progress bar is 25 characters.

    :param percent: Completion percent of the progress bar.
    :return: The string progress bar representation.
    """
    done_block, empty_block = Symbol.get_symbols(EM.SYMBOL_VERSION)
    percent_quart = min(25, max(0, round(percent / 4)))
    return f"{done_block * percent_quart}{empty_block * (25 - percent_quart)}"


def make_list(names: List[str], texts: List[str], percents: List[float]) -> str:
    """
    Rows of [name] [quantity description] [progress bar] [percentage].
    Names are cut at 25 characters, descriptions at 20.
    """
    rows = [
        f"{n[:25]}{' ' * (25 - len(n[:25]))}{t[:20]}{' ' * (20 - len(t[:20]))}{make_graph(p)}   {p:06.2f} % "
        for n, t, p in zip(names, texts, percents)
    ]
    return "\n".join(rows)


def _round(value: float) -> float:
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def canonical(value: Any) -> Any:
    """
    JSON-ready copy: floats at 12 significant digits, complex as [re, im],
    enums by value, tuples as lists.
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _round(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return [_round(value.real), _round(value.imag)]
    if isinstance(value, np.ndarray):
        return canonical(value.tolist())
    if is_dataclass(value) and not isinstance(value, type):
        return canonical(asdict(value))
    if isinstance(value, tuple) and hasattr(value, "_asdict"):
        return canonical(value._asdict())
    if isinstance(value, dict):
        return {str(k): canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [canonical(v) for v in value]
    return value


def dumps(value: Any) -> str:
    return json.dumps(canonical(value), sort_keys=True, ensure_ascii=False, indent=2)


def report_to_dict(report: SymmetryReport) -> dict:
    records = []
    for record in report.records:
        entry = asdict(record)
        entry["cross_engine_ok"] = record.cross_engine_ok
        records.append(entry)
    return {
        "instance": report.instance,
        "instance_hash": report.instance_hash,
        "u": report.u_label,
        "quotient_conditions": {
            "two_u_is_zero": report.quotient_conditions[0],
            "u_is_selfadjoint": report.quotient_conditions[1],
        },
        "counts": report.counts._asdict(),
        "character_digest": report.character_digest,
        "records": records,
        "achieved": report.achieved,
        "verdict": report.verdict,
        "notes": report.notes,
        "violations": report.violations(),
    }


def render_report(report: SymmetryReport) -> str:
    two_u, selfadjoint = report.quotient_conditions
    counts = report.counts
    lines = [
        f"Instance {report.instance} ({report.instance_hash[:12]}), u = {report.u_label}",
        f"[2u] = 0: {two_u}    [u] = [u*]: {selfadjoint}",
        f"M = {counts.m_count}    characters with σ(u) = -1: {counts.minus_one_count}    "
        f"elements moved by u: {counts.raw_moved_count}",
        "",
    ]
    names, texts, percents = [], [], []
    for k, record in enumerate(report.records):
        names.append(f"φ#{k} ({record.provenance}, rank {record.rank})")
        texts.append(f"-1: {record.minus_dimension}  +1: {record.plus_dimension}")
        percents.append(100 * record.minus_dimension / report.bound if report.bound else 0.0)
        lines.append(
            f"φ#{k}: selfadjoint={record.selfadjoint} involutive={record.involutive} "
            f"negative squares={record.negative_squares} bound ok={record.bound_ok} "
            f"dim ker(u)={record.null_dimension}"
        )
    if names:
        lines += ["", "Share of the bound M/2 used by dim ker(u_φ + I), eigenspace dimensions at -1 and +1:",
                  make_list(names, texts, percents)]
    lines += ["", f"Verdict: {report.verdict.value}"]
    lines += [f"Note: {note}" for note in report.notes]
    lines += [f"VIOLATION {v}" for v in report.violations()]
    return "\n".join(lines)


def render_violations(semigroup: StarSemigroup, violations: Sequence[Violation]) -> str:
    if not violations:
        return f"Valid *-semigroup with {semigroup.size} elements"
    return "\n".join(v.describe(semigroup) for v in violations)


def render_characters(semigroup: StarSemigroup, characters: Sequence[Character], as_json: bool = False) -> str:
    if as_json:
        return dumps({
            "digest": character_digest(characters),
            "elements": list(semigroup.names),
            "characters": [
                {"index": k, "values": [str(v) for v in c.values], "numeric": c.to_numeric()}
                for k, c in enumerate(characters)
            ],
        })
    lines = [f"# {len(characters)} characters, digest {character_digest(characters)}",
             f"# elements: {' '.join(semigroup.names)}"]
    lines += [f"{k}: {c}" for k, c in enumerate(characters)]
    return "\n".join(lines)


def render_quotient(q: QuotientMap, as_json: bool = False) -> str:
    source, result = q.source, q.quotient
    mapping = {source.label(s): result.label(q.class_of(s)) for s in source.elements}
    if as_json:
        return dumps({"quotient": FM.format_semigroup(result), "classes": mapping})
    lines = [FM.format_semigroup(result).rstrip("\n"), "# class map"]
    lines += [f"# {label} -> {target}" for label, target in mapping.items()]
    return "\n".join(lines)


def render_components(decomposition: ComponentDecomposition, as_json: bool = False) -> str:
    data = {
        "classes": decomposition.labels(),
        "index_add": decomposition.index_add,
        "hasse_edges": hasse_edges(decomposition),
    }
    if as_json:
        return dumps(data)
    lines = [f"S_{i}: {' '.join(block)}" for i, block in enumerate(data["classes"])]
    lines += [f"S_{i} <= S_{j}" for i, j in data["hasse_edges"]]
    return "\n".join(lines)
