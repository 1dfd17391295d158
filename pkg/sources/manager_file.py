import json
import os
import re
from typing import Any, Dict, List, Optional, Tuple

from .characters import character_digest, enumerate_characters
from .core import StarSemigroup
from .manager_debug import DebugManager as DBM
from .manager_environment import EnvironmentManager as EM
from .pdfun import DualMeasure, PDTable


class ParseError(ValueError):
    def __init__(self, message: str, line: int, source: str = "<text>"):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line
        self.source = source


class StaleMeasureError(ValueError):
    pass


_HEADERS = ("elements", "zero", "star")


class FileManager:
    """
    Reading and writing of semigroup (.sgp), measure, function table and replay files.
    Only the replay and output writers touch the filesystem outside of
    explicitly given paths, and they are confined to their base directory.
    """

    @staticmethod
    def _content_lines(text: str) -> List[Tuple[int, str]]:
        lines = []
        for number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if stripped and not stripped.startswith("#"):
                lines.append((number, stripped))
        return lines

    @staticmethod
    def parse_semigroup_text(text: str, source: str = "<text>") -> StarSemigroup:
        """
        Parse the .sgp format: `elements:`, `zero:`, `star:` headers followed
        by one Cayley table row per element.

        :param text: File content.
        :param source: Name used in error messages.
        :returns: The semigroup; the algebraic laws are not checked here.
        :raises ParseError: With the offending line number.
        """
        lines = FileManager._content_lines(text)
        last = len(text.splitlines()) or 1
        values: Dict[str, Tuple[int, str]] = {}
        for position, header in enumerate(_HEADERS):
            if position >= len(lines):
                raise ParseError(f"Missing '{header}:' line", last, source)
            number, line = lines[position]
            key, sep, rest = line.partition(":")
            if not sep or key.strip() != header:
                raise ParseError(f"Expected '{header}:'", number, source)
            values[header] = number, rest.strip()

        number, rest = values["elements"]
        names = rest.split()
        if not names:
            raise ParseError("No elements declared", number, source)
        seen = set()
        for name in names:
            if name in seen:
                raise ParseError(f"Duplicate label {name!r}", number, source)
            seen.add(name)
        index = {name: k for k, name in enumerate(names)}

        def lookup(label: str, line_number: int) -> int:
            if label not in index:
                raise ParseError(f"Unknown label {label!r}", line_number, source)
            return index[label]

        number, rest = values["zero"]
        zero = None if rest == "-" else lookup(rest, number)

        number, rest = values["star"]
        star: List[Optional[int]] = [None] * len(names)
        for token in rest.split():
            left, arrow, right = token.partition("->")
            if not arrow:
                raise ParseError(f"Malformed involution entry {token!r}", number, source)
            k = lookup(left, number)
            if star[k] is not None:
                raise ParseError(f"Involution defined twice for {left!r}", number, source)
            star[k] = lookup(right, number)
        missing = [names[k] for k, value in enumerate(star) if value is None]
        if missing:
            raise ParseError(f"Involution is not total, missing: {' '.join(missing)}", number, source)

        rows = lines[len(_HEADERS):]
        table = []
        for row_number, line in rows:
            labels = line.split()
            if len(labels) != len(names):
                raise ParseError(f"Row has {len(labels)} entries, expected {len(names)}", row_number, source)
            table.append([lookup(label, row_number) for label in labels])
        if len(table) != len(names):
            where = rows[len(names)][0] if len(table) > len(names) else last
            raise ParseError(f"Table has {len(table)} rows, expected {len(names)}", where, source)

        return StarSemigroup(names, table, star, zero)

    @staticmethod
    def format_semigroup(semigroup: StarSemigroup) -> str:
        S = semigroup
        lines = [
            f"elements: {' '.join(S.names)}",
            f"zero: {'-' if S.zero is None else S.label(S.zero)}",
            "star: " + " ".join(f"{S.label(s)}->{S.label(S.conj(s))}" for s in S.elements),
        ]
        lines += [" ".join(S.label(x) for x in row) for row in S.table]
        return "\n".join(lines) + "\n"

    @staticmethod
    def read_semigroup(path: str) -> StarSemigroup:
        with open(path, encoding="utf-8") as file:
            text = file.read()
        DBM.i("Read semigroup file $path", path=path)
        return FileManager.parse_semigroup_text(text, path)

    @staticmethod
    def write_semigroup(semigroup: StarSemigroup, path: str):
        with open(path, "w", encoding="utf-8") as file:
            file.write(FileManager.format_semigroup(semigroup))

    @staticmethod
    def parse_measure_text(text: str, source: str = "<text>") -> Tuple[DualMeasure, Optional[str]]:
        """
        Parse `atom <index> <weight>` lines and an optional `digest <sha256>` line.

        :returns: The measure and the embedded character digest, if any.
        :raises ParseError: On malformed lines, repeated atoms or non-positive weights.
        """
        atoms, digest = [], None
        for number, line in FileManager._content_lines(text):
            parts = line.split()
            if parts[0] == "digest" and len(parts) == 2:
                digest = parts[1]
                continue
            if parts[0] != "atom" or len(parts) != 3:
                raise ParseError("Expected 'atom <index> <weight>'", number, source)
            try:
                k, weight = int(parts[1]), float(parts[2])
            except ValueError:
                raise ParseError("Atom index must be an integer and weight a number", number, source) from None
            if k < 0 or not weight > 0:
                raise ParseError("Atom index must be non-negative and weight positive", number, source)
            if any(k == other for other, _ in atoms):
                raise ParseError(f"Character {k} appears twice", number, source)
            atoms.append((k, weight))
        return DualMeasure(tuple(atoms)), digest

    @staticmethod
    def format_measure(semigroup: StarSemigroup, measure: DualMeasure) -> str:
        lines = [f"digest {character_digest(enumerate_characters(semigroup))}"]
        lines += [f"atom {k} {weight!r}" for k, weight in measure.atoms]
        return "\n".join(lines) + "\n"

    @staticmethod
    def check_measure(semigroup: StarSemigroup, measure: DualMeasure, digest: Optional[str]):
        """
        :raises StaleMeasureError: If the digest does not match the character list of `semigroup`.
        """
        characters = enumerate_characters(semigroup)
        if digest is not None and digest != character_digest(characters):
            raise StaleMeasureError("Measure file was written for a different character list")
        measure.check_range(len(characters))

    @staticmethod
    def read_measure(path: str, semigroup: StarSemigroup) -> DualMeasure:
        with open(path, encoding="utf-8") as file:
            measure, digest = FileManager.parse_measure_text(file.read(), path)
        FileManager.check_measure(semigroup, measure, digest)
        return measure

    @staticmethod
    def parse_function_text(text: str, semigroup: StarSemigroup, source: str = "<text>") -> PDTable:
        """
        Parse `value <label> <re> [<im>]` lines, one per element of `semigroup`.

        :returns: A raw function table; positive definiteness is not checked here.
        :raises ParseError: On unknown or repeated labels, bad numbers or missing elements.
        """
        values: List[Optional[complex]] = [None] * semigroup.size
        for number, line in FileManager._content_lines(text):
            parts = line.split()
            if parts[0] != "value" or len(parts) not in (3, 4):
                raise ParseError("Expected 'value <label> <re> [<im>]'", number, source)
            if parts[1] not in semigroup.names:
                raise ParseError(f"Unknown label {parts[1]!r}", number, source)
            s = semigroup.index(parts[1])
            if values[s] is not None:
                raise ParseError(f"Value for {parts[1]!r} given twice", number, source)
            try:
                values[s] = complex(float(parts[2]), float(parts[3]) if len(parts) == 4 else 0.0)
            except ValueError:
                raise ParseError("Real and imaginary parts must be numbers", number, source) from None
        missing = [semigroup.label(s) for s, value in enumerate(values) if value is None]
        if missing:
            raise ParseError(f"No value for: {' '.join(missing)}", len(text.splitlines()) or 1, source)
        return PDTable(semigroup, tuple(values))

    @staticmethod
    def format_function(table: PDTable) -> str:
        S = table.semigroup
        return "".join(f"value {S.label(s)} {v.real!r} {v.imag!r}\n" for s, v in zip(S.elements, table.values))

    @staticmethod
    def read_function(path: str, semigroup: StarSemigroup) -> PDTable:
        with open(path, encoding="utf-8") as file:
            text = file.read()
        DBM.i("Read function table $path", path=path)
        return FileManager.parse_function_text(text, semigroup, path)

    @staticmethod
    def _validate_safe_path(base_dir: str, file_path: str) -> str:
        """
        Resolve `file_path` inside `base_dir`.

        :raises ValueError: On directory traversal or symbolic links.
        """
        base_dir = os.path.abspath(base_dir)
        requested_path = os.path.abspath(os.path.join(base_dir, os.path.basename(file_path)))
        if os.path.commonpath([base_dir, requested_path]) != base_dir:
            raise ValueError("Invalid file path - outside allowed directory")
        if os.path.islink(requested_path):
            raise ValueError("Symbolic links are not allowed")
        return requested_path

    @staticmethod
    def write_file(name: str, content: str, directory: Optional[str] = None) -> str:
        """
        Save an output file into `directory` (current directory by default).

        :returns: The path written.
        :raises ValueError: If the name or path is rejected.
        """
        if not re.match(r"^[\w\-. ]+$", name):
            raise ValueError(f"Invalid filename format: {name!r}")
        base_dir = os.path.abspath(directory or os.curdir)
        os.makedirs(base_dir, exist_ok=True)
        safe_path = FileManager._validate_safe_path(base_dir, name)
        with open(safe_path, "w", encoding="utf-8") as file:
            file.write(content)
        return safe_path

    @staticmethod
    def replay_bundle(semigroup: StarSemigroup, measure: Optional[DualMeasure], seed: int, u: int, check: str,
                      detail: str = "") -> Dict[str, Any]:
        return {
            "check": check,
            "detail": detail,
            "measure": None if measure is None else FileManager.format_measure(semigroup, measure),
            "seed": seed,
            "semigroup": FileManager.format_semigroup(semigroup),
            "u": semigroup.label(u),
        }

    @staticmethod
    def write_replay(name: str, bundle: Dict[str, Any], directory: Optional[str] = None) -> str:
        path = FileManager.write_file(f"{name}.json", json.dumps(bundle, sort_keys=True, indent=2),
                                      directory or EM.REPLAY_DIR)
        DBM.w("Replay written to $path", path=path)
        return path

    @staticmethod
    def read_replay(path: str) -> Tuple[StarSemigroup, Optional[DualMeasure], int, int, str]:
        """
        :returns: Semigroup, measure, seed, u and the failed check name.
        """
        with open(path, encoding="utf-8") as file:
            bundle = json.load(file)
        semigroup = FileManager.parse_semigroup_text(bundle["semigroup"], path)
        measure = None
        if bundle.get("measure"):
            measure, digest = FileManager.parse_measure_text(bundle["measure"], path)
            FileManager.check_measure(semigroup, measure, digest)
        return semigroup, measure, int(bundle["seed"]), semigroup.index(bundle["u"]), bundle["check"]
