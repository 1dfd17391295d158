import pytest

from sources.core import make_cyclic, make_power_z2
from sources.manager_base import BaseEnvironmentManager
from sources.manager_config import Configuration
from sources.manager_debug import DebugManager
from sources.manager_environment import EnvironmentManager
from sources.manager_file import FileManager, ParseError, StaleMeasureError
from sources.pdfun import DualMeasure
from sources.rkhs import NotPositiveDefinite

Z2_TEXT = """# cyclic group of order two
elements: 0 1
zero: 0
star: 0->0 1->1
0 1
1 0
"""


@pytest.mark.parametrize("value, expected", [("true", True), ("YES", True), ("0", False), (1, True), (False, False)])
def test_is_truthy(value, expected):
    assert BaseEnvironmentManager.is_truthy(value) is expected


def test_number_parsers():
    assert BaseEnvironmentManager.positive_float("1e-6", "X") == 1e-6
    assert BaseEnvironmentManager.non_negative_int("3", "X") == 3
    with pytest.raises(ValueError):
        BaseEnvironmentManager.positive_float("0", "X")
    with pytest.raises(ValueError):
        BaseEnvironmentManager.non_negative_int("-1", "X")
    with pytest.raises(ValueError):
        BaseEnvironmentManager.non_negative_int("two", "X")


def test_environment_init_reads_variables(monkeypatch):
    monkeypatch.setenv("SHIFTS_SEED", "17")
    monkeypatch.setenv("SHIFTS_TOLERANCE", "1e-9")
    EnvironmentManager.init()
    try:
        assert EnvironmentManager.SEED == 17
        assert EnvironmentManager.TOLERANCE == 1e-9
    finally:
        monkeypatch.setenv("SHIFTS_SEED", "0")
        monkeypatch.setenv("SHIFTS_TOLERANCE", "1e-8")
        EnvironmentManager.init()


def test_configuration_setters():
    config = Configuration()
    config.command = "analyze"
    config.seed = 4
    config.tolerance = 1e-6
    config.output = "json"
    assert config.as_json
    with pytest.raises(ValueError):
        config.command = "plot"
    with pytest.raises(ValueError):
        config.tolerance = 0
    with pytest.raises(ValueError):
        config.seed = -1
    with pytest.raises(ValueError):
        config.trials = 0
    with pytest.raises(ValueError):
        config.output = "xml"
    with pytest.raises(ValueError):
        config.path


def test_error_messages(monkeypatch):
    monkeypatch.setattr(EnvironmentManager, "DEBUG_RUN", False)
    assert DebugManager.handle_error(ParseError("bad row", 4)).startswith("Parse error")
    assert DebugManager.handle_error(FileNotFoundError("x.sgp")).startswith("Cannot read input")
    message = DebugManager.handle_error(NotPositiveDefinite("phi.txt: eigenvalue -1", -1.0))
    assert message.startswith("NotPositiveDefinite")
    monkeypatch.setattr(EnvironmentManager, "DEBUG_RUN", True)
    assert DebugManager.handle_error(ValueError("boom"), "analyze") == "analyze: ValueError: boom"


def test_elapsed_is_human_readable():
    assert "second" in DebugManager.elapsed(2.5)


def test_parse_semigroup_text():
    S = FileManager.parse_semigroup_text(Z2_TEXT)
    assert S == make_cyclic(2)
    assert FileManager.parse_semigroup_text(FileManager.format_semigroup(make_power_z2(2))) == make_power_z2(2)


@pytest.mark.parametrize(
    "text, line",
    [
        ("elements: a a\nzero: a\nstar: a->a\na a\n", 1),
        ("elements: a b\nzero: -\nstar: a->a\na b\nb a\n", 3),
        ("elements: a b\nzero: a\nstar: a->a b->b\na b\nb\n", 5),
        ("elements: a b\nzero: c\nstar: a->a b->b\na b\nb a\n", 2),
        ("elements: a b\nstar: a->a b->b\na b\nb a\n", 2),
        ("elements: a b\nzero: a\nstar: a->a b->b\na b\n", 4),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        FileManager.parse_semigroup_text(text)
    assert info.value.line == line


def test_parse_measure_text():
    measure, digest = FileManager.parse_measure_text("# two atoms\natom 0 1.5\natom 3 2\n")
    assert measure == DualMeasure(((0, 1.5), (3, 2.0)))
    assert digest is None
    with pytest.raises(ParseError):
        FileManager.parse_measure_text("atom 0 -1\n")
    with pytest.raises(ParseError):
        FileManager.parse_measure_text("atom 0 1\natom 0 2\n")


def test_measure_round_trip_and_stale_digest(tmp_path):
    S = make_power_z2(2)
    path = tmp_path / "mu.txt"
    path.write_text(FileManager.format_measure(S, DualMeasure(((1, 2.0),))))
    assert FileManager.read_measure(str(path), S) == DualMeasure(((1, 2.0),))
    with pytest.raises(StaleMeasureError):
        FileManager.read_measure(str(path), make_cyclic(4))


def test_parse_function_text():
    S = make_cyclic(2)
    table = FileManager.parse_function_text("# φ\nvalue 1 0.5 -0.25\nvalue 0 2\n", S)
    assert table.values == (2 + 0j, 0.5 - 0.25j)
    assert table.provenance == "raw"
    assert FileManager.parse_function_text(FileManager.format_function(table), S) == table


@pytest.mark.parametrize(
    "text, line",
    [
        ("value 0 1\nvalue x 1\n", 2),
        ("value 0 1\n# again\nvalue 0 2\n", 3),
        ("value 0 one\nvalue 1 0\n", 1),
        ("atom 0 1\n", 1),
        ("value 0 1\n\n", 2),
    ],
)
def test_function_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        FileManager.parse_function_text(text, make_cyclic(2))
    assert info.value.line == line


def test_write_file_rejects_bad_names(tmp_path):
    with pytest.raises(ValueError):
        FileManager.write_file("../escape.txt", "x", str(tmp_path))
    written = FileManager.write_file("ok.txt", "x", str(tmp_path))
    assert (tmp_path / "ok.txt").read_text() == "x"
    assert written.endswith("ok.txt")
