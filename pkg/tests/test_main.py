import json
from pathlib import Path

import pytest

from sources import analysis
from sources.catalog import z2_square_amalgam
from sources.core import make_cyclic, make_power_z2
from sources.main import EXIT_FAILED, EXIT_INPUT_ERROR, EXIT_OK, main
from sources.manager_file import FileManager
from sources.pdfun import DualMeasure
from sources.rkhs import IllDefinedShift

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


@pytest.fixture
def write_sgp(tmp_path):
    def write(semigroup, name="s.sgp"):
        path = tmp_path / name
        FileManager.write_semigroup(semigroup, str(path))
        return str(path)

    return write


def test_validate_valid_file(write_sgp, capsys):
    assert main(["validate", write_sgp(make_cyclic(2))]) == EXIT_OK
    assert "Valid" in capsys.readouterr().out


def test_validate_ragged_row(tmp_path, capsys):
    path = tmp_path / "bad.sgp"
    path.write_text("elements: a b\nzero: a\nstar: a->a b->b\na b\nb\n")
    assert main(["validate", str(path)]) == EXIT_INPUT_ERROR
    assert ":5:" in capsys.readouterr().out


def test_validate_associativity_defect(tmp_path, capsys):
    path = tmp_path / "defect.sgp"
    path.write_text("elements: a b\nzero: -\nstar: a->a b->b\nb a\na a\n")
    assert main(["validate", str(path)]) == EXIT_FAILED
    out = capsys.readouterr().out
    assert "associativity at (" in out


def test_characters_command(write_sgp, capsys):
    assert main(["characters", write_sgp(make_power_z2(3))]) == EXIT_OK
    lines = [line for line in capsys.readouterr().out.splitlines() if line and not line.startswith("#")]
    assert len(lines) == 8


def test_quotient_command(write_sgp, capsys):
    assert main(["quotient", write_sgp(make_cyclic(4))]) == EXIT_OK
    assert capsys.readouterr().out.startswith("elements: [0] [1]")


def test_components_command(write_sgp, capsys):
    assert main(["components", write_sgp(z2_square_amalgam()), "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data["classes"]) == 2


def test_analyze_minus_preset(write_sgp, capsys):
    assert main(["analyze", write_sgp(make_power_z2(3)), "--u", "(1,0,0)", "--preset", "minus", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    record = data["records"][0]
    assert (record["minus_dimension"], record["plus_dimension"]) == (4, 0)


def test_analyze_amalgam_achieves_bound(write_sgp, capsys):
    assert main(["analyze", write_sgp(z2_square_amalgam()), "--u", "(1,0)", "--preset", "minus", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["counts"]["m_count"] == 6
    assert data["achieved"]


def test_analyze_with_measure_file_and_random(write_sgp, tmp_path, capsys):
    S = make_power_z2(2)
    measure = tmp_path / "mu.txt"
    measure.write_text(FileManager.format_measure(S, DualMeasure(((0, 1.0), (3, 2.0)))))
    code = main(["analyze", write_sgp(S), "--u", "(1,1)", "--measure", str(measure), "--random", "2",
                 "--seed", "3", "--json"])
    assert code == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)["records"]) == 2


def test_analyze_stale_measure(write_sgp, tmp_path, capsys):
    measure = tmp_path / "mu.txt"
    measure.write_text(FileManager.format_measure(make_cyclic(2), DualMeasure(((0, 1.0),))))
    code = main(["analyze", write_sgp(make_power_z2(2)), "--u", "(1,1)", "--measure", str(measure)])
    assert code == EXIT_INPUT_ERROR
    assert "StaleMeasureError" in capsys.readouterr().out


def test_analyze_unknown_label(write_sgp):
    assert main(["analyze", write_sgp(make_cyclic(2)), "--u", "7"]) == EXIT_INPUT_ERROR


def test_analyze_zero_is_identity(write_sgp, capsys):
    assert main(["analyze", write_sgp(make_cyclic(2)), "--u", "0", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "PontryaginFundamentalSymmetry"
    assert data["records"][0]["minus_dimension"] == 0


def test_bad_tolerance_is_an_input_error():
    assert main(["fuzz", "--tol", "-1"]) == EXIT_INPUT_ERROR


def test_fuzz_is_reproducible(tmp_path, capsys):
    args = ["fuzz", "--generated", "2", "--trials", "2", "--seed", "5", "--replay-dir", str(tmp_path)]
    assert main(args) == EXIT_OK
    first = capsys.readouterr().out
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out == first


def test_bundled_instances(capsys):
    code = main(["analyze", str(INSTANCES / "z2_cubed.sgp"), "--u", "(1,0,0)",
                 "--measure", str(INSTANCES / "z2_cubed_minus.txt"), "--json"])
    assert code == EXIT_OK
    record = json.loads(capsys.readouterr().out)["records"][0]
    assert (record["rank"], record["minus_dimension"], record["plus_dimension"]) == (4, 4, 0)
    assert main(["validate", str(INSTANCES / "amalgam.sgp")]) == EXIT_OK
    assert FileManager.read_semigroup(str(INSTANCES / "amalgam.sgp")) == z2_square_amalgam()


@pytest.fixture
def write_phi(tmp_path):
    def write(text, name="phi.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_analyze_raw_function_table(write_sgp, write_phi, capsys):
    phi = write_phi("# 3/4 trivial + 1/4 sign\nvalue 0 1\nvalue 1 0.5 0\n")
    code = main(["analyze", write_sgp(make_cyclic(2)), "--u", "1", "--phi", phi, "--json"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data["records"]) == 1
    record = data["records"][0]
    assert record["provenance"] == "raw"
    assert (record["rank"], record["minus_dimension"], record["plus_dimension"]) == (2, 1, 1)
    assert data["verdict"] == "PontryaginFundamentalSymmetry"


def test_analyze_rejects_table_that_is_not_positive_definite(write_sgp, write_phi, capsys):
    phi = write_phi("value 0 0\nvalue 1 1\n")
    assert main(["analyze", write_sgp(make_cyclic(2)), "--u", "1", "--phi", phi]) == EXIT_INPUT_ERROR
    assert "NotPositiveDefinite" in capsys.readouterr().out


def test_analyze_rejects_table_that_is_not_hermitian(write_sgp, write_phi, capsys):
    phi = write_phi("value 0 1\nvalue 1 0 1\n")
    assert main(["analyze", write_sgp(make_cyclic(2)), "--u", "1", "--phi", phi]) == EXIT_INPUT_ERROR
    assert "NotHermitianSymmetric" in capsys.readouterr().out


def test_analyze_function_table_parse_error(write_sgp, write_phi, capsys):
    phi = write_phi("value 0 1\n\nvalue 2 1\n")
    assert main(["analyze", write_sgp(make_cyclic(2)), "--u", "1", "--phi", phi]) == EXIT_INPUT_ERROR
    assert f"{phi}:3:" in capsys.readouterr().out


def test_analyze_ill_defined_shift_is_an_input_error(write_sgp, write_phi, monkeypatch, capsys):
    def ill_defined(realization, u, *args):
        raise IllDefinedShift("Shift by 1 is not well defined (residual 1.000e+00)", 1.0)

    monkeypatch.setattr(analysis, "shift_operator", ill_defined)
    phi = write_phi("value 0 1\nvalue 1 0.5\n")
    assert main(["analyze", write_sgp(make_cyclic(2)), "--u", "1", "--phi", phi]) == EXIT_INPUT_ERROR
    assert "IllDefinedShift" in capsys.readouterr().out
