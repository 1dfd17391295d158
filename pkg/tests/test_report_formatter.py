import json

from sources.analysis import analyze
from sources.catalog import z2_square_amalgam
from sources.characters import enumerate_characters, separative_quotient
from sources.core import make_cyclic, make_power_z2
from sources.pdfun import full_measure, minus_measure
from sources.report_formatter import (
    canonical,
    dumps,
    make_graph,
    render_characters,
    render_components,
    render_quotient,
    render_report,
    report_to_dict,
)
from sources.structure import archimedean_components


def test_graph_has_fixed_width():
    assert len(make_graph(0)) == 25
    assert make_graph(100) == "█" * 25
    assert len(make_graph(140)) == 25


def test_canonical_rounding_and_complex():
    assert canonical(1 / 3) == 0.333333333333
    assert canonical(1 + 2j) == [1.0, 2.0]
    assert canonical((1, (2.0,))) == [1, [2.0]]


def test_report_json_is_sorted_and_complete():
    S = make_power_z2(3)
    u = S.index("(1,0,0)")
    data = json.loads(dumps(report_to_dict(analyze(S, u, [minus_measure(S, u)]))))
    assert data["verdict"] == "PontryaginFundamentalSymmetry"
    assert data["counts"] == {"m_count": 8, "minus_one_count": 4, "raw_moved_count": 8}
    assert data["records"][0]["minus_dimension"] == 4
    assert data["violations"] == []
    assert list(data) == sorted(data)


def test_text_report_mentions_verdict():
    S = z2_square_amalgam()
    text = render_report(analyze(S, S.index("(1,0)"), [full_measure(S)]))
    assert "Verdict: PontryaginFundamentalSymmetry" in text
    assert "M = 6" in text


def test_character_listing():
    S = make_power_z2(3)
    lines = render_characters(S, enumerate_characters(S)).splitlines()
    assert len([line for line in lines if not line.startswith("#")]) == 8
    data = json.loads(render_characters(S, enumerate_characters(S), as_json=True))
    assert len(data["characters"]) == 8


def test_quotient_and_components_rendering():
    text = render_quotient(separative_quotient(make_cyclic(4)))
    assert text.startswith("elements: [0] [1]")
    assert "# 2 -> [0]" in text
    data = json.loads(render_components(archimedean_components(z2_square_amalgam()), as_json=True))
    assert data["hasse_edges"] == [[0, 1]]
    assert len(data["classes"]) == 2


def test_text_report_shows_full_eigenspace_dimensions():
    S = make_power_z2(3)
    u = S.index("(1,0,0)")
    text = render_report(analyze(S, u, [minus_measure(S, u)]))
    row = next(line for line in text.splitlines() if line.startswith("φ#0 (moment"))
    assert "-1: 4  +1: 0" in row
