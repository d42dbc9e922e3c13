import json
from importlib import resources

import jsonschema
import pytest

from mrspectra.errors import ConfigError
from mrspectra.tables import (TABLE_ROWS, MoleculeSpec, RunConfig, build_table, calibrate,
                              constants_for, convert_energy, emit, load_reference, load_registry,
                              parse_csv, to_csv, to_json, to_markdown)


def test_registry_has_caption_masses():
    reg = load_registry()
    assert {k: v.reduced_mass_amu for k, v in reg.items()} == {
        "CH": 0.929931, "CO": 6.8606719, "HCl": 0.9801045, "LiH": 0.8801221}


def test_registry_parsing(tmp_path):
    f = tmp_path / "mols.txt"
    f.write_text("# comment\nH2 0.50391  # trailing\n\nXY 2\n")
    assert set(load_registry(f)) == {"H2", "XY"}
    f.write_text("H2 0.5\nH2 0.6\n")
    with pytest.raises(ConfigError):
        load_registry(f)
    f.write_text("H2 -0.5\n")
    with pytest.raises(ConfigError):
        load_registry(f)
    f.write_text("H2\n")
    with pytest.raises(ConfigError):
        load_registry(f)


def test_convert_energy():
    ch, co = load_registry()["CH"], load_registry()["CO"]
    assert convert_energy(0.0, 40.0, ch, "paper-calibrated") == 0.0
    D = -0.120527265 * 2 * 40.0 ** 2  # atomic-unit value times 2 b^2
    assert convert_energy(D, 40.0, ch, "paper-calibrated") == pytest.approx(-5.419968453, rel=1e-5)
    ratio = convert_energy(D, 40.0, co, "physical") / convert_energy(D, 40.0, ch, "physical")
    assert ratio == pytest.approx(0.929931 / 6.8606719, rel=1e-14)
    with pytest.raises(ConfigError):
        convert_energy(D, 40.0, ch, "atomic")
    with pytest.raises(ConfigError):
        MoleculeSpec("X", 0.0)


def test_unit_mode_consistency():
    ch = load_registry()["CH"]
    with pytest.raises(ConfigError):
        constants_for("atomic", ch)
    with pytest.raises(ConfigError):
        constants_for("physical", None)
    with pytest.raises(ConfigError):
        constants_for("furlongs", None)
    with pytest.raises(ConfigError):
        build_table(RunConfig(units="atomic", molecule="CH"))
    with pytest.raises(ConfigError):
        build_table(RunConfig(units="paper-calibrated", molecule="N2"))


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(schemes=())
    with pytest.raises(ConfigError):
        RunConfig(states=())
    with pytest.raises(ConfigError):
        RunConfig(a_over_b=float("inf"))
    with pytest.raises(ConfigError):
        RunConfig.for_table(7)
    with pytest.raises(ConfigError):
        RunConfig.for_table(3)
    with pytest.raises(ConfigError):
        RunConfig.for_table(3, "HCl")
    with pytest.raises(ConfigError):
        RunConfig.for_table(1, "CH")


def test_table1_anchor_cell():
    table = build_table(RunConfig.for_table(1))
    cell = table.cell("2p", 0.025, "approx1")
    assert cell.value == pytest.approx(-0.120527265, abs=5e-9)
    assert cell.paper_ref == -0.120527265
    assert abs(cell.deviation) <= 5e-9


def test_table3_anchor_cell():
    cell = build_table(RunConfig.for_table(3, "CH")).cell("2p", 0.025, "approx1")
    assert cell.value == pytest.approx(-5.419968453, rel=1e-5)


def test_deviation_bookkeeping_table1():
    table = build_table(RunConfig.for_table(1))
    excluded = set()
    for row in table.rows:
        assert row.paper_ref is not None
        if row.excluded:
            assert row.deviation is None
            excluded.add((row.state, row.inv_b, row.scheme))
        else:
            assert abs(row.deviation) <= 5e-9
    assert excluded == {("2p", 0.075, "approx3"), ("6p", 0.025, "approx1"),
                        ("6d", 0.025, "approx1"), ("6f", 0.025, "approx1")}


def test_reference_corpus_shape():
    cells = load_reference()
    assert len(cells) == 1012
    assert all(c.excluded for c in cells if c.table == 2 and c.column == "approx2")
    assert all(c.note or c.excluded is None or c.excluded for c in cells)


def test_csv_round_trip_and_determinism():
    cfg = RunConfig(states=("2p", "4d"), screenings=(0.025, 0.05), schemes=("approx1", "approx3"))
    first = to_csv(build_table(cfg))
    assert first.splitlines()[0] == "state,inv_b,scheme,value,paper_ref,deviation,excluded"
    assert to_csv(parse_csv(first)) == first
    assert to_csv(build_table(cfg)) == first
    full = to_csv(build_table(RunConfig.for_table(2)))
    assert to_csv(parse_csv(full)) == full
    with pytest.raises(ConfigError):
        parse_csv("a,b\n1,2\n")


def test_markdown_row_order():
    md = to_markdown(build_table(RunConfig.for_table(1)))
    labels = [line.split("|")[1].strip() for line in md.splitlines() if line.startswith("| ") and "---" not in line]
    order = [s for s in labels[1:] if s]
    assert order == ["2p", "3p", "3d", "4p", "4d", "4f", "5p", "5d", "5f", "5g", "6p", "6d", "6f", "6g"]
    assert len(labels) - 1 == len(TABLE_ROWS)


def test_json_validates_against_schema():
    schema = json.loads(resources.files("mrspectra").joinpath("data", "output.schema.json").read_text())
    for cfg in (RunConfig.for_table(1), RunConfig.for_table(5, "CO")):
        jsonschema.validate(json.loads(to_json(build_table(cfg))), schema)


def test_emit(tmp_path, capsys):
    table = build_table(RunConfig(states=("2p",), screenings=(0.025,)))
    emit(table, "csv")
    assert capsys.readouterr().out == to_csv(table)
    out = tmp_path / "t.json"
    emit(table, "json", out)
    assert json.loads(out.read_text())[0]["state"] == "2p"
    with pytest.raises(OSError):
        emit(table, "csv", tmp_path / "missing" / "t.csv")
    with pytest.raises(ConfigError):
        emit(table, "xml")


def test_exact_column_uses_oracle():
    cfg = RunConfig(states=("2p",), screenings=(0.025,), schemes=("exact",), rows=(("2p", 0.025),), table=1)
    cell = build_table(cfg).cell("2p", 0.025, "exact")
    assert cell.paper_ref == -0.1205271
    assert abs(cell.deviation) < 2e-6


def test_calibration_report():
    rep = calibrate()
    assert rep.k_fit == pytest.approx(93115.0, rel=1e-6)
    assert rep.k_physical == pytest.approx(931.49410242e6)
    assert 0.9e4 < rep.ratio < 1.1e4
    assert any("ratio" in line for line in rep.lines())
