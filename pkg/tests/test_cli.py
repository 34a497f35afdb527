import json

import pytest

from semple2 import cli
from semple2.recursion import INVARIANT_LABELS
from semple2.verify import TABLE1_REFERENCE

TABLE6_CSV = """\
invariant,1,2,3,4,5,6
h2hd,1,1,10,428,51040,13300176
h2z,3,3,30,1284,153120,39900528
hd2z,-3,0,21,1452,216180,64150200
h2.h2,1,1,12,620,87304,26312976
h2.hd2,0,2,36,2184,335792,106976160
h2.hz,0,6,108,6552,1007376,320928480
h2.hdz,-3,0,54,4872,894528,315755712
hd2.hd2,0,4,100,7200,1222192,415085088
hd2.hz,0,12,300,21600,3666576,1245255264
hd2.hdz,0,0,150,15912,3223944,1214002800
hz.hz,0,36,900,64800,10999728,3735765792
hz.hdz,0,0,450,47736,9671832,3642008400
hdz.hdz,9,0,63,22860,6556140,2948122440
"""


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_csv_matches_reference(capsys):
    code, out, _ = run(capsys, "table", "--max-degree", "6", "--format", "csv")
    assert code == 0
    assert out == TABLE6_CSV


def test_table_json_uses_decimal_strings(capsys):
    code, out, _ = run(capsys, "table", "--max-degree", "6", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["labels"] == list(INVARIANT_LABELS)
    assert data["values"]["hdz.hdz"][5] == "2948122440"
    for label, row in data["values"].items():
        assert [int(v) for v in row] == list(TABLE1_REFERENCE[label])


def test_table_degree_one(capsys):
    code, out, _ = run(capsys, "table", "--max-degree", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "h2hd,1"


def test_table_pretty_runs(capsys):
    code, out, _ = run(capsys, "table", "--max-degree", "2")
    assert code == 0
    assert "invariant" in out and "h2hd" in out


def test_table_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "table", "--max-degree", "7", "--format", "json")
    _, second, _ = run(capsys, "table", "--max-degree", "7", "--format", "json")
    assert first == second


def test_table_uses_cache(tmp_path, capsys):
    path = str(tmp_path / "cache.json")
    code, out1, _ = run(capsys, "table", "--max-degree", "5", "--format", "csv",
                        "--cache", path)
    assert code == 0
    code, out2, _ = run(capsys, "table", "--max-degree", "5", "--format", "csv",
                        "--cache", path)
    assert code == 0
    assert out1 == out2
    assert json.loads(open(path).read())["5"]["h2hd"] == "51040"


def test_cache_env_var(tmp_path, capsys, monkeypatch):
    path = str(tmp_path / "envcache.json")
    monkeypatch.setenv(cli.CACHE_ENV, path)
    code, _, _ = run(capsys, "table", "--max-degree", "2", "--format", "csv")
    assert code == 0
    assert "2" in json.loads(open(path).read())


def test_corrupt_cache_fails_table(tmp_path, capsys):
    path = tmp_path / "cache.json"
    path.write_text("{broken", encoding="utf-8")
    code, _, err = run(capsys, "table", "--max-degree", "2", "--cache", str(path))
    assert code == 4
    assert "cache" in err


def test_contact_formula_only(capsys):
    code, out, _ = run(capsys, "contact", "--degree", "4")
    assert code == 0
    assert out == "N_4(C) = 1452c+1284č+428κ\n"


def test_contact_with_curve(capsys):
    code, out, _ = run(capsys, "contact", "--degree", "3",
                       "--c", "2", "--class", "2", "--kappa", "0")
    assert code == 0
    assert "count = 102" in out


def test_contact_smooth_cubic_flexes(capsys):
    code, out, _ = run(capsys, "contact", "--degree", "1",
                       "--c", "3", "--class", "6", "--kappa", "0")
    assert code == 0
    assert "count = 9" in out


def test_contact_plucker_form(capsys):
    code, out, _ = run(capsys, "contact", "--degree", "1", "--plucker", "3,1,0")
    assert code == 0
    assert "count = 3" in out


def test_contact_nodes_cusps_form(capsys):
    code, out, _ = run(capsys, "contact", "--degree", "1",
                       "--c", "3", "--nodes", "0", "--cusps", "1")
    assert code == 0
    assert "count = 1" in out


def test_contact_json(capsys):
    code, out, _ = run(capsys, "contact", "--degree", "6", "--format", "json",
                       "--c", "2", "--class", "2", "--kappa", "0")
    assert code == 0
    data = json.loads(out)
    assert data["coefficients"] == {
        "c": "64150200", "class": "39900528", "kappa": "13300176"}
    assert data["count"] == str(64150200 * 2 + 39900528 * 2)


def test_contact_conflicting_curve_options(capsys):
    code, _, err = run(capsys, "contact", "--degree", "2",
                       "--c", "3", "--class", "6", "--nodes", "1")
    assert code == 2
    assert "error" in err


def test_count_points_only(capsys):
    code, out, _ = run(capsys, "count", "--degree", "3", "--points", "8")
    assert code == 0
    assert out == "12\n"


def test_count_tangent_conic(capsys):
    code, out, _ = run(capsys, "count", "--degree", "2", "--points", "4",
                       "--tangent", "2,2,0")
    assert code == 0
    assert out == "6\n"


def test_count_osculate_json(capsys):
    code, out, _ = run(capsys, "count", "--degree", "3", "--points", "6",
                       "--osculate", "2,2,0", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == "102"
    assert data["osculate"] == [[2, 2, 0]]


def test_count_unsupported_profile(capsys):
    code, _, err = run(capsys, "count", "--degree", "3", "--points", "3",
                       "--osculate", "2,2,0", "--osculate", "2,2,0")
    assert code == 3
    assert "outside the stored thirteen" in err
    assert "hd2z.hd2z" in err


def test_count_bad_point_count(capsys):
    code, _, err = run(capsys, "count", "--degree", "2", "--points", "3")
    assert code == 2
    assert "error" in err


def test_count_malformed_curve_spec(capsys):
    code, _, err = run(capsys, "count", "--degree", "2", "--points", "4",
                       "--tangent", "2;2;0")
    assert code == 2
    assert "error" in err


def test_chow_eval_product_vanishes(capsys):
    code, out, _ = run(capsys, "chow-eval", "i*z")
    assert code == 0
    assert out == "0\n"


def test_chow_eval_integrate(capsys):
    code, out, _ = run(capsys, "chow-eval", "h^2*hd*z", "--integrate")
    assert code == 0
    assert out == "1\n"


def test_chow_eval_i_basis(capsys):
    code, out, _ = run(capsys, "chow-eval", "hz - 3*hd^2", "--basis", "i")
    assert code == 0
    assert out == "h*i\n"


def test_chow_eval_json(capsys):
    code, out, _ = run(capsys, "chow-eval", "z*z", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["coords"] == {"101": "-3", "011": "3"}
    assert data["normal_form"] == "-3*h*z + 3*hd*z"


def test_chow_eval_parse_error(capsys):
    code, _, err = run(capsys, "chow-eval", "h +")
    assert code == 2
    assert "error" in err


def test_verify_passes(capsys):
    code, out, err = run(capsys, "verify", "--max-degree", "2")
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 8
    assert all(r["status"] == "pass" for r in reports)
    assert err.count("PASS") == 8


def test_verify_corrupt_cache(tmp_path, capsys):
    path = tmp_path / "cache.json"
    path.write_text('{"1": {"h2hd": "7"}}', encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--max-degree", "1", "--cache", str(path))
    assert code == 4
    reports = json.loads(out)
    assert reports[-1]["name"] == "cache-validation"
    assert reports[-1]["status"] == "fail"


def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 2


def test_missing_required_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["table"])
    assert info.value.code == 2
