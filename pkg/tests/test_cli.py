import json

import pytest

from chamberq import cli, hcfun, rootsys
from chamberq.cli import (
    Catalog,
    CatalogError,
    SpaceDescriptor,
    default_catalog,
    emit,
    load_catalog,
    run_asym,
    run_flatness,
)


# -- catalog loading ---------------------------------------------------------


def test_default_catalog_contents(catalog):
    names = catalog.names()
    for required in ("S2", "S3", "CP2", "HP2", "OP2", "SU2", "SU3", "SU4",
                     "SU3_SO3", "SU4_Sp2", "SU6_Sp3"):
        assert required in names


def test_s3_entry_is_group(catalog):
    rs = catalog.get("S3").to_root_system()
    assert hcfun.classify_group_manifold(rs)
    assert rootsys.dimension(rs) == pytest.approx(3.0)


def test_dims_recomputed_on_load(catalog):
    for entry in catalog.entries:
        rs = entry.to_root_system()
        assert rootsys.dimension(rs) == pytest.approx(entry.dim_m, abs=1e-9)


def test_reject_odd_multiplicity_with_doubled_root():
    text = """
name = bad
root_type = BC
rank = 1
mult.short = 3
mult.long = 1
dim = 5
"""
    with pytest.raises(CatalogError):
        load_catalog(text)


def test_reject_dimension_mismatch():
    text = """
name = bad
root_type = A
rank = 1
mult.short = 2
dim = 7
"""
    with pytest.raises(CatalogError, match="bad"):
        load_catalog(text)


def test_parse_error_reports_line():
    text = "name = ok\nroot_type = A\nthis line has no equals sign\n"
    with pytest.raises(CatalogError, match="line 3"):
        load_catalog(text)


def test_reject_duplicate_names():
    text = """
name = twin
root_type = A
rank = 1
mult.short = 2
dim = 3

name = twin
root_type = A
rank = 1
mult.short = 1
dim = 2
"""
    with pytest.raises(CatalogError, match="duplicate"):
        load_catalog(text)


def test_reject_unknown_keys():
    text = """
name = odd
root_type = A
rank = 1
mult.short = 2
dim = 3
color = blue
"""
    with pytest.raises(CatalogError, match="unknown keys"):
        load_catalog(text)


def test_load_catalog_from_file(tmp_path):
    p = tmp_path / "cat.txt"
    p.write_text(cli.DEFAULT_CATALOG_TEXT, encoding="utf-8")
    cat = load_catalog(p)
    assert cat.names() == default_catalog().names()
    cat2 = load_catalog(str(p))
    assert cat2.names() == cat.names()
    with pytest.raises(CatalogError):
        load_catalog(str(tmp_path / "missing.txt"))


def test_metric_scale_entry():
    text = """
name = S2_rescaled
root_type = A
rank = 1
mult.short = 1
dim = 2
metric_scale = 2.0
"""
    entry = load_catalog(text).get("S2_rescaled")
    rs = entry.to_root_system()
    base = default_catalog().get("S2").to_root_system()
    w = rootsys.spherical_weight(rs, [1])
    wb = rootsys.spherical_weight(base, [1])
    assert hcfun.q_of_weight(rs, w) == pytest.approx(
        hcfun.q_of_weight(base, wb), rel=1e-12
    )
    _, b_scaled = hcfun.predicted_constants(rs, w)
    _, b_base = hcfun.predicted_constants(base, wb)
    assert b_scaled == pytest.approx(2.0 * b_base, rel=1e-12)


# -- round trips and determinism ------------------------------------------------


def test_catalog_round_trip_json(catalog):
    text = emit(catalog, "json")
    again = load_catalog(text)
    assert again == catalog


def test_catalog_round_trip_text(catalog):
    text = emit(catalog, "text")
    again = load_catalog(text)
    assert again == catalog


def test_emit_deterministic(catalog):
    rep = run_flatness(catalog, "S2", 5, 1e-6)
    assert emit(rep, "json") == emit(rep, "json")
    assert emit(rep, "csv") == emit(rep, "csv")
    assert emit(catalog, "json") == emit(catalog, "json")


def test_emit_q_report_schema(catalog):
    rep = run_flatness(catalog, "S2", 3, 1e-6)
    doc = json.loads(emit(rep, "json"))
    assert list(doc.keys()) == [
        "weights", "q_values", "max_rel_deviation", "tol",
        "is_constant", "group_manifold_predicted",
    ]
    assert doc["weights"][0] == [0]
    assert not doc["is_constant"]
    csv_text = emit(rep, "csv")
    lines = csv_text.split("\r\n")
    assert lines[0] == "weight,q_value"
    assert len(lines) == 2 + len(rep.weights)  # header + rows + trailing empty


def test_emit_asym_schema(catalog):
    rep = run_asym(catalog, "S3", "zero", 1)
    doc = json.loads(emit(rep, "json"))
    assert doc["regime"] == "zero"
    assert doc["space"] == "S3"
    assert doc["passed"] is True
    csv_text = emit(rep, "csv")
    assert csv_text.split("\r\n")[0] == "tau,log_q,log_predicted"


def test_emit_rejects_unknown_formats(catalog):
    rep = run_flatness(catalog, "S2", 2, 1e-6)
    with pytest.raises(ValueError):
        emit(rep, "yaml")
    with pytest.raises(ValueError):
        emit(catalog, "csv")
    with pytest.raises(TypeError):
        emit(42, "json")


def test_float_formatting_17_digits(catalog):
    rep = run_flatness(catalog, "S2", 2, 1e-6)
    text = emit(rep, "json")
    assert "1.2533141373155006" in text or "1.2533141373155003" in text


# -- pipelines -------------------------------------------------------------------


def test_run_flatness_group(catalog):
    rep = run_flatness(catalog, "SU3", 3, 1e-10)
    assert rep.is_constant and rep.group_manifold_predicted
    assert len(rep.weights) == 16


def test_run_flatness_sphere(catalog):
    rep = run_flatness(catalog, "S2", 10, 1e-6)
    assert not rep.is_constant and not rep.group_manifold_predicted
    assert rep.max_rel_deviation == pytest.approx(0.2384877485553700, rel=1e-9)


def test_run_flatness_projective(catalog):
    rep = run_flatness(catalog, "CP2", 10, 1e-6)
    assert not rep.is_constant


def test_run_flatness_unknown_space(catalog):
    with pytest.raises(CatalogError):
        run_flatness(catalog, "T2", 3, 1e-6)


def test_run_asym_rank_guard(catalog):
    with pytest.raises(CatalogError, match="rank"):
        run_asym(catalog, "SU3", "zero", 1)
    with pytest.raises(CatalogError, match="regime"):
        run_asym(catalog, "S3", "diagonal", 1)


# -- command line ----------------------------------------------------------------


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_catalog_list(capsys):
    code, out, err = run_cli(["catalog", "list"], capsys)
    assert code == 0
    assert "S2\tA1\tdim=2" in out


def test_cli_space_show_round_trip(capsys):
    code, out, _ = run_cli(["space", "show", "CP2"], capsys)
    assert code == 0
    entry = load_catalog(out).get("CP2")
    assert entry == default_catalog().get("CP2")


def test_cli_flatness_json(capsys):
    code, out, _ = run_cli(["flatness", "S2", "--max-coeff", "10"], capsys)
    assert code == 0  # verdict agrees with the classification
    doc = json.loads(out)
    assert doc["is_constant"] is False


def test_cli_flatness_group_exit_zero(capsys):
    code, out, _ = run_cli(
        ["flatness", "SU2", "--max-coeff", "5", "--tol", "1e-10"], capsys
    )
    assert code == 0
    assert json.loads(out)["is_constant"] is True


def test_cli_asym_zero(capsys):
    code, out, _ = run_cli(["asym", "S3", "--regime", "zero", "--weight", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert abs(doc["fitted_B"] - 6.0) < 1e-4


def test_cli_asym_infinity(capsys):
    code, out, _ = run_cli(
        ["asym", "S2", "--regime", "infinity", "--format", "csv"], capsys
    )
    assert code == 0
    lines = out.strip().split("\r\n")
    assert lines[0] == "tau,log_q,log_predicted"
    assert len(lines) == 5  # four grid points


def test_cli_asym_rank_error(capsys):
    code, out, err = run_cli(["asym", "SU3", "--regime", "zero"], capsys)
    assert code == 2
    assert out == ""
    assert "rank" in err


def test_cli_unknown_space(capsys):
    code, _, err = run_cli(["flatness", "Nope"], capsys)
    assert code == 2
    assert "unknown space" in err


def test_cli_cfun(capsys):
    code, out, _ = run_cli(["cfun", "SU3", "--weight", "1,1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["c"] == pytest.approx(doc["c_closed_form"], rel=1e-10)
    code, _, err = run_cli(["cfun", "SU3", "--weight", "1,x"], capsys)
    assert code == 2


def test_cli_probe_f(capsys):
    code, out, _ = run_cli(
        ["probe-F", "--a", "1.0", "--b", "0.5", "--c", "1.0", "--d", "0", "--zmax", "3"],
        capsys,
    )
    assert code == 0
    lines = out.strip().split("\r\n")
    assert lines[0] == "z,F,F_over_2_pow_d"
    for line in lines[1:]:
        _, f_val, _ = line.split(",")
        assert float(f_val) == pytest.approx(1.0, abs=1e-12)


def test_cli_custom_catalog_file(tmp_path, capsys):
    p = tmp_path / "mini.txt"
    p.write_text(
        "name = MyS3\nroot_type = A\nrank = 1\nmult.short = 2\ndim = 3\n",
        encoding="utf-8",
    )
    code, out, _ = run_cli(
        ["--catalog", str(p), "flatness", "MyS3", "--max-coeff", "4", "--tol", "1e-10"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["group_manifold_predicted"] is True


def test_cli_bad_catalog_file(tmp_path, capsys):
    p = tmp_path / "broken.txt"
    p.write_text("name = x\nroot_type = A\nrank = zero\n", encoding="utf-8")
    code, _, err = run_cli(["--catalog", str(p), "catalog", "list"], capsys)
    assert code == 2
    assert "error" in err
