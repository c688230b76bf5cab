from pathlib import Path

from fusionprod.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"
S4 = str(DATA / "s4.grp")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    rows = {}
    for line in text.splitlines():
        if " = " in line:
            k, v = line.split(" = ", 1)
            rows[k.strip()] = v.strip()
    return rows


def test_product_s4(capsys):
    code, out, _ = run(capsys, "product", "--group", S4, "--prime", "2", "--normal", "A4")
    assert code == 0
    rows = kv(out)
    assert rows["oracle_equal"] == "true"
    assert rows["saturated"] == "true" and rows["op_identity"] == "true"
    assert rows["carrier_order"] == "8" and rows["S0_order"] == "4"


def test_product_with_carrier(capsys):
    code, out, _ = run(capsys, "--format", "kv", "product", "--group", str(DATA / "s4xc2.grp"),
                       "--prime", "2", "--normal", "A4", "--carrier", "T")
    assert code == 0 and kv(out)["oracle_equal"] == "true"
    assert "[" not in out


def test_product_not_normal(capsys):
    code, _, err = run(capsys, "product", "--group", S4, "--prime", "2", "--normal", "Z")
    assert code == 2 and "not normal" in err


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--case", "catalog:all")
    assert code == 0
    assert out.count("passed = true") >= 7 and "false" not in out


def test_verify_kv_prefixes(capsys):
    code, out, _ = run(capsys, "--format", "kv", "verify", "--case", "catalog:all")
    assert code == 0 and kv(out)["s4a4.passed"] == "true"


def test_oracle_compare(capsys):
    code, out, _ = run(capsys, "oracle-compare", "--case", "catalog:ex75")
    rows = kv(out)
    assert code == 0 and rows["oracle_equal"] == "true"
    assert rows["product_morphisms"] == rows["oracle_morphisms"]


def test_example_scalar_on_complement(capsys):
    code, out, _ = run(capsys, "example", "--name", "7.5", "--q", "3")
    rows = kv(out)
    assert code == 0
    assert rows["acirc_in_F0S"] == "false"
    assert rows["alpha_in_acirc"] == "true" and rows["autF0S_trivial"] == "true"
    assert rows["all_match"] == "true"


def test_example_equal_residuals(capsys):
    code, out, _ = run(capsys, "example", "--name", "7.4")
    rows = kv(out)
    assert code == 0
    assert rows["F_eq_G"] == "false" and rows["Op_eq"] == "true"
    assert rows["F0S_F_eq_F0S_G"] == "false"


def test_example_normal_sylow(capsys):
    code, out, _ = run(capsys, "example", "--name", "7.1")
    assert code == 0 and kv(out)["all_match"] == "true"


def test_example_bad_q(capsys):
    code, _, err = run(capsys, "example", "--name", "7.4", "--q", "2")
    assert code == 2 and "q" in err


def test_example_unknown(capsys):
    code, _, _ = run(capsys, "example", "--name", "9.9")
    assert code == 2


def test_dump_matches_library(capsys):
    from fusionprod.catalog import get_case
    from fusionprod.textio import dump_fusion_system
    code, out, _ = run(capsys, "dump", "--case", "catalog:a4v4")
    assert code == 0
    assert out == dump_fusion_system(get_case("a4v4").instance.product)
    code, out, _ = run(capsys, "dump", "--case", "catalog:s4a4", "--system", "oracle")
    assert code == 0 and out.startswith("fusion p=2")


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    for name in ("s4a4", "gl23sl23", "ex74", "ex75"):
        assert f"[case {name}]" in out


def test_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("degree 3\ngen a (1 7)\n")
    code, _, err = run(capsys, "product", "--group", str(bad), "--prime", "2", "--normal", "G")
    assert code == 2 and "line 2" in err


def test_unknown_case(capsys):
    code, _, err = run(capsys, "verify", "--case", "catalog:nope")
    assert code == 2 and "unknown" in err


def test_max_order(capsys, monkeypatch):
    # the option writes the environment variable; setenv makes monkeypatch restore it
    monkeypatch.setenv("FF_MAX_GROUP_ORDER", "100000")
    code, _, err = run(capsys, "--max-order", "10", "product", "--group", S4,
                       "--prime", "2", "--normal", "A4")
    assert code == 2 and err


def test_missing_arguments(capsys):
    code, _, err = run(capsys, "product")
    assert code == 2 and "required" in err


def test_bad_subcommand(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and "invalid choice" in err


def test_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "verify" in out
