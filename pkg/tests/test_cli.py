import pytest

from tabular.cli import main, parse_window, ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_tlh_all(capsys):
    code, out, _ = run(capsys, "verify", "--instance", "tlh", "--n", "2", "--suite", "all")
    assert code == 0 and out.endswith("OK\n")


def test_verify_broken_star_reports_A2(capsys):
    code, out, _ = run(capsys, "verify", "--instance", "matrix", "--n", "2", "--table", "golden",
                       "--mutant", "broken-star")
    assert code == 1
    line = next(l for l in out.splitlines() if l.startswith("FAIL\tA2\t"))
    assert "star(" in line


def test_verify_affine_window(capsys):
    code, out, _ = run(capsys, "verify", "--instance", "affine", "--n", "4", "--window", "w=2,k=2",
                       "--suite", "A4,A5")
    assert code == 0
    assert "A5-symmetric" in out and "A1-codec" not in out


@pytest.mark.parametrize("argv", [
    ["verify", "--instance", "nope", "--n", "2"],
    ["verify", "--instance", "affine", "--n", "4", "--window", "q=1"],
    ["verify", "--instance", "tl", "--n", "3", "--window", "w=1"],
    ["verify", "--instance", "matrix", "--n", "2", "--table", "quaternion"],
    ["verify", "--instance", "brauer"],
    ["verify", "--instance", "tl", "--n", "3", "--suite", "A9"],
    ["compute", "bogus", "--instance", "tl", "--n", "3"],
])
def test_configuration_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_parse_window():
    assert parse_window("w=2,k=3") == {"w": 2, "k": 3}
    with pytest.raises(ConfigError):
        parse_window("w=-1")


def test_compute_afunction_tlh(capsys):
    code, out, _ = run(capsys, "compute", "afunction", "--instance", "tlh", "--n", "3")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()[2:]]
    assert rows and all(int(a) == (4 - int(lam)) // 2 for lam, _, a in rows)


def test_compute_gram_is_near_identity(capsys):
    code, out, _ = run(capsys, "compute", "gram", "--instance", "matrix", "--n", "2", "--table", "golden")
    assert code == 0
    for line in out.splitlines()[2:]:
        X, Y, value = line.split("\t")
        assert value == ("1" if X == Y else "0")


def test_compute_gamma_brauer(capsys, tmp_path):
    target = tmp_path / "gamma.tsv"
    code, _, _ = run(capsys, "compute", "gamma", "--instance", "brauer", "--n", "3", "--out", str(target))
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[1] == "X\tY\tZ\tgamma" and len(lines) > 2
    assert [p.name for p in tmp_path.iterdir()] == ["gamma.tsv"]


@pytest.mark.parametrize("what", ["structconsts", "cells", "trace"])
def test_compute_is_deterministic_across_thread_counts(capsys, what):
    _, a, _ = run(capsys, "compute", what, "--instance", "tl", "--n", "4")
    _, b, _ = run(capsys, "compute", what, "--instance", "tl", "--n", "4", "--threads", "4")
    assert a == b and a


def test_cache_roundtrip_and_diff(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TABULAR_CACHE_DIR", str(tmp_path / "cache"))
    assert run(capsys, "cache", "write", "--instance", "tl", "--n", "4")[0] == 0
    (path,) = (tmp_path / "cache").iterdir()
    assert run(capsys, "cache", "read", "--instance", "tl", "--n", "4")[0] == 0
    second = tmp_path / "second.tsv"
    assert run(capsys, "cache", "write", "--instance", "tl", "--n", "4", "--path", str(second))[0] == 0
    assert path.read_bytes() == second.read_bytes()
    code, out, _ = run(capsys, "cache", "diff", "--path", str(path), "--other", str(second))
    assert (code, out) == (0, "identical\n")

    lines = second.read_text().splitlines(keepends=True)
    X, Y, Z, _ = lines[5].rstrip("\n").split("\t")
    lines[5] = f"{X}\t{Y}\t{Z}\tv^7\n"
    second.write_text("".join(lines))
    code, out, _ = run(capsys, "cache", "diff", "--path", str(path), "--other", str(second))
    assert code == 1 and out.startswith(f"{X} {Y} {Z}:") and "v^7" in out
    code, _, err = run(capsys, "cache", "read", "--instance", "tl", "--n", "4", "--path", str(second))
    assert code == 3 and "checksum" in err


def test_cache_rejects_garbage(capsys, tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("not a cache\n")
    code, _, _ = run(capsys, "cache", "read", "--instance", "tl", "--n", "3", "--path", str(bad))
    assert code == 3
    code, _, _ = run(capsys, "cache", "diff", "--path", str(bad), "--other", str(bad))
    assert code == 3


def test_load_table_file(capsys, tmp_path):
    from tabular.table_algebra import dump_table, golden
    f = tmp_path / "g.table"
    f.write_text(dump_table(golden()))
    code, out, _ = run(capsys, "verify", "--instance", "matrix", "--n", "2", "--load", str(f))
    assert code == 0, out
