import io
import json

import pytest

from moduli_euler import cli
from moduli_euler.cache import SeriesCache, decode_series, encode_series
from moduli_euler.genfun import GenfunContext, chi11_scalar
from moduli_euler.numtheory import Partition
from moduli_euler.symfunc import SchurExpansion


@pytest.fixture
def run(tmp_path, capsys):
    def _run(*argv, cache=True):
        extra = ["--cache-dir", str(tmp_path / "cache")] if cache else ["--no-cache"]
        code = cli.main([*argv, *extra])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def test_chi_whole_weight13(run):
    code, out, _ = run("chi", "13", "--g", "12", "--n", "0", "--whole")
    assert code == cli.EXIT_OK
    assert "euler: -6" in out and "whole" in out


def test_chi_weight11_five_five(run):
    code, out, _ = run("chi", "--weight", "11", "--g", "5", "--n", "5")
    assert code == 0
    assert "schur: -s[1,1,1,1,1]" in out


def test_chi_weight13_zero_cell(run):
    code, out, _ = run("chi", "13", "--g", "2", "--n", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert data["schur"] == "0" and data["euler"] == "0"


def test_chi_weight13_eight_one(run):
    code, out, _ = run("chi", "13", "--g", "8", "--n", "1", "--whole")
    assert code == 0 and "euler: -2" in out


def test_chi_unstable_is_error(run):
    code, _, err = run("chi", "--g", "0", "--n", "2")
    assert code == cli.EXIT_ERROR
    assert "unstable" in err


def test_chi_insufficient_caps(run):
    code, _, err = run("chi", "13", "--g", "3", "--n", "11", "--pcap", "5")
    assert code == cli.EXIT_ERROR
    assert "cap" in err


def test_weight_flags_must_agree(run):
    with pytest.raises(SystemExit):
        run("chi", "13", "--weight", "11", "--g", "2", "--n", "10")


def test_scan_csv_round_trip(run, tmp_path):
    path = tmp_path / "t.csv"
    code, _, err = run("scan", "13", "--gmax", "6", "--nmax", "8", "--output", str(path))
    assert code == 0 and "zero cells" in err
    text = path.read_text()
    table = cli.read_csv(io.StringIO(text))
    buf = io.StringIO()
    cli.write_csv(cli.rows_from_table(table), buf)
    assert buf.getvalue() == text
    assert table[(5, 6)] == SchurExpansion({Partition((1,) * 6): -1, Partition((2, 1, 1, 1, 1)): -2})


def test_scan_empty_region_header_only(run):
    code, out, _ = run("scan", "--gmin", "5", "--gmax", "3", "--nmax", "2")
    assert code == 0
    assert out == ",".join(cli.CSV_COLUMNS) + "\n"


def test_scan_dimension_mode_zero_set(run):
    code, out, err = run("scan", "--gmax", "20", "--nmax", "20", "--max-total", "20", "--mode", "dimension")
    assert code == 0
    assert err.strip().endswith("(8,1) (12,0)")
    table = cli.read_csv(io.StringIO(out))
    assert table[(7, 2)] == 1


def test_scan_json(run):
    code, out, _ = run("scan", "--gmax", "12", "--nmax", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert [8, 1] in data["zero_cells_3g_plus_2n_ge_25"]
    assert set(data["rows"][0]) == set(cli.CSV_COLUMNS)


def test_cache_hit_is_byte_identical(run, tmp_path):
    argv = ("scan", "13", "--gmax", "5", "--nmax", "7")
    _, cold, _ = run(*argv)
    assert list((tmp_path / "cache").glob("*.json"))
    _, warm, _ = run(*argv)
    _, nocache, _ = run(*argv, cache=False)
    assert cold == warm == nocache


def test_corrupt_cache_is_ignored(run, tmp_path):
    argv = ("chi", "13", "--g", "4", "--n", "8")
    _, first, _ = run(*argv)
    for entry in (tmp_path / "cache").glob("*.json"):
        entry.write_text("{not json")
    code, second, _ = run(*argv)
    assert code == 0 and first == second


def test_cache_fingerprint_mismatch(tmp_path):
    cache = SeriesCache(tmp_path)
    series = chi11_scalar(GenfunContext(u_cap=14))
    fp = cache.fingerprint(formula="z", u_cap=14)
    cache.store(fp, series)
    assert cache.load(fp) == series
    path = cache._path(fp)
    data = json.loads(path.read_text())
    data["fingerprint"]["u_cap"] = 15
    path.write_text(json.dumps(data))
    assert cache.load(fp) is None


def test_cache_serialises_exact_rationals():
    series = chi11_scalar(GenfunContext(u_cap=20))
    data = encode_series(series)
    assert all(isinstance(x, str) and "/" in x for x in data["coefficients"])
    assert decode_series(json.loads(json.dumps(data))) == series


def test_cache_command(run, tmp_path):
    run("chi", "--g", "9", "--n", "0")
    code, out, _ = run("cache", "info")
    assert code == 0 and json.loads(out)["entries"] >= 1
    code, out, _ = run("cache", "clear")
    assert "removed" in out
    assert not list((tmp_path / "cache").glob("*.json"))


def test_asymp_table_and_plot(run, tmp_path):
    png = tmp_path / "ratio.png"
    code, out, _ = run("asymp", "--gmin", "30", "--gmax", "80", "--plot", str(png))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "g,Z_g,z_asymp,ratio"
    ratios = [float(line.split(",")[3]) for line in lines[1:]]
    assert len(ratios) == 51 and all(r > 0 for r in ratios)
    assert png.stat().st_size > 1000


def test_asymp_bad_range(run):
    code, _, err = run("asymp", "--gmin", "50", "--gmax", "40")
    assert code == cli.EXIT_ERROR and "g_min" in err


def test_certify_needs_precision(run):
    code, _, _ = run("certify", "--precision", "20")
    assert code == cli.EXIT_ERROR


def test_run_config_caps():
    cfg = cli.RunConfig(weight=13, g_max=4, n_max=6, p_cap=6)
    assert cfg.u_cap == 11
    with pytest.raises(ValueError, match="cap"):
        cli.RunConfig(weight=13, g_max=4, n_max=6, p_cap=5).validate()


@pytest.mark.slow
def test_certify_passes_and_forced_failure(run):
    code, out, _ = run("certify", "--format", "json")
    data = json.loads(out)
    assert code == cli.EXIT_OK and data["pass"]
    code, out, _ = run("certify", "--tolerance", "0")
    assert code == cli.EXIT_CERT
    assert "overall: FAIL" in out
