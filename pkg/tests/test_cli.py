import json
import os

import pytest

from schrod1d import cli


def write_cfg(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def bands_cfg(tmp_path, word=("1/2", 2, "1/2")):
    return write_cfg(tmp_path, "bands.json",
                     {"potential": {"kind": "periodic", "word": list(word)}})


def fsm_cfg(tmp_path, **extra):
    doc = {"potential": {"kind": "periodic", "word": [4]},
           "z": 0,
           "scheme": {"side": "full_line",
                      "cutoffs": {"right": {"kind": "arithmetic",
                                            "start": 4, "step": 4},
                                  "left": {"kind": "arithmetic",
                                           "start": 5, "step": 3}}},
           "count": 8}
    doc.update(extra)
    return write_cfg(tmp_path, "fsm.json", doc)


def test_bands_writes_outputs(tmp_path, capsys):
    cfg = bands_cfg(tmp_path)
    out = tmp_path / "out"
    rc = cli.main(["bands", "--config", cfg, "--out", str(out)])
    assert rc == 0
    bands = json.loads((out / "bands.json").read_text())
    assert len(bands["bands"]) == 3
    dirichlet = json.loads((out / "dirichlet.json").read_text())
    assert len(dirichlet["eigenvalues"]) == 1
    assert (out / "bands.csv").exists()


def test_bands_reruns_byte_identical(tmp_path):
    cfg = bands_cfg(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert cli.main(["bands", "--config", cfg, "--out", str(out1)]) == 0
    assert cli.main(["bands", "--config", cfg, "--out", str(out2)]) == 0
    for name in ("bands.json", "dirichlet.json", "bands.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_bands_integer_certificates(tmp_path):
    cfg = write_cfg(tmp_path, "c.json",
                    {"potential": {"kind": "periodic", "word": [0, 3]}})
    out = tmp_path / "out"
    assert cli.main(["bands", "--config", cfg, "--out", str(out)]) == 0
    doc = json.loads((out / "dirichlet.json").read_text())
    certs = doc["integer_certificates"]
    zs = sorted(c["z"] for c in certs)
    assert zs == list(range(-3, 7))
    assert all(c["status"] in ("not_gap", "gap_no_dirichlet") for c in certs)


def test_bands_requires_periodic(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "c.json",
                    {"potential": {"kind": "sturmian"}})
    rc = cli.main(["bands", "--config", cfg, "--out", str(tmp_path / "o")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_bands_rejects_missing_file(tmp_path, capsys):
    rc = cli.main(["bands", "--config", str(tmp_path / "missing.json")])
    assert rc == 2


def test_fsm_pass_and_outputs(tmp_path, capsys):
    cfg = fsm_cfg(tmp_path)
    out = tmp_path / "out"
    rc = cli.main(["fsm", "--config", cfg, "--out", str(out)])
    assert rc == 0
    assert "verdict: applicable_observed" in capsys.readouterr().out
    report = json.loads((out / "fsm_report.json").read_text())
    assert report["verdict"] == "applicable_observed"
    assert (out / "fsm_report.csv").exists()
    stability = (out / "stability.csv").read_text().splitlines()
    assert stability[0] == "size,sigma_min"
    assert len(stability) == 9


def test_fsm_expect_match_and_mismatch(tmp_path):
    cfg = fsm_cfg(tmp_path)
    out = str(tmp_path / "out")
    assert cli.main(["fsm", "--config", cfg, "--out", out,
                     "--expect", "applicable_observed"]) == 0
    assert cli.main(["fsm", "--config", cfg, "--out", out,
                     "--expect", "failure_observed"]) == 1


def test_fsm_failure_expected(tmp_path):
    cfg = write_cfg(tmp_path, "f.json", {
        "potential": {"kind": "periodic", "word": ["1/2", 2, "1/2"]},
        "z": 0,
        "scheme": {"side": "half_line",
                   "cutoffs": {"right": {"kind": "arithmetic",
                                         "start": 6, "step": 6}}},
        "count": 8})
    out = str(tmp_path / "out")
    assert cli.main(["fsm", "--config", cfg, "--out", out,
                     "--expect", "failure_observed"]) == 0
    # exploratory never fails on the verdict
    assert cli.main(["fsm", "--config", cfg, "--out", out,
                     "--exploratory"]) == 0


def test_fsm_inconclusive_exit(tmp_path):
    cfg = write_cfg(tmp_path, "f.json", {
        "potential": {"kind": "periodic", "word": [0]},
        "z": 0,
        "scheme": {"side": "full_line",
                   "cutoffs": {"right": {"kind": "explicit",
                                         "values": [5, 11, 17, 23]},
                               "left": {"kind": "explicit",
                                        "values": [6, 12, 18, 24]}}},
        "count": 4})
    rc = cli.main(["fsm", "--config", cfg, "--out", str(tmp_path / "o")])
    assert rc in (1, 3)


def test_fsm_rerun_byte_identical(tmp_path):
    cfg = fsm_cfg(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert cli.main(["fsm", "--config", cfg, "--out", str(out1)]) == 0
    assert cli.main(["fsm", "--config", cfg, "--out", str(out2)]) == 0
    for name in ("fsm_report.json", "fsm_report.csv", "stability.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_fsm_bad_scheme(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "f.json", {
        "potential": {"kind": "periodic", "word": [4]},
        "scheme": {"side": "diagonal",
                   "cutoffs": {"right": {"kind": "arithmetic"}}}})
    assert cli.main(["fsm", "--config", cfg]) == 2


@pytest.mark.parametrize("name", ["example-4-1", "example-4-2",
                                  "fibonacci-prefix"])
def test_reproduce_names_pass(tmp_path, capsys, name):
    rc = cli.main(["reproduce", name, "--out", str(tmp_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out
    assert out.strip().endswith("PASS")
    doc = json.loads((tmp_path / ("%s.json" % name)).read_text())
    assert doc["passed"] is True


def test_reproduce_integer_avoidance_small(tmp_path, capsys):
    rc = cli.main(["reproduce", "integer-avoidance", "--out", str(tmp_path),
                   "--seed", "7", "--count", "50"])
    assert rc == 0
    doc = json.loads((tmp_path / "integer-avoidance.json").read_text())
    assert doc["data"]["count"] == 50 and doc["data"]["seed"] == 7
    assert doc["data"]["violations"] == 0


def test_reproduce_unknown_name():
    with pytest.raises(SystemExit) as exc:
        cli.main(["reproduce", "nope"])
    assert exc.value.code == 2


def test_usage_error_on_missing_subcommand():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
