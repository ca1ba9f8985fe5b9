import json
from fractions import Fraction

import pytest

from eiscong_lib.cli import build_parser, cmd_dispatch
from eiscong_lib.config import THREADS_ENV
from eiscong_lib.cyclotomic import CyclotomicNumber
from eiscong_lib.dirichlet import quadratic_character


@pytest.fixture
def run(tmp_path, monkeypatch):
    """Runs the CLI against an empty config file and decodes JSON output."""
    monkeypatch.delenv(THREADS_ENV, raising=False)
    config = str(tmp_path / "eiscong.cfg")

    def _run(*argv):
        code, out = cmd_dispatch(["--config", config, *argv])
        return code, (json.loads(out) if out.startswith("{") else out)

    return _run


def pair(chi1, chi2, k, ell=None):
    args = ["--char1", chi1, "--char2", chi2, "--k", str(k)]
    return args + (["--ell", str(ell)] if ell is not None else [])


def test_ramanujan_decision(run):
    code, out = run("decide", "strong-modularity", *pair("trivial", "trivial", 12, 691))
    assert code == 0
    assert out["verdict"] is True
    assert out["condition"] == "bernoulli-vanishes"
    assert (out["place"]["ell"], out["place"]["m"]) == (691, 1)


def test_level_raise_scan(run):
    code, out = run("scan", "level-raise", *pair("trivial", "trivial", 2, 5), "--bound", "100")
    assert code == 0
    assert out["primes"] == [11, 31, 41, 61, 71]
    assert out["bound"] == 100


def test_level_raise_decision(run):
    code, out = run("decide", "level-raise", *pair("trivial", "quad:4", 3, 7), "--M", "3")
    assert code == 0
    assert out["verdict"] is True
    assert out["condition"] == "eta-Mk-unit"
    assert out["witness"] == 3


def test_domain_errors_exit_one(run):
    code, out = run("decide", "strong-modularity", *pair("trivial", "trivial", 3, 7))
    assert code == 1
    assert out["error"] == "not-odd"
    code, out = run("bernoulli", "--k", "2", "--char", "quad:6")
    assert code == 1
    assert out["error"] == "not-primitive"
    code, out = run("gauss", "--char", "quad:x")
    assert code == 1
    assert out["error"] == "invalid-character"


def test_usage_errors_exit_two(run):
    assert run("decide", "strong-modularity", "--k", "12")[0] == 2
    short_gamma = ["--gamma", "1,2"]
    assert run("eis", "cusp-constant", *pair("trivial", "trivial", 4), *short_gamma)[0] == 2
    assert run("no-such-command")[0] == 2


def test_bernoulli(run):
    code, out = run("bernoulli", "--k", "12", "--char", "trivial")
    assert code == 0
    assert CyclotomicNumber.from_json(out["value"]) == Fraction(-691, 2730)


def test_gauss_sum(run):
    code, out = run("gauss", "--char", "quad:4")
    assert code == 0
    assert CyclotomicNumber.from_json(out["value"]) == CyclotomicNumber.root_of_unity(4) * 2


def test_qexpansion_and_reduction(run):
    code, out = run("eis", "qexp", *pair("trivial", "trivial", 4), "--precision", "3")
    assert code == 0
    coeffs = [CyclotomicNumber.from_json(c) for c in out["coeffs"]]
    assert coeffs == [Fraction(1, 240), 1, 9, 28]
    code, out = run(
        "eis", "qexp", *pair("trivial", "trivial", 12), "--precision", "2", "--ell", "691"
    )
    assert code == 0
    assert out["coeffs"][0] == [0]
    code, out = run("eis", "qexp", *pair("trivial", "trivial", 4), "--ell", "5")
    assert code == 1
    assert out == {"error": "not-integral", "detail": out["detail"], "index": 0}


def test_cusp_constant(run):
    gamma = ["--gamma", "0,-1,1,0", "--M", "3"]
    code, out = run("eis", "cusp-constant", *pair("trivial", "trivial", 4), *gamma)
    assert code == 0
    assert out["gamma"] == {"u": 0, "beta": -1, "v": 1, "delta": 0}
    assert CyclotomicNumber.from_json(out["value"]) == Fraction(1, 240 * 81)
    code, out = run(
        "eis", "cusp-constant", *pair("trivial", "trivial", 4), *gamma, "--variant", "F2"
    )
    assert code == 0
    assert CyclotomicNumber.from_json(out["value"]) == Fraction(1, 240) * (1 - Fraction(1, 81))


def test_characters_from_json_files(run, tmp_path):
    path = tmp_path / "chi.json"
    path.write_text(json.dumps(quadratic_character(4).to_json()))
    code, out = run("gauss", "--char-file", str(path))
    assert code == 0
    assert CyclotomicNumber.from_json(out["value"]) == CyclotomicNumber.root_of_unity(4, 1) * 2
    argv = ["--char1", "trivial", "--char2-file", str(path), "--k", "3", "--ell", "7"]
    code, out = run("decide", "level-raise", *argv, "--M", "3")
    assert code == 0 and out["verdict"] is True
    code, out = run("gauss", "--char-file", str(tmp_path / "missing.json"))
    assert code == 1 and out["error"] == "invalid-character"
    assert run("gauss", "--char", "quad:4", "--char-file", str(path))[0] == 2


def test_cuspidality(run):
    code, out = run("verify", "cuspidality", *pair("trivial", "trivial", 12, 691))
    assert code == 0
    assert out["cuspidal"] is True and out["M"] == 1


def test_precision_comes_from_config(run, tmp_path):
    (tmp_path / "eiscong.cfg").write_text("[Eisenstein]\nprecision = 5\n")
    code, out = run("eis", "qexp", *pair("trivial", "trivial", 4))
    assert code == 0
    assert out["precision"] == 5 and len(out["coeffs"]) == 6


def test_schema_lists_every_payload(run):
    code, out = run("schema")
    assert code == 0
    assert {"decision", "scan", "battery", "error"} <= set(out)


def test_text_format(run):
    argv = ["scan", "level-raise", *pair("trivial", "trivial", 2, 5), "--bound", "20"]
    code, out = run("--format", "text", *argv)
    assert code == 0
    assert "primes" in out and "[11]" in out


def test_unexpected_failures_are_reported(run, mocker):
    mocker.patch("eiscong_lib.cli.gauss_sum", side_effect=RuntimeError("boom"))
    code, out = run("gauss", "--char", "quad:3")
    assert code == 1
    assert out == {"error": "internal", "detail": "boom"}


def test_debug_topics_flag():
    args = build_parser().parse_args(["-d", "arith,oracle", "schema"])
    assert args.debug_topics == "arith,oracle"
    args = build_parser().parse_args(["-v", "schema"])
    assert args.verbose and args.debug_topics is None
