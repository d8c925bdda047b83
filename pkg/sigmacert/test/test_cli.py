import json
import os
from fractions import Fraction
from tempfile import TemporaryDirectory

import pytest

from ..group import CharacterError, template_spec
from ..sigma_cli import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, load_character_arg, parse_args, run_sigma

this_dir = os.path.dirname(os.path.realpath(__file__))
z2_spec = os.path.join(this_dir, "z2.yml")
f2_spec = os.path.join(this_dir, "f2.yml")
bs_spec = os.path.join(this_dir, "bs12.yml")


def _make_certificate(tmp_dir, flavor="hom", cv="0,1"):
    cert = os.path.join(tmp_dir, "cert.json")
    args = ["sigma", "--spec", z2_spec, "--char", "a=1,b=0", "--cv", cv, "--flavor", flavor, "--out", cert]
    assert run_sigma(args) == EXIT_OK
    assert os.path.exists(cert)
    return cert


def test_parse_args():
    ctx = parse_args(["sigma", "--spec", "Z2", "--char", "a=1,b=0", "--cv", "0,1,2", "--jobs", "3"])
    assert ctx.command == "sigma"
    assert ctx.spec == "Z2"
    assert ctx.jobs == 3
    assert ctx.flavor is None


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        parse_args(["sigma", "--jobs", "many"])
    assert exc.value.code == EXIT_ERROR


def test_load_character_arg():
    z2 = template_spec("Z2")
    assert load_character_arg(z2, "a=1, b=-1/2").values == (1, Fraction(-1, 2))
    assert load_character_arg(z2, os.path.join(this_dir, "char-z2.yml")).values == (1, 0)
    with pytest.raises(CharacterError):
        load_character_arg(z2, "a=1,b")
    with pytest.raises(CharacterError):
        load_character_arg(z2, "a=1,a=2")


def test_sigma_and_verify():
    with TemporaryDirectory(prefix="test-sigma-certify-") as tmp_dir:
        cert = _make_certificate(tmp_dir)
        assert run_sigma(["verify", cert, "--spec", z2_spec]) == EXIT_OK
        # the template gives the same group spec
        assert run_sigma(["verify", cert, "--spec", "Z2"]) == EXIT_OK
        assert run_sigma(["verify", cert, "--spec", f2_spec]) == EXIT_ERROR


def test_verify_rejects_flipped_coefficient(capsys):
    with TemporaryDirectory(prefix="test-sigma-certify-") as tmp_dir:
        cert = _make_certificate(tmp_dir)
        with open(cert) as f:
            data = json.load(f)
        data["tables"][0][0]["image"][0][0] = -1
        with open(cert, "w") as f:
            json.dump(data, f)
        assert run_sigma(["verify", cert, "--spec", z2_spec]) == EXIT_NEGATIVE
        assert "REJECT" in capsys.readouterr().err


def test_verify_unreadable_certificate():
    with TemporaryDirectory(prefix="test-sigma-certify-") as tmp_dir:
        cert = os.path.join(tmp_dir, "cert.json")
        with open(cert, "w") as f:
            f.write("{not json")
        assert run_sigma(["verify", cert, "--spec", z2_spec]) == EXIT_ERROR
        assert run_sigma(["verify", os.path.join(tmp_dir, "missing.json"), "--spec", z2_spec]) == EXIT_ERROR


def test_sigma_htpy():
    with TemporaryDirectory(prefix="test-sigma-certify-") as tmp_dir:
        cert = _make_certificate(tmp_dir, "htpy", "0,1,2")
        assert run_sigma(["verify", cert, "--spec", z2_spec, "--jobs", "2"]) == EXIT_OK


def test_sigma_maybe(capsys):
    with TemporaryDirectory(prefix="test-sigma-certify-") as tmp_dir:
        report = os.path.join(tmp_dir, "report.txt")
        args = ["sigma", "--spec", f2_spec, "--char", "a=1,b=0", "--cv", "0,1", "--max-radius", "3",
                "--report", report]
        assert run_sigma(args) == EXIT_NEGATIVE
        assert "MAYBE" in capsys.readouterr().out
        with open(report) as f:
            assert "reason: window exhausted" in f.read()


def test_sigma_errors():
    assert run_sigma(["sigma", "--spec", z2_spec, "--char", "a=1,b", "--cv", "0,1"]) == EXIT_ERROR
    assert run_sigma(["sigma", "--spec", z2_spec, "--char", "a=0,b=0", "--cv", "0,1"]) == EXIT_ERROR
    assert run_sigma(["sigma", "--spec", bs_spec, "--char", "a=1,t=0", "--cv", "0,1"]) == EXIT_ERROR
    # the character is fine, but the group has no word metric to search in
    assert run_sigma(["sigma", "--spec", bs_spec, "--char", "a=0,t=1", "--cv", "0,1"]) == EXIT_ERROR
    assert run_sigma(["sigma", "--spec", "Q8", "--char", "a=1", "--cv", "0,1"]) == EXIT_ERROR
    # homotopical runs are degree 2 only
    assert run_sigma(["sigma", "--spec", z2_spec, "--char", "a=1,b=0", "--cv", "0,1", "--flavor", "htpy"]) == EXIT_ERROR


def test_sigma_with_suggested_vector():
    args = ["sigma", "--spec", "Z2", "--char", "a=0,b=1", "--cv", "suggest", "--m", "1", "--max-radius", "3"]
    assert run_sigma(args) == EXIT_OK
    # the suggestion is bounded by --k-max, not by the window radius
    args = ["sigma", "--spec", "Z2", "--char", "a=0,b=1", "--cv", "suggest", "--m", "2", "--k-max", "1",
            "--max-radius", "4"]
    assert run_sigma(args) == EXIT_ERROR


def test_sigma_with_config():
    with TemporaryDirectory(prefix="test-sigma-certify-") as tmp_dir:
        cert = os.path.join(tmp_dir, "cert.json")
        assert run_sigma(["sigma", "--config", os.path.join(this_dir, "run-z2.yml"), "--out", cert]) == EXIT_OK
        with open(cert) as f:
            assert json.load(f)["connecting-vector"] == [0, 1]
        # command line options win over the configuration
        cert2 = os.path.join(tmp_dir, "cert2.json")
        args = ["sigma", "--config", os.path.join(this_dir, "run-z2.yml"), "--char", "a=-1,b=0", "--out", cert2]
        assert run_sigma(args) == EXIT_OK
        with open(cert2) as f:
            assert json.load(f)["t"] == "A"


def test_cone_command(capsys):
    with TemporaryDirectory(prefix="test-sigma-certify-") as tmp_dir:
        cert = _make_certificate(tmp_dir)
        assert run_sigma(["cone", cert, "--spec", z2_spec, "--char", "a=7,b=0"]) == EXIT_OK
        assert "member, u = 7" in capsys.readouterr().out
        assert run_sigma(["cone", cert, "--spec", z2_spec, "--char", "a=1,b=1/2"]) == EXIT_OK
        assert run_sigma(["cone", cert, "--spec", z2_spec, "--char", "a=-1,b=0"]) == EXIT_NEGATIVE
        assert "non-member" in capsys.readouterr().out
        assert run_sigma(["cone", cert, "--spec", z2_spec, "--describe"]) == EXIT_OK
        assert "a > 0" in capsys.readouterr().out


def test_ball_command(capsys):
    assert run_sigma(["ball", "--spec", z2_spec, "--radius", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 13
    assert lines[:5] == ["1", "a", "A", "b", "B"]
    assert run_sigma(["ball", "--spec", bs_spec, "--radius", "1"]) == EXIT_ERROR


def test_rips_command(capsys):
    assert run_sigma(["rips", "--spec", "Z2", "--q", "1", "--k", "1"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["(1, 1)", "(1, a)", "(1, A)", "(1, b)", "(1, B)"]


def test_suggest_command(capsys):
    assert run_sigma(["suggest", "--spec", "Z2", "--m", "2", "--k-max", "3", "--radius", "2"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "(0,1,2) [HEURISTIC]"
    assert run_sigma(["suggest", "--spec", "Z2", "--m", "1", "--k-max", "0", "--radius", "0"]) == EXIT_NEGATIVE
