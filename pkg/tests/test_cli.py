import io
import json
from pathlib import Path

import pytest

from quartic_faces.cli import run

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_jspace_s3(tmp_path):
    cfg = tmp_path / "s3.json"
    cfg.write_text(json.dumps({"points": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], "directed": []}))
    assert call("jspace", "--config", str(cfg)) == (0, "dim=3; basis: xy, xz, yz\n")
    assert call("jspace", "--config", "S3") == (0, (GOLDEN / "jspace_S3.txt").read_text())


def test_member_rejects_z4_over_t2_star():
    assert call("member", "--form", "z^4", "--class", "T2*") == (1, "no certificate; rejected (0-dimensional Gram slice)\n")


def test_member_json_contains_certificate():
    code, out = call("member", "--form", "y^4 + y^2*z^2", "--class", "T1*", "--json")
    data = json.loads(out)
    assert code == 0 and data["member"] and "gram" in data["certificate"]


@pytest.mark.parametrize("argv, golden", [
    (("catalog", "--json"), "catalog.json"),
    (("lattice", "--dot"), "lattice.dot"),
    (("lattice", "--json"), "lattice.json"),
    (("fullness", "--config", "T2"), "fullness_T2.txt"),
    (("blowup", "--form", "x^2*y^2 + 2*x*y*z^2 + z^4 + y^2*z^2 + y^4", "--point", "1,0,0", "--line", "0,1,0"), "blowup_T1star.txt"),
    (("exposed", "--class", "T4"), "exposed_T4.txt"),
])
def test_golden_outputs(argv, golden):
    code, out = call(*argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_inp_and_disc():
    assert call("inp", "--form", "z^4 + y^4", "--point", "1:0:0") == (0, "inp = all of P^1\n")
    code, out = call("disc", "--form", "x^2*y^2 + 2*x*y*z^2 + z^4 + y^4", "--point", "1,0,0", "--line", "y")
    assert (code, out) == (0, "D = -4*y^6\n")


def test_parse_error_cites_byte_offset(capsys):
    code, _ = call("member", "--form", "x^4 + + y^4", "--class", "S1")
    assert code == 2
    assert "at byte 6" in capsys.readouterr().err


def test_bad_json_cites_byte_offset(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"points": [["1","0","0"],')
    assert call("fullness", "--config", str(cfg))[0] == 2
    assert "at byte 26" in capsys.readouterr().err


def test_input_errors_exit_2(capsys):
    assert call("exposed", "--class", "nope")[0] == 2
    assert call("blowup", "--form", "x^4", "--point", "1,0,0")[0] == 2
    assert call("lattice")[0] == 2
    assert call("bogus")[0] == 2


def test_fullness_failure_exits_1(tmp_path):
    cfg = tmp_path / "line.json"
    cfg.write_text(json.dumps({"points": [["1", "0", "0"], ["0", "1", "0"], ["1", "1", "0"]], "directed": []}))
    code, out = call("fullness", "--config", str(cfg))
    assert code == 1 and out.rstrip().endswith("not full")


def test_certify_verify(tmp_path):
    code, out = call("member", "--form", "y^4 + y^2*z^2", "--class", "T1*", "--json")
    cert = json.loads(out)["certificate"]
    good = tmp_path / "good.json"
    good.write_text(json.dumps(cert))
    assert call("certify", "verify", str(good))[0] == 0
    cert["gram"][0][0] = "-1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    assert call("certify", "verify", str(bad))[0] == 1


def test_classify():
    code, out = call("classify", "--config", "T4", "--json")
    assert code == 0 and json.loads(out)["class"] == "T4"
    code, out = call("classify", "--form", "x^2*y^2 + 2*x*y*z^2 + z^4 + y^4", "--squares", "x*y + z^2; y^2")
    assert code == 0 and out.startswith("class T1** (type C)")


def test_verify_paper_quick_reports_every_check():
    code, out = call("verify-paper", "--quick", "--json")
    data = json.loads(out)
    assert [c["id"] for c in data["checks"]] == list(range(1, 10))
    assert code == (0 if data["passed"] else 1)
