import json
import subprocess
import sys
import textwrap
from pathlib import Path

import pytest

from cuspfoliate import parse_poly
from cuspfoliate.cli import COMMANDS, main, run

JOBS = Path(__file__).resolve().parent.parent / "jobs"

DICRITICAL = """
[spec]
p = 2
q = 5
roots = -1, -2
multiplicities = 5, 10

[G]
terms = 1 0 1
"""

PLANE_CUSP = """
[variables]
names = x, y

[definitions]
f = y^2 + x^3
w1 = d(f)
w2 = 2*x*dy - 3*y*dx

[params]
poly = f
form = w2
forms = w1, w2
"""

GOLDEN = """
[spec]
p = 2
q = 3
roots = 1
multiplicities = 2
"""


@pytest.fixture
def job(tmp_path):
    def make(text, name="job.ini"):
        path = tmp_path / name
        path.write_text(textwrap.dedent(text))
        return str(path)
    return make


def objects(rep):
    return {o["name"]: o["text"] for o in rep.as_json()["objects"]}


class TestExamples:
    def test_dicritical_gs_condition(self, job, capsys):
        assert main(["gs-condition", job(DICRITICAL)]) == 1
        assert "nu = 2 < 3" in capsys.readouterr().out

    def test_dicritical_psi_z(self, job, capsys):
        assert main(["gs-condition", job(DICRITICAL.replace("1 0 1", "1 1 1"))]) == 0
        assert "nu = 7 >= 3" in capsys.readouterr().out

    def test_plane_cusp_saito_basis(self, job, capsys):
        assert main(["saito-basis", job(PLANE_CUSP)]) == 0
        assert "U = 6, unit" in capsys.readouterr().out

    def test_golden_resolve(self, job, capsys):
        assert main(["resolve", job(GOLDEN)]) == 0
        out = capsys.readouterr().out
        assert [line for line in out.splitlines() if line.startswith("== ")] == [
            "== Step I ==", "== Step II ==", "== Step III(1) =="]
        rep = run("resolve", job(GOLDEN))
        final = objects(rep)["final surface"]
        assert parse_poly(final, ("x", "y", "z")) == parse_poly("z^2 + 1", ("x", "y", "z"))
        assert all(v["holds"] for v in rep.verdicts)

    def test_dicritical_resolve_unsupported(self, job, capsys):
        assert main(["resolve", job(DICRITICAL)]) == 3
        assert "Step II" in capsys.readouterr().out


class TestCommands:
    def test_check_integrable(self, job):
        assert run("check-integrable", str(JOBS / "nonintegrable.ini")).status == 1
        assert run("check-integrable", str(JOBS / "cusp_line.ini")).status == 0

    def test_check_logarithmic(self, job):
        assert run("check-logarithmic", job(PLANE_CUSP)).status == 0
        text = PLANE_CUSP.replace("form = w2", "form = dx")
        assert run("check-logarithmic", job(text)).status == 1

    def test_meromorphic(self, job):
        text = PLANE_CUSP + "denominator = f\n"
        rep = run("check-logarithmic", job(text))
        assert rep.status == 0 and len(rep.verdicts) == 3

    def test_saito_decompose(self, job):
        rep = run("saito-decompose", job(PLANE_CUSP + "factors = f\n"))
        assert rep.status == 0
        o = objects(rep)
        assert (o["g"], o["h"], o["alpha"]) == ("3*x^2", "3*y", "6*dy")

    def test_cusp_decompose(self):
        rep = run("cusp-decompose", str(JOBS / "cusp_line.ini"))
        assert rep.status == 0
        o = objects(rep)
        assert (o["U"], o["H"], o["omega3"]) == ("1", "3", "0")

    def test_cusp_decompose_order_violation(self, job):
        text = """
        [variables]
        names = x, y, z
        [params]
        form = z*d(z^2 + x*y)
        phi = x*y
        """
        assert run("cusp-decompose", job(text)).status == 1

    def test_assemble(self, job):
        rep = run("assemble", job(GOLDEN))
        assert rep.status == 0
        o = objects(rep)
        assert (o["P"], o["Q"], o["a_exp"], o["b_exp"]) == ("4", "2", "3", "2")

    def test_valuation(self, job):
        text = """
        [variables]
        names = x, y
        [params]
        poly = x*y
        p = 6
        q = 3
        """
        rep = run("valuation", job(text))
        assert rep.status == 0 and objects(rep)["nu_(p,q)"] == "3"

    def test_weights(self):
        rep = run("weights", str(JOBS / "weights.ini"))
        assert rep.status == 0 and objects(rep)["weights"] == "2,3,6"

    def test_loray_not_satisfied(self):
        rep = run("loray-2d", str(JOBS / "loray_threshold.ini"))
        assert rep.status == 1
        assert rep.verdicts[0]["details"] == "nu = 3 <= 10/3"


class TestExitCodes:
    def test_missing_file(self, tmp_path):
        assert main(["resolve", str(tmp_path / "absent.ini")]) == 2

    def test_unknown_command(self, job):
        assert main(["nonsense", job(GOLDEN)]) == 2

    @pytest.mark.parametrize("text", [
        "[spec]\np = 2\nq = 3\nroots = 1, 1\nmultiplicities = 1, 2\n",
        "[spec]\np = 2\nq = 3\nroots = 1\n",
        "[spec]\np = two\n",
        "[variables]\nnames = x, y\n[params]\nform = 2*dq\n",
        "[variables]\nnames = x, y\n[params]\nform = (x + \n",
        "not an ini file",
    ])
    def test_input_errors(self, job, text):
        command = "check-integrable" if "[variables]" in text else "assemble"
        assert run(command, job(text)).status == 2

    def test_negative_exponent_unsupported(self, job):
        text = GOLDEN.replace("multiplicities = 2", "multiplicities = 1")
        assert run("resolve", job(text)).status == 3

    @pytest.mark.parametrize("command", COMMANDS)
    @pytest.mark.parametrize("name", sorted(p.name for p in JOBS.glob("*.ini")))
    def test_total(self, command, name):
        assert run(command, str(JOBS / name)).status in (0, 1, 2, 3)


class TestJson:
    @pytest.mark.parametrize("command,name", [
        ("resolve", "golden.ini"), ("gs-condition", "dicritical.ini"), ("saito-basis", "plane_cusp.ini"),
        ("cusp-decompose", "cusp_line.ini"), ("assemble", "dicritical.ini"), ("weights", "weights.ini"),
    ])
    def test_round_trip(self, command, name, tmp_path, capsys):
        job = str(JOBS / name)
        main([command, job, "--json"])
        data = json.loads(capsys.readouterr().out)
        assert set(data) == {"command", "inputs", "verdicts", "objects"}
        report = tmp_path / "report.json"
        report.write_text(json.dumps(data))
        assert main([command, job, "--verify-report", str(report)]) == 0

    def test_tampered_report(self, tmp_path, capsys):
        job = str(JOBS / "dicritical.ini")
        main(["gs-condition", job, "--json"])
        data = json.loads(capsys.readouterr().out)
        data["verdicts"][0]["holds"] = True
        report = tmp_path / "report.json"
        report.write_text(json.dumps(data))
        assert main(["gs-condition", job, "--verify-report", str(report)]) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cuspfoliate", "saito-basis", str(JOBS / "plane_cusp.ini")],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "U = 6, unit" in proc.stdout
