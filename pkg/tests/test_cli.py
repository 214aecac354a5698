import json
import subprocess
import sys

from gclink.cli import main


def run_cli(*argv):
    return main(list(argv))


class TestCertify:
    def test_certify_2_5(self, tmp_path, capsys):
        out = tmp_path / "cert.json"
        assert run_cli("certify", "2/5", "--json", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["link"]["component_count"] == 5
        assert doc["covering"]["total_degree"] == 10
        captured = capsys.readouterr()
        assert "certified 2/5" in captured.out

    def test_certify_trivial_link_exit_2(self, capsys):
        assert run_cli("certify", "1/0") == 2
        assert "trivial two component link" in capsys.readouterr().err

    def test_certify_gcd_failure_exit_2(self, capsys):
        assert run_cli("certify", "2/4") == 2
        assert "coprime" in capsys.readouterr().err

    def test_certify_stdout_json(self, capsys):
        assert run_cli("certify", "1/2") == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["input"]["fraction"] == "1/2"


class TestRecheck:
    def test_round_trip(self, tmp_path, capsys):
        out = tmp_path / "cert.json"
        assert run_cli("certify", "3/7", "--json", str(out)) == 0
        assert run_cli("recheck", str(out)) == 0
        assert "all" in capsys.readouterr().out

    def test_tampered_document_exit_1(self, tmp_path, capsys):
        out = tmp_path / "cert.json"
        run_cli("certify", "2/5", "--json", str(out))
        doc = json.loads(out.read_text())
        doc["covering"]["total_degree"] = 99
        out.write_text(json.dumps(doc))
        assert run_cli("recheck", str(out)) == 1

    def test_unreadable_exit_2(self, tmp_path):
        bad = tmp_path / "nope.json"
        assert run_cli("recheck", str(bad)) == 2
        bad.write_text("{not json")
        assert run_cli("recheck", str(bad)) == 2


class TestClassificationCommands:
    def test_twobridge_3_7(self, capsys):
        assert run_cli("twobridge", "3/7") == 0
        out = capsys.readouterr().out
        assert "VIRTUALLY_FIBERED" in out
        assert "D_{3/7}" in out and "degree 14" in out

    def test_twobridge_json(self, tmp_path):
        out = tmp_path / "verdict.json"
        assert run_cli("twobridge", "2/5", "--json", str(out)) == 0
        payload = json.loads(out.read_text())
        assert payload["status"] == "FIBERED"
        assert payload["expansion"]["signs"] == [1, 1]

    def test_montesinos_figure_example(self, capsys):
        assert run_cli("montesinos", "-t", "1/2", "-t", "1/3", "-t", "2/5") == 0
        out = capsys.readouterr().out
        assert "SPHERICAL" in out and "VIRTUALLY_FIBERED" in out
        assert "-37/30" in out

    def test_montesinos_invalid_tangle(self, capsys):
        assert run_cli("montesinos", "-t", "2/4") == 2

    def test_equiv(self, capsys):
        assert run_cli("equiv", "1/3", "2/3") == 0
        assert "equivalent" in capsys.readouterr().out
        assert run_cli("equiv", "1/3", "1/5") == 0
        assert "inequivalent" in capsys.readouterr().out


class TestProject:
    def test_project_2_5(self, tmp_path, capsys):
        out = tmp_path / "d.svg"
        assert run_cli("project", "2/5", "--svg", str(out)) == 0
        svg = out.read_text()
        assert svg.count('class="component"') == 5
        assert "5 components" in capsys.readouterr().out

    def test_project_deterministic(self, tmp_path):
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        run_cli("project", "2/5", "--svg", str(a))
        run_cli("project", "2/5", "--svg", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_project_trivial_exit_2(self):
        assert run_cli("project", "1/0") == 2

    def test_project_bad_samples_exit_2(self):
        assert run_cli("project", "2/5", "--samples", "10") == 2


class TestEntryPoint:
    def test_module_invocation(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "gclink", "equiv", "3/7", "5/7"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "equivalent" in proc.stdout
