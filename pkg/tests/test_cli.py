import subprocess
import sys

import pytest

from charprod import cli
from charprod.chains import VerificationReport
from charprod.cli import EXIT_DIAGNOSTIC, EXIT_OK, EXIT_VERIFY_FAILED, RunConfig, main, run


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eta_extraspecial(capsys):
    code, out, _ = call(capsys, "eta", "--zoo", "extraspecial:3", "--chi", "deg=3")
    assert code == EXIT_OK
    assert "eta=8" in out.split()
    assert out.endswith("multiplicities=1,1,1,1,1,1,1,1\n")


def test_decompose_a6(capsys):
    code, out, _ = call(capsys, "decompose", "--zoo", "A6", "--chi", "deg=10")
    assert code == EXIT_OK
    assert out == "chi=6 deg=10 eta=6 decomp= 1*1 + 2*1 + 2*2 + 2*3 + 2*4 + 3*5 + 2*6\n"


def test_pmax(capsys):
    assert call(capsys, "pmax", "2") == (EXIT_OK, "p(2)=2\n", "")
    assert call(capsys, "pmax", "1", "10")[1] == "p(1)=1\np(10)=36\n"


def test_table_golden(capsys):
    code, out, _ = call(capsys, "table", "--zoo", "S3")
    assert out == "irr 3 classes 3 order 6 exponent 6\n1 1 1\n1 1 -1\n2 -1 0\n"


def test_chain_golden(capsys):
    code, out, _ = call(capsys, "chain", "--zoo", "Q8", "--chi", "deg=2")
    assert code == EXIT_OK
    assert out == ("group=Q8 chi=4 deg=2\n"
                   "chain group=Q8 k=1 eta=3 r=[1]\n"
                   "step=0 order=8 theta_deg=2\n"
                   "step=1 order=4 theta_deg=1\n"
                   "chief step=1 L_order=8 N_order=4\n")


def test_row_selector(capsys):
    assert call(capsys, "eta", "--zoo", "S3", "--chi", "row=2")[1] == "chi=2 deg=2 eta=2 multiplicities=1,1\n"


def test_verify_single_group(capsys):
    code, out, _ = call(capsys, "verify", "--zoo", "Q8")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0].startswith("lemma-controlingfunction ")
    assert lines[-1] == "summary groups=1 pass=10 fail=0 hypotheses-not-met=0"
    assert all(" status=" in ln for ln in lines[:-1])


def test_verify_a6_negative_control(capsys):
    code, out, _ = call(capsys, "verify", "--zoo", "A6", "--chi", "deg=10")
    assert code == EXIT_OK
    line = next(ln for ln in out.splitlines() if ln.startswith("theorem-C "))
    assert "status=hypotheses-not-met" in line and "hypotheses violated" in line


def test_verify_corpus_small(capsys):
    code, out, _ = call(capsys, "verify", "--corpus", "--max-order", "12")
    assert code == EXIT_OK
    assert any(ln.startswith("summary-check theorem-C ") for ln in out.splitlines())
    assert out.splitlines()[-1].startswith("summary groups=")
    assert " fail=0 " in out.splitlines()[-1]


def test_verify_with_exhaustive_chains(capsys):
    code, out, _ = call(capsys, "verify", "--zoo", "SL(2,3)", "--exhaustive-chains")
    assert code == EXIT_OK
    assert "chain-definition-exhaustive" in out


def test_failed_verification_exit_code(monkeypatch):
    def broken(G, chi, exhaustive=False):
        return [VerificationReport("theorem-C", G.label, str(chi.index), "fail", "forced")]
    monkeypatch.setattr(cli, "verify_all", broken)
    status, text = run(RunConfig("verify", zoo="S3"))
    assert status == EXIT_VERIFY_FAILED
    assert "status=fail" in text


@pytest.mark.parametrize("argv", [
    ["eta", "--zoo", "Nope", "--chi", "deg=1"],
    ["eta", "--zoo", "S3", "--chi", "deg=7"],
    ["eta", "--zoo", "S3", "--chi", "row=9"],
    ["eta", "--zoo", "S3", "--chi", "nonsense"],
    ["table", "--file", "/nonexistent/group.perm"],
    ["table"],
    ["table", "--zoo", "S3", "--file", "x.perm"],
    ["frobnicate"],
    ["pmax"],
    ["pmax", "99"],
    ["table", "--zoo", "S4", "--max-order", "10"],
    ["verify", "--corpus", "--zoo", "S3"],
])
def test_diagnostics(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == EXIT_DIAGNOSTIC
    assert out == ""
    assert err


def test_file_input(tmp_path, capsys):
    f = tmp_path / "s3.perm"
    f.write_text("perm 3\n(1 2 3)\n(1 2)\n")
    _, out, _ = call(capsys, "table", "--file", str(f))
    assert out.startswith("irr 3 classes 3 order 6")
    bad = tmp_path / "bad.perm"
    bad.write_text("perm 3\n(1 2 9)\n")
    code, _, err = call(capsys, "table", "--file", str(bad))
    assert code == EXIT_DIAGNOSTIC and "out of range" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code, out, _ = call(capsys, "eta", "--zoo", "Q8", "--chi", "deg=2", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert target.read_text() == "chi=4 deg=2 eta=3 multiplicities=1,1,1\n"


def test_corpus_out_directory(tmp_path, capsys):
    code, out, _ = call(capsys, "corpus", "--max-order", "6", "--out", str(tmp_path / "groups"))
    assert code == EXIT_OK
    files = sorted(p.name for p in (tmp_path / "groups").iterdir())
    assert "C2_C2.cayley" in files and "S3.cayley" in files
    assert len(files) == len(out.splitlines())
    _, table, _ = call(capsys, "table", "--file", str(tmp_path / "groups" / "S3.cayley"))
    assert table.startswith("irr 3 classes 3 order 6")


def test_reports_are_deterministic(capsys):
    argv = ["verify", "--zoo", "heis:3:1,0,0,2"]
    first = call(capsys, *argv)
    assert call(capsys, *argv) == first


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "charprod", "chain", "--zoo", "extraspecial:3", "--chi", "deg=3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and b"k=1" in a
    bad = subprocess.run([sys.executable, "-m", "charprod", "eta", "--zoo", "Nope", "--chi", "deg=1"],
                         capture_output=True)
    assert bad.returncode == EXIT_DIAGNOSTIC and bad.stderr.startswith(b"error:")
