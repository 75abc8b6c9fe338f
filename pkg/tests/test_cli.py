import json

from tensorlie import constructors as C
from tensorlie.cli import main
from tensorlie.exactfield import QQ


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_solve_poisson_sl3(capsys):
    code, out = run(capsys, "solve", "poisson", "catalog:sl_n,n=3", "--no-basis")
    assert code == 0
    d = json.loads(out.out)
    assert (d["dim"], d["quotient_dim"], d["verified"]) == (2, 1, True)
    assert "basis" not in d


def test_solve_writes_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, _ = run(capsys, "solve", "centroid", "catalog:sl_n,n=2", "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text())["dim"] == 1


def test_check_jacobi_bi_zassenhaus(capsys):
    code, out = run(capsys, "check", "jacobi", "catalog:bi_zassenhaus,g=2,h=1")
    assert code == 0 and json.loads(out.out)["holds"]


def test_check_failure_exit_code(capsys, tmp_path):
    f = tmp_path / "nv.json"
    f.write_text(json.dumps(C.novikov_vi(QQ).to_json()))
    code, out = run(capsys, "check", "jacobi", str(f))
    assert code == 2
    assert json.loads(out.out)["counterexample"] == [0, 0, 0]
    code, _ = run(capsys, "check", "left_novikov", str(f))
    assert code == 0


def test_inline_json_and_field_override(capsys):
    inline = json.dumps(C.nonabelian2(QQ).to_json())
    code, out = run(capsys, "solve", "homlie", inline, "--field", "Fp:5", "--no-basis")
    assert code == 0 and json.loads(out.out)["dim"] == 4


def test_input_errors(capsys):
    assert run(capsys, "check", "jacobi", "catalog:nope")[0] == 1
    assert run(capsys, "report", "nope")[0] == 1
    assert run(capsys, "solve", "poisson", "{not json")[0] == 1


def test_cap_needs_force(capsys):
    code, out = run(capsys, "solve", "poisson", "catalog:kac_moody_analog", "--no-basis")
    assert code == 1 and "--force" in out.err


def test_probe7(capsys):
    code, out = run(capsys, "probe7", "--reference-matrices", "--samples", "20", "--seed", "0")
    assert code == 0
    d = json.loads(out.out)
    assert d["reference_matrices"]["rank"] == 6
    assert d["sampling"]["samples"] == 20


def test_construct_current(capsys):
    code, out = run(capsys, "construct", "current", "catalog:sl_n,n=2", "catalog:dual_numbers")
    assert code == 0 and json.loads(out.out)["dim"] == 6


def test_cohomology_trivial(capsys):
    code, out = run(capsys, "cohomology", "catalog:sl_n,n=2", "--degree", "3")
    assert code == 0 and json.loads(out.out)["dim"] == 1


def test_report_poisson_classical(capsys):
    code, out = run(capsys, "report", "poisson_classical", "--json")
    assert code == 0
    d = json.loads(out.out)
    assert d["suite"] == "poisson_classical"
    assert [r["computed"] for r in d["rows"]] == [0, 1, 2, 2]
    assert all(r["pass"] for r in d["rows"])
