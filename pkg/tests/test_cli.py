import json

from ncplane.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAlgebraCommands:
    def test_bracket_canonical_output(self, capsys):
        code, out, _ = run(capsys, "bracket", "q1*p2", "q2*p1")
        assert code == 0
        assert out.splitlines() == ["-q1*p1 + q2*p2 + theta*p1*p2"]

    def test_bracket_with_point_evaluation(self, capsys):
        code, out, _ = run(capsys, "bracket", "q1*p2", "q2*p1",
                           "--point", "1,2,3,4", "--theta", "0.5")
        assert code == 0
        assert out.splitlines()[1] == "value at (1, 2, 3, 4), theta=1/2: 11"

    def test_theta_accepts_ratio_and_decimal(self, capsys):
        ratio = run(capsys, "bracket", "q1", "q2",
                    "--point", "0,0,0,0", "--theta", "1/10")
        decimal = run(capsys, "bracket", "q1", "q2",
                      "--point", "0,0,0,0", "--theta", "0.1")
        assert ratio == decimal
        assert ratio[1].splitlines()[1] == "value at (0, 0, 0, 0), theta=1/10: 1/10"

    def test_vf_components(self, capsys):
        code, out, _ = run(capsys, "vf", "q1")
        assert code == 0
        assert out.splitlines() == ["q1: 0", "q2: theta", "p1: -1", "p2: 0"]

    def test_bopp(self, capsys):
        code, out, _ = run(capsys, "bopp", "q1")
        assert code == 0
        assert out.strip() == "q1 - 1/2*theta*p2"

    def test_cocycle_mixing(self, capsys):
        code, out, _ = run(capsys, "cocycle",
                           "1", "0", "0", "0", "0", "0",
                           "0", "0", "1", "0", "0", "0")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "z1 = -1"
        assert lines[1] == "z2 = 0"
        assert lines[2] == "central value: -1"
        assert lines[3] == "double-sum convention: -1"

    def test_cocycle_momentum_pair_shows_doubling(self, capsys):
        code, out, _ = run(capsys, "cocycle",
                           "0", "0", "1", "0", "0", "0",
                           "0", "0", "0", "1", "0", "0")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "z1 = 0"
        assert lines[1] == "z2 = 1"
        assert lines[2] == "central value: theta"
        assert lines[3] == "double-sum convention: 2*theta"

    def test_grouplaw(self, capsys):
        code, out, _ = run(capsys, "grouplaw",
                           "1", "0", "0", "0", "0", "0",
                           "0", "0", "1", "0", "0", "0")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "product: a=(1, 0) b=(1, 0) c=-1/2 d=0"
        assert lines[1] == "commutator: a=(0, 0) b=(0, 0) c=-1 d=0"

    def test_momentmap(self, capsys):
        code, out, _ = run(capsys, "momentmap", "0", "0", "0", "1", "0", "0")
        assert code == 0
        assert out.strip() == "q2 + 1/2*theta*p1"

    def test_rational_arguments(self, capsys):
        code, out, _ = run(capsys, "momentmap",
                           "1/2", "0", "0.25", "0", "0", "0")
        assert code == 0
        assert out.strip() == "1/4*q1 + 1/2*p1 - 1/8*theta*p2"


class TestErrorPaths:
    def test_parse_error_exits_2_with_offset(self, capsys):
        code, _, err = run(capsys, "bracket", "q1 +", "q2")
        assert code == 2
        assert "byte offset 4" in err

    def test_unknown_identifier_offset(self, capsys):
        code, _, err = run(capsys, "bopp", "q1 + q7")
        assert code == 2
        assert "byte offset 5" in err

    def test_malformed_rational_exits_2(self, capsys):
        code, _, _ = run(capsys, "momentmap", "1", "x", "0", "0", "0", "0")
        assert code == 2

    def test_malformed_point_exits_2(self, capsys):
        code, _, _ = run(capsys, "bracket", "q1", "q2", "--point", "1,2")
        assert code == 2

    def test_missing_subcommand_exits_2(self, capsys):
        code, _, _ = run(capsys)
        assert code == 2

    def test_bad_grid_exits_3(self, capsys):
        code, _, err = run(capsys, "rep-check", "--grid-n", "100")
        assert code == 3
        assert "power of two" in err

    def test_blowup_exits_3(self, capsys):
        code, _, err = run(capsys, "evolve", "q1^2*p1", "--x0", "1,0,0,0",
                           "--time", "2", "--dt", "0.001")
        assert code == 3
        assert "integration failed" in err

    def test_leaking_gaussian_exits_3(self, capsys):
        code, _, err = run(capsys, "rep-check", "--box-l", "2")
        assert code == 3
        assert "leaks" in err


class TestRepCheck:
    def test_passes_on_defaults(self, capsys):
        code, out, _ = run(capsys, "rep-check", "--grid-n", "128",
                           "--box-l", "16")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 11   # 5 weyl relations + 6 commutators
        assert all(line.startswith("PASS") for line in lines)

    def test_impossible_tolerance_fails(self, capsys):
        code, out, _ = run(capsys, "rep-check", "--grid-n", "128",
                           "--box-l", "16", "--tol", "1e-300")
        assert code == 1
        assert "FAIL" in out


class TestEvolve:
    def test_csv_shape_and_energy_column(self, capsys):
        code, out, _ = run(capsys, "evolve", "(p1^2+q1^2)/2",
                           "--x0", "1,0,0,0", "--time", "0.1", "--dt", "0.01",
                           "--theta", "0")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "t,q1,q2,p1,p2,H"
        assert len(lines) == 12   # header + 10 steps + initial sample
        energies = [float(line.split(",")[5]) for line in lines[1:]]
        assert max(abs(e - energies[0]) for e in energies) < 1e-10


class TestVerifyAll:
    def test_text_report(self, capsys):
        code, out, _ = run(capsys, "verify-all", "--grid-n", "128",
                           "--box-l", "16")
        assert code == 0
        assert out.splitlines()[-1].startswith("PASS overall")

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "verify-all", "--grid-n", "128",
                           "--box-l", "16", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert payload["config"]["grid_n"] == 128

    def test_strict_tolerance_fails(self, capsys):
        code, out, _ = run(capsys, "verify-all", "--grid-n", "128",
                           "--box-l", "16", "--tol", "1e-300")
        assert code == 1
        assert "FAIL" in out
