from pjsat.cli import main


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestSat:
    def test_sat_exit_zero(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "P>=1/2 p1 & P>=1/2 ~p1\n")
        assert main(["sat", f]) == 0
        out = capsys.readouterr().out
        assert out.startswith("SAT\n")
        assert "check PASS" in out

    def test_unsat_exit_one(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "P>=1 p1 & ~P>=1/2 p1\n")
        assert main(["sat", f]) == 1
        assert capsys.readouterr().out.strip() == "UNSAT"

    def test_parse_error_exit_two(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "P>= p1\n")
        assert main(["sat", f]) == 2
        assert "error:" in capsys.readouterr().err

    def test_cap_exceeded_exit_three(self, tmp_path, capsys):
        f = write(
            tmp_path, "f.pj",
            "P>=1/2 (p1 & p2 & p3 & p4)\n",
        )
        assert main(["sat", f, "--cap", "3"]) == 3
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exit_two(self, tmp_path):
        assert main(["sat", str(tmp_path / "absent.pj")]) == 2

    def test_comments_stripped(self, tmp_path):
        f = write(tmp_path, "f.pj", "# goal\nP>=1/2 p1  # half\n")
        assert main(["sat", f]) == 0

    def test_dump_lp(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "P>=1/2 p1\n")
        assert main(["sat", f, "--dump-lp"]) == 0
        out = capsys.readouterr().out
        assert "= 1" in out and ">= 1/2" in out

    def test_model_out_then_check(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "P>=1/2 p1 & P>=1/2 ~p1\n")
        mpath = str(tmp_path / "m.out")
        assert main(["sat", f, "--model-out", mpath]) == 0
        capsys.readouterr()
        assert main(["check", f, "--model", mpath]) == 0
        assert capsys.readouterr().out.strip() == "check PASS"


class TestValid:
    def test_not_valid(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "P>=1 p1\n")
        assert main(["valid", f]) == 1
        assert capsys.readouterr().out.strip() == "NOT-VALID"

    def test_valid(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "~(P>=1 p1 & ~P>=1 p1)\n")
        assert main(["valid", f]) == 0
        assert capsys.readouterr().out.strip() == "VALID"


class TestJsat:
    def test_sat(self, tmp_path, capsys):
        f = write(tmp_path, "f.j", "t:p1 & ~s:p1\n")
        assert main(["jsat", f]) == 0
        assert capsys.readouterr().out.strip() == "SAT"

    def test_unsat_trap(self, tmp_path, capsys):
        f = write(tmp_path, "f.j", "s:~(p1 & ~p2) & t:p1 & ~(s.t):p2\n")
        assert main(["jsat", f]) == 1
        assert capsys.readouterr().out.strip() == "UNSAT"


class TestAtoms:
    def test_listing(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "P>=1/2 p1\n")
        assert main(["atoms", f]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("atom 1 ")
        assert all(" jsat: " in l or " junsat: " in l for l in lines)

    def test_accepts_plain_justification_formula(self, tmp_path, capsys):
        f = write(tmp_path, "f.j", "t:p1\n")
        assert main(["atoms", f]) == 0
        # basis is {p1, t:p1}, hence four atoms
        assert len(capsys.readouterr().out.strip().splitlines()) == 4


class TestCheck:
    def test_bad_model_fails(self, tmp_path, capsys):
        f = write(tmp_path, "f.pj", "P>=1 p1\n")
        m = write(
            tmp_path, "m.out",
            "SAT\nworld 1 weight 1 atom ~p1\ncheck PASS\n",
        )
        assert main(["check", f, "--model", m]) == 1
        captured = capsys.readouterr()
        assert captured.out.strip() == "check FAIL"
        assert captured.err

    def test_malformed_model_exit_two(self, tmp_path):
        f = write(tmp_path, "f.pj", "P>=1 p1\n")
        m = write(tmp_path, "m.out", "who knows\n")
        assert main(["check", f, "--model", m]) == 2


class TestCsLoading:
    def test_custom_cs_changes_verdict(self, tmp_path, capsys):
        # without SUM_L instances, c1 can justify nothing here
        cs = write(tmp_path, "cs.txt", "[schematic]\nc1 : SUM_L\n")
        f = write(tmp_path, "f.j", "~c1:(x1:p1 -> (x1+x2):p1)\n")
        assert main(["jsat", f, "--cs", cs]) == 1
        capsys.readouterr()
        empty = write(tmp_path, "empty.txt", "[schematic]\n")
        assert main(["jsat", f, "--cs", empty]) == 0

    def test_validation_failure_exit_two(self, tmp_path, capsys):
        cs = write(tmp_path, "cs.txt", "[schematic]\nc1 : SUM_L\nc1 : SUM_R\n")
        f = write(tmp_path, "f.j", "t:p1\n")
        assert main(["jsat", f, "--cs", cs, "--require-injective"]) == 2
        assert "c1" in capsys.readouterr().err

    def test_bad_cs_file_exit_two(self, tmp_path):
        cs = write(tmp_path, "cs.txt", "c1 : APP\n")
        f = write(tmp_path, "f.j", "t:p1\n")
        assert main(["jsat", f, "--cs", cs]) == 2


class TestUsage:
    def test_no_command(self):
        assert main([]) == 2

    def test_unknown_flag(self, tmp_path):
        f = write(tmp_path, "f.pj", "P>=1 p1\n")
        assert main(["sat", f, "--frobnicate"]) == 2
