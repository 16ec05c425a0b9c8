"""
Tests for the command line front end
"""
import json
from unittest.mock import MagicMock, patch

import pytest

import cli
from laurent import LaurentPolynomial
from models import VerificationReport


class TestDataCommands:
    def test_kl_csv(self, capsys):
        """Test the h table of (4, 2) as CSV"""
        status = cli.main(["kl", "--n", "4", "--i", "2", "--format", "csv"])
        out = capsys.readouterr().out
        assert status == 0
        assert len(out.splitlines()) == 37
        assert "DDUU,UDUD,v^3+v" in out.splitlines()

    def test_invkl_json(self, capsys):
        """Test the g table as JSON"""
        assert cli.main(["invkl", "--n", "4", "--i", "2", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["kind"] == "g"
        assert {"lambda": "DUDU", "mu": "UDUD", "polynomial": [[2, "1"]]} in data["entries"]

    def test_rouquier_ascii(self, capsys):
        """Test the complex of UDUD column by column"""
        assert cli.main(["rouquier", "--n", "4", "--i", "2", "--mu", "UDUD"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].split() == ["-2", "-1", "0"]

    def test_rouquier_csv(self, capsys):
        """Test one row per summand"""
        assert cli.main(["rouquier", "--n", "4", "--i", "2", "--mu", "UDUD", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "degree,path,shift"
        assert "-2,DUDU,-2" in lines
        assert len(lines) == 6

    def test_homdim_json(self, capsys):
        """Test the Hom dimensions of DUDU below UDUD"""
        assert cli.main(["homdim", "--n", "4", "--i", "2", "--lam", "DUDU", "--mu", "UDUD",
                         "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["hom1"] == 0
        assert data["hom2"] == 2
        assert LaurentPolynomial.parse(data["cellular"]) == LaurentPolynomial({4: 1, 2: 2})

    def test_homdim_equal_paths(self, capsys):
        """Test that hom1 and hom2 are absent for lam = mu"""
        assert cli.main(["homdim", "--n", "4", "--i", "2", "--lam", "UDUD", "--mu", "UDUD"]) == 0
        out = capsys.readouterr().out
        assert "hom1: -" in out
        assert "hom2: -" in out

    def test_partitions_csv(self, capsys):
        """Test the two partitions of A(DDUU, UDUD)"""
        assert cli.main(["partitions", "--n", "4", "--i", "2", "--lam", "DDUU", "--mu", "UDUD",
                         "--format", "csv"]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 3

    def test_render_defaults_to_identity(self, capsys):
        """Test render without --lam draws the region above the identity"""
        assert cli.main(["render", "--n", "4", "--i", "2", "--mu", "UDUD", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["lambda"] == "DDUU"
        assert data["boxes"] == [[1, 2], [2, 1], [3, 2]]

    def test_neat_csv(self, capsys):
        """Test both neat orders of UDUD"""
        assert cli.main(["neat", "--n", "4", "--i", "2", "--mu", "UDUD", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "order,pair"
        assert lines[1].startswith("1 3,")
        assert lines[2].startswith("3 1,")

    def test_output_file(self, tmp_path, capsys):
        """Test --output writes the data and leaves stdout empty"""
        target = tmp_path / "h.csv"
        assert cli.main(["kl", "--n", "3", "--i", "1", "--format", "csv", "--output", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert len(target.read_text(encoding="utf-8").splitlines()) == 10

    def test_emit_fixtures(self, tmp_path):
        """Test --emit-fixtures writes the files of the requested space"""
        assert cli.main(["kl", "--n", "3", "--i", "1", "--emit-fixtures", str(tmp_path)]) == 0
        assert (tmp_path / "h_3_1.json").exists()
        assert (tmp_path / "partitions_3_1.json").exists()


class TestChecks:
    def test_char_check(self, capsys):
        """Test the small resolution report on (4, 2)"""
        assert cli.main(["char-check", "--n", "4", "--i", "2"]) == 0
        assert capsys.readouterr().out.startswith("PASS")

    def test_pieri_check_json(self, capsys):
        """Test the Pieri report as JSON"""
        assert cli.main(["pieri-check", "--n", "3", "--i", "1", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is True
        assert data["mismatches"] == []

    def test_demazure_check_csv(self, capsys):
        """Test the Demazure report as one CSV row"""
        assert cli.main(["demazure-check", "--n", "3", "--i", "1", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "name,checked,failures,passed"
        assert lines[1].endswith(",0,True")

    def test_selftest(self, capsys):
        """Test the selftest over n <= 3 with two workers"""
        assert cli.main(["selftest", "--max-n", "3", "--jobs", "2"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4
        assert lines[-1].startswith("PASS selftest")

    def test_selftest_spaces(self):
        """Test every (n, i) up to max_n"""
        assert cli.selftest_spaces(3) == [(2, 1), (3, 1), (3, 2)]

    def test_selftest_jobs_agree(self, capsys):
        """Test worker processes give the same report as a single process"""
        assert cli.main(["selftest", "--max-n", "3", "--jobs", "1", "--format", "json"]) == 0
        single = json.loads(capsys.readouterr().out)
        assert cli.main(["selftest", "--max-n", "3", "--jobs", "2", "--format", "json"]) == 0
        pooled = json.loads(capsys.readouterr().out)
        assert pooled == single


SUITES = [
    "verify_szj", "check_inverse", "check_order_suite", "check_overlying_suite",
    "check_two_row_lemma", "check_valley_lemma", "verify_small_resolution", "check_homology",
    "crucial_sweep", "check_demazure_suite", "verify_pieri_gkm", "check_commutativity",
    "positivity_sweep",
]


@pytest.fixture
def stub_suites():
    """Replace every suite used by selftest with an empty passing report"""
    stubs = {name: MagicMock(return_value=VerificationReport(name=name)) for name in SUITES}
    with patch.multiple("cli", table_service=MagicMock(), **stubs):
        yield stubs


class TestSelftestScope:
    def test_full_suites_up_to_five(self, stub_suites):
        """Test n = 5 runs the Demazure suite, which includes positivity"""
        cli.selftest_item(5, 2, 0, 50)
        stub_suites["check_demazure_suite"].assert_called_once_with(5, 2, seed=0)
        stub_suites["positivity_sweep"].assert_not_called()

    def test_positivity_at_six(self, stub_suites):
        """Test n = 6 still runs the positivity sweep"""
        cli.selftest_item(6, 3, 0, 50)
        stub_suites["positivity_sweep"].assert_called_once_with(6, 3)
        stub_suites["check_demazure_suite"].assert_not_called()

    def test_no_positivity_above_six(self, stub_suites):
        """Test n = 7 skips the Demazure sweeps"""
        cli.selftest_item(7, 3, 0, 50)
        stub_suites["positivity_sweep"].assert_not_called()
        stub_suites["check_overlying_suite"].assert_called_once_with(7, 3)

    @patch("cli.check_equal_size_example")
    @patch("cli.selftest_item")
    def test_equal_size_example_from_seven(self, mock_item, mock_example, capsys):
        """Test the (7, 3) example is reported once max_n reaches 7"""
        mock_item.return_value = VerificationReport(name="selftest")
        mock_example.return_value = VerificationReport(name="equal-size")
        assert cli.main(["selftest", "--max-n", "7"]) == 0
        mock_example.assert_called_once_with()
        assert "PASS equal-size" in capsys.readouterr().out

    @patch("cli.check_equal_size_example")
    @patch("cli.selftest_item")
    def test_no_equal_size_example_below_seven(self, mock_item, mock_example, capsys):
        """Test smaller runs leave the example out"""
        mock_item.return_value = VerificationReport(name="selftest")
        assert cli.main(["selftest", "--max-n", "6"]) == 0
        mock_example.assert_not_called()

    @patch("cli.check_equal_size_example")
    @patch("cli.selftest_item")
    def test_missing_example_fails_selftest(self, mock_item, mock_example, capsys):
        """Test exit 1 when the example region has no comparable pair"""
        mock_item.return_value = VerificationReport(name="selftest")
        failed = VerificationReport(name="equal-size")
        failed.record(False, "no equal-size pair")
        mock_example.return_value = failed
        assert cli.main(["selftest", "--max-n", "7"]) == 1


class TestErrors:
    def test_missing_space(self, capsys):
        """Test exit 2 when --n and --i are missing"""
        assert cli.main(["kl"]) == 2
        assert "Failed to parse arguments" in capsys.readouterr().err

    def test_missing_lam(self, capsys):
        """Test exit 2 when homdim has no --lam"""
        assert cli.main(["homdim", "--n", "4", "--i", "2", "--mu", "UDUD"]) == 2
        assert "requires --lam" in capsys.readouterr().err

    def test_path_of_wrong_shape(self, capsys):
        """Test exit 2 for a path with the wrong number of Down steps"""
        assert cli.main(["rouquier", "--n", "4", "--i", "2", "--mu", "UUUD"]) == 2
        assert "is not a path" in capsys.readouterr().err

    def test_bad_format(self):
        """Test exit 2 for an unknown output format"""
        assert cli.main(["kl", "--n", "4", "--i", "2", "--format", "xml"]) == 2

    def test_unknown_subcommand(self):
        """Test argparse rejects an unknown command with status 2"""
        with pytest.raises(SystemExit) as exc:
            cli.main(["bogus"])
        assert exc.value.code == 2

    def test_library_error(self, capsys):
        """Test exit 1 when lam is not below mu"""
        status = cli.main(["render", "--n", "4", "--i", "2", "--lam", "UDUD", "--mu", "DDUU"])
        assert status == 1
        assert "Failed to render region" in capsys.readouterr().err
