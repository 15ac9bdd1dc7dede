import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from querylab.cli import main
from querylab.service import create_app

DEMO_SQL = (
    "SELECT Patient.name FROM Doctor JOIN Patient ON Doctor.id = Patient.doctorId "
    "WHERE Doctor.departmentId = 1"
)
CONJUNCTIVE_SQL = (
    "SELECT Patient.name FROM Doctor JOIN Patient ON Doctor.id = Patient.doctorId "
    "WHERE Doctor.departmentId = 1 AND Patient.name <> 'Eve'"
)


@pytest.fixture
def runner():
    return CliRunner()


class TestShow:
    def test_leaf_query(self, runner):
        result = runner.invoke(main, ["show", "SELECT * FROM Doctor"])
        assert result.exit_code == 0
        assert result.output == "Doctor\n"

    def test_optimized_tree_puts_selection_below_join(self, runner):
        result = runner.invoke(main, ["show", DEMO_SQL, "--optimize", "--format", "tree"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        join_line = next(i for i, line in enumerate(lines) if "⋈" in line)
        sigma_line = next(i for i, line in enumerate(lines) if "σ" in line)
        assert sigma_line > join_line
        assert lines[sigma_line].startswith("  " * 2)

    def test_parse_error_exits_two_with_position(self, runner):
        result = runner.invoke(main, ["show", "SELECT FROM"])
        assert result.exit_code == 2
        assert "line 1, column 8" in result.stderr
        assert result.stdout == ""

    def test_latex_format(self, runner):
        result = runner.invoke(main, ["show", "SELECT name FROM Doctor", "--format", "latex"])
        assert result.output == "\\pi_{Doctor.name}(Doctor)\n"

    def test_color_opt_in_only(self, runner):
        plain = runner.invoke(main, ["show", DEMO_SQL])
        colored = runner.invoke(main, ["show", DEMO_SQL, "--color"])
        assert "\x1b[" not in plain.output
        assert "\x1b[" in colored.output

    def test_golden_unicode(self, runner, golden):
        result = runner.invoke(main, ["show", DEMO_SQL])
        golden("cli_show_unicode.txt", result.output)

    def test_golden_optimized_tree(self, runner, golden):
        result = runner.invoke(main, ["show", DEMO_SQL, "--optimize", "--format", "tree"])
        golden("cli_show_tree_optimized.txt", result.output)

    def test_golden_latex(self, runner, golden):
        result = runner.invoke(main, ["show", DEMO_SQL, "--format", "latex"])
        golden("cli_show_latex.txt", result.output)


class TestEval:
    def test_cross_product_row_count(self, runner):
        result = runner.invoke(main, ["eval", "SELECT * FROM Doctor, Patient"])
        assert result.exit_code == 0
        assert "(12 rows)" in result.output

    def test_node_addresses_selection(self, runner):
        result = runner.invoke(main, ["eval", DEMO_SQL, "--node", "0"])
        assert result.exit_code == 0
        assert "(3 rows)" in result.output
        assert "Doctor.id" in result.output

    def test_invalid_path_exits_three(self, runner):
        result = runner.invoke(main, ["eval", DEMO_SQL, "--node", "9.9"])
        assert result.exit_code == 3

    def test_malformed_path_exits_three(self, runner):
        result = runner.invoke(main, ["eval", DEMO_SQL, "--node", "a.b"])
        assert result.exit_code == 3

    def test_bind_error_exits_two(self, runner):
        result = runner.invoke(main, ["eval", "SELECT nope FROM Doctor"])
        assert result.exit_code == 2

    def test_golden_root(self, runner, golden):
        result = runner.invoke(main, ["eval", DEMO_SQL])
        golden("cli_eval_root.txt", result.output)

    def test_golden_join_node(self, runner, golden):
        result = runner.invoke(main, ["eval", DEMO_SQL, "--node", "0.0"])
        golden("cli_eval_join_node.txt", result.output)

    def test_root_matches_service_rows(self, runner):
        client = TestClient(create_app())
        doc = client.post("/api/query", json={"sql": DEMO_SQL, "optimize": False}).json()
        root = next(n for n in doc["nodes"] if n["path"] == [])
        result = runner.invoke(main, ["eval", DEMO_SQL])
        body = result.output.splitlines()[2:-1]  # skip header, separator, footer
        cli_rows = [tuple(line.split()) for line in body]
        service_rows = [tuple(str(v) for v in row) for row in root["rows"]]
        assert cli_rows == service_rows


class TestDiff:
    def test_pushdown_query_lists_rewrites(self, runner):
        result = runner.invoke(main, ["diff", DEMO_SQL])
        assert result.exit_code == 0
        assert "PushPastJoinLeft" in result.output

    def test_no_rewrites_for_single_relation(self, runner):
        result = runner.invoke(main, ["diff", "SELECT * FROM Doctor"])
        assert result.exit_code == 0
        assert "(none)" in result.output
        unopt = result.output.split("-- optimized --")[0]
        opt = result.output.split("-- optimized --")[1].split("-- rewrites --")[0]
        assert unopt.replace("-- unoptimized --", "").strip() == opt.strip()

    def test_conjunction_splits_first(self, runner):
        result = runner.invoke(main, ["diff", CONJUNCTIVE_SQL])
        rewrites = result.output.split("-- rewrites --")[1].strip().splitlines()
        assert rewrites[0].startswith("SplitConjunction")

    def test_error_exits_two(self, runner):
        result = runner.invoke(main, ["diff", "SELECT"])
        assert result.exit_code == 2

    def test_golden(self, runner, golden):
        result = runner.invoke(main, ["diff", CONJUNCTIVE_SQL])
        golden("cli_diff_conjunctive.txt", result.output)


def test_output_is_byte_stable(runner):
    first = runner.invoke(main, ["diff", CONJUNCTIVE_SQL])
    second = runner.invoke(main, ["diff", CONJUNCTIVE_SQL])
    assert first.output == second.output
