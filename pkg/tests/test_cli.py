import json

from ringops.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestPolyCommands:
    def test_enumerate_count(self, capsys):
        code, out = run(capsys, "poly", "enumerate", "--arity", "2")
        assert code == 0
        assert len(out.strip().splitlines()) == 8

    def test_enumerate_deterministic(self, capsys):
        _, first = run(capsys, "poly", "enumerate", "--arity", "2")
        _, second = run(capsys, "poly", "enumerate", "--arity", "2")
        assert first == second

    def test_member_failure_exit_code(self, capsys):
        code, out = run(capsys, "poly", "member", "R(1): x1 + x1")
        assert code == 1

    def test_member_ok(self, capsys):
        code, out = run(capsys, "poly", "member", "R(2): x1*x2")
        assert code == 0

    def test_compose(self, capsys):
        code, out = run(
            capsys,
            "poly", "compose",
            "R(2): x1 + x1*x2", "R(2): x1 + x1*x2", "R(2): x1*x2",
        )
        assert code == 0
        assert out.strip() == "R(4): x1 + x1*x3*x4 + x1*x2 + x1*x2*x3*x4"

    def test_type_and_special(self, capsys):
        code, out = run(capsys, "poly", "type", "R(5): x5 + x1*x4 + x1*x2*x3")
        assert code == 0 and out.strip() == "(3; 1,2,3)"
        code, out = run(capsys, "poly", "special", "(2; 1,2)")
        assert code == 0 and out.strip() == "R(3): x2*x3 + x1"

    def test_json_output(self, capsys):
        code, out = run(capsys, "--json", "poly", "enumerate", "--arity", "1")
        payload = json.loads(out)
        assert code == 0 and payload["count"] == 2


class TestCatCommands:
    def test_hom(self, capsys):
        code, out = run(capsys, "cat", "hom", "R(1): x1", "R(1): x1")
        assert code == 0
        assert len(out.strip().splitlines()) == 1

    def test_decompose(self, capsys):
        code, out = run(
            capsys,
            "cat", "decompose",
            "--map", "{1->e, 2->1, 3->2, 4->1, 5->0}",
            "--source", "5", "--target", "2",
        )
        assert code == 0
        assert "singular: {1->e, 2->1, 3->2, 4->3, 5->0}" in out
        assert "effective: {1->1, 2->2, 3->1}" in out

    def test_components(self, capsys):
        code, out = run(capsys, "cat", "components", "--arity", "2")
        assert code == 0
        assert len(out.strip().splitlines()) == 6

    def test_filtration(self, capsys):
        code, out = run(
            capsys, "cat", "filtration", "--special", "R(3): x1 + x2*x3",
            "--level", "2",
        )
        assert code == 0
        assert "R(2): x1 + x1*x2" in out


class TestCheckCommands:
    def test_axioms_strict(self, capsys):
        code, out = run(capsys, "check", "axioms", "--builtin", "strict", "--cap", "2")
        assert code == 0 and "pass" in out

    def test_einfty_strict_fails(self, capsys):
        code, out = run(capsys, "check", "einfty", "--builtin", "strict", "--cap", "2")
        assert code == 1
        assert "condition (4): fail" in out

    def test_algebra(self, capsys):
        code, out = run(capsys, "check", "algebra", "--carrier", "boolean", "--cap", "1")
        assert code == 0


class TestTermCommands:
    def test_normalize(self, capsys):
        code, out = run(
            capsys, "term", "normalize", "(x1 + x2) * x3", "--arity", "3",
            "--mode", "biperm",
        )
        assert code == 0
        assert out.strip() == "((x1 * x3) + (x2 * x3))"

    def test_project(self, capsys):
        code, out = run(capsys, "term", "project", "(1 + x1) * x2", "--arity", "2")
        assert code == 0
        assert out.strip() == "R(2): x2 + x1*x2"

    def test_project_not_in_R(self, capsys):
        code, out = run(capsys, "term", "project", "x1 + x1", "--arity", "1")
        assert code == 0
        assert "not-in-R" in out

    def test_fiber(self, capsys):
        code, out = run(capsys, "term", "fiber", "--poly", "R(1): x1")
        assert code == 0
        assert "stable: True" in out
        assert "x1" in out

    def test_connect(self, capsys):
        code, out = run(capsys, "term", "connect", "--poly", "R(2): x2 + x1")
        assert code == 0
        assert "connected: True" in out
        assert "terminal: (x1 + x2)" in out


class TestRcgCommands:
    def test_component(self, capsys):
        code, out = run(
            capsys, "rcg", "component",
            "--poly", "R(5): x5 + x1*x4 + x1*x2*x3",
            "--pair", "terminal:sigma",
        )
        assert code == 0
        assert "signature: C(3) x G(1) x G(2) x G(3)" in out
        assert "size: 12" in out

    def test_compose_plan(self, capsys):
        code, out = run(
            capsys, "rcg", "compose",
            "--poly", "R(2): x1 + x1*x2",
            "--args", "R(2): x1 + x1*x2;R(2): x1*x2",
        )
        assert code == 0
        assert "composite: R(4): x1 + x1*x3*x4 + x1*x2 + x1*x2*x3*x4" in out
        assert "multiplicative: G(2) x G(2) x G(2) -> G(4)" in out
        assert "additive: C(2) x C(2) x C(2) -> C(4)" in out


class TestFwrfCommands:
    def test_assign(self, capsys):
        code, out = run(
            capsys, "fwrf", "assign",
            "--morphism",
            "(2:[2,1]) -> (1:[1]); phi={1->1,2->1}; d1={(1,1)->1,(2,1)->1}",
        )
        assert code == 0
        assert "(1,1): R(3): x2*x3 + x1*x3" in out

    def test_verify_demo(self, capsys):
        code, out = run(capsys, "fwrf", "verify", "--builtin", "demo")
        assert code == 0
        assert "R(4): x2*x4 + x1*x4 + x1*x3" in out
        assert "13->e" in out

    def test_nu(self, capsys):
        code, out = run(
            capsys, "fwrf", "nu",
            "--morphism",
            "(2:[2,1]) -> (1:[1]); phi={1->1,2->1}; d1={(1,1)->1,(2,1)->1}",
            "--inputs", "1,0,1",
        )
        assert code == 0
        assert out.strip() == "1"

    def test_usage_error(self, capsys):
        code = main(["fwrf", "verify"])
        assert code == 2
