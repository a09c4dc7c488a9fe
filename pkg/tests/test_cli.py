import io
import json

import pytest

from frobenius_descent import serialize
from frobenius_descent.cli import main
from frobenius_descent.descent import EquivariantModule, FinAlgebra
from frobenius_descent.field import Field
from frobenius_descent.linalg import MatrixF
from frobenius_descent.poly import PolynomialF
from frobenius_descent.semilinear import SemilinearEndo


def run(monkeypatch, capsys, argv, doc=None):
    text = doc if isinstance(doc, str) else (serialize.dumps(doc) if doc is not None else "")
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code = main(argv)
    out = capsys.readouterr().out
    return code, (serialize.loads(out) if out.strip() else None)


def test_field_construct_and_extend(monkeypatch, capsys):
    code, F = run(monkeypatch, capsys, ["field", "construct", "--q", "4", "--m", "2"])
    assert code == 0 and F is Field.of(4, 2)
    code, K = run(monkeypatch, capsys, ["field", "extend", "--e", "3"], F)
    assert code == 0 and (K.q, K.m) == (4, 6)


def test_field_embed(monkeypatch, capsys):
    F4, F16 = Field.of(2, 2), Field.of(2, 4)
    code, emb = run(monkeypatch, capsys, ["field", "embed"], [F4, F16])
    assert code == 0 and emb.source is F4 and emb.target is F16
    code, x = run(monkeypatch, capsys, ["field", "embed", "--e", "2"], F4.gen)
    assert code == 0 and x == emb(F4.gen)


def test_lang_solve_minus_one(monkeypatch, capsys):
    F3 = Field.of(3, 1)
    code, out = run(monkeypatch, capsys, ["lang", "solve"], MatrixF(F3, [[2]]))
    assert code == 0 and out["e"] == 2
    K = Field.of(3, 2)
    assert out["G"] == MatrixF(K, [[K.gen]])


def test_moore_commands(monkeypatch, capsys):
    F = Field.of(2, 2)
    g = F.gen
    code, out = run(monkeypatch, capsys, ["moore", "independent"], [F.one, g, g + 1])
    assert code == 0 and out == {"independent": False}
    code, M = run(monkeypatch, capsys, ["moore", "matrix"], [F.one, g])
    assert M == MatrixF(F, [[1, g], [1, g + 1]])
    code, out = run(monkeypatch, capsys, ["moore", "det-identity", "--q", "3", "--r", "1"])
    assert out["mode"] == "symbolic" and out["omega"].value == 2
    code, out = run(monkeypatch, capsys, ["moore", "det-identity", "--q", "5", "--r", "1"])
    assert out["mode"] == "sampled"


def test_fixed_commands(monkeypatch, capsys):
    F = Field.of(2, 2)
    sigma = SemilinearEndo(F, MatrixF(F, [[F.gen]]))
    code, out = run(monkeypatch, capsys, ["fixed", "fixed_space"], sigma)
    assert out["dim"] == 1 and out["basis"] == [[F.gen + 1]]
    code, out = run(monkeypatch, capsys, ["fixed", "splitting-degree"], sigma)
    assert out == {"e": 1}
    code, out = run(monkeypatch, capsys, ["fixed", "descend"], sigma)
    assert out["dim"] == 1 and out["e"] == 1


def test_module_commands(monkeypatch, capsys):
    F2, F4 = Field.of(2, 1), Field.of(2, 2)
    M = EquivariantModule.canonical(FinAlgebra.dual_numbers(F2), F4)
    code, out = run(monkeypatch, capsys, ["module", "check"], M)
    assert code == 0 and out["ok"]
    code, out = run(monkeypatch, capsys, ["module", "descend"], M)
    assert code == 0 and out["dim"] == 2
    code, out = run(monkeypatch, capsys, ["module", "hom", "--mode", "equivariant"], [M, M])
    assert out["dim"] == out["descended_dim"] == 2
    bad = EquivariantModule(M.algebra, F4, M.action, SemilinearEndo(F4, MatrixF(F4, [[1, F4.gen], [0, 1]])))
    code, out = run(monkeypatch, capsys, ["module", "descend"], bad)
    assert code == 1 and out["error"] == "NotEquivariant"


def test_ideal_commands(monkeypatch, capsys):
    F4 = Field.of(2, 2)
    x, y = PolynomialF.variables(F4, 2)
    g = F4.gen
    code, out = run(monkeypatch, capsys, ["ideal", "descend-element"], x * g + y * (g + 1))
    assert code == 0 and len(out) == 2
    code, J = run(monkeypatch, capsys, ["ideal", "descend-graded", "--trunc", "2"],
                  [x + y * g, x + y * (g + 1)])
    assert code == 0 and J.dim(1) == 2 and J.D == 2
    code, out = run(monkeypatch, capsys, ["ideal", "descend-graded"], [x + y * g])
    assert code == 1 and out["error"] == "NotStable"
    assert out["payload"]["degree"] == 1 and out["payload"]["witness"] == x + y * (g + 1)


def test_picard_and_reports(monkeypatch, capsys):
    code, out = run(monkeypatch, capsys, ["picard", "cokernel", "--q", "3", "--m", "2"])
    assert out["torsion_order"] == 2 and out["free_rank"] == 1
    code, out = run(monkeypatch, capsys, ["picard", "mu-demo", "--q", "5"])
    assert not out["surjective"]
    code, out = run(monkeypatch, capsys, ["lang", "report", "--q", "4", "--ring", "dual_numbers"])
    assert out["all_hit"] and out["targets"] == 12
    code, out = run(monkeypatch, capsys, ["lang", "report", "--q", "3", "--ring", "mu_power"])
    assert code == 0 and not out["surjective"]
    F4 = Field.of(2, 2)
    from frobenius_descent.cocycle import LaurentUnit
    code, out = run(monkeypatch, capsys, ["picard", "class"], LaurentUnit(F4.gen, 3))
    assert out["class"].t == 3 and out["coboundary"].t == 0


def test_singular_lang_target_is_domain_error(monkeypatch, capsys):
    F3 = Field.of(3, 1)
    code, out = run(monkeypatch, capsys, ["lang", "solve"], MatrixF(F3, [[1, 1], [1, 1]]))
    assert code == 1 and out["error"] == "NotInvertible" and out["payload"]["rank"] == 1


@pytest.mark.parametrize("argv,doc", [
    (["lang", "solve"], "not json"),
    (["lang", "solve"], '{"type": "field", "p": 2, "q_exponent": 1, "m": 1}'),
    (["fixed", "descend"], '{"type": "unknown"}'),
    (["field", "construct"], None),
    (["field", "construct", "--q", "6"], None),
    (["nonsense"], None),
])
def test_malformed_input_exit_code(monkeypatch, capsys, argv, doc):
    code, _ = run(monkeypatch, capsys, argv, doc)
    assert code == 2


def test_degree_cap_flag_and_env(monkeypatch, capsys):
    code, out = run(monkeypatch, capsys, ["field", "construct", "--q", "2", "--m", "30"])
    assert code == 1 and out["error"] == "CapacityExceeded"
    monkeypatch.setenv("FROBDESC_DEGREE_CAP", "40")
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    assert main(["field", "construct", "--q", "2", "--m", "30"]) == 0
    assert json.loads(capsys.readouterr().out)["m"] == 30
    code, out = run(monkeypatch, capsys, ["field", "construct", "--q", "2", "--m", "30",
                                          "--degree-cap", "10"])
    assert code == 1
